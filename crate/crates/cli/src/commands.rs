//! The computing subcommands. Each returns JSON and text renderings plus an overall verdict.

use carlitz_lab::carlitz::bracket_formulas;
use carlitz_lab::hyperderiv::hyperderivative;
use carlitz_lab::logalg::{special_poly_thakur, verify_log_algebraicity};
use carlitz_lab::poly::carlitz_l;
use carlitz_lab::powersums::{digit_positions, h_brute, h_closed, s_brute, s_closed, s_closed_exponent, sigma_q, sivanish_predicate};
use carlitz_lab::vandermonde::hyperderiv_via_vandermonde;
use carlitz_lab::{Coeff, Error, PolyA, RatFun, Result};
use serde_json::{json, Value};

use crate::config::CliConfig;

pub struct Output {
    pub json: Value,
    pub text: String,
    /// False when two computations that must agree did not.
    pub ok: bool,
}

pub fn bracket(cfg: &CliConfig, a: &PolyA, k: Option<usize>) -> Result<Output> {
    let formulas: Vec<_> = bracket_formulas().into_iter().filter(|f| f.applies(a)).collect();
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (0..=a.degree().unwrap_or(0)).collect(),
    };
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut all_agree = true;
    for k in ks {
        let mut values = serde_json::Map::new();
        let mut reference: Option<PolyA> = None;
        let mut agree = true;
        for f in &formulas {
            let v = f.bracket(a, k)?;
            values.insert(f.name().to_string(), v.to_json());
            match &reference {
                None => reference = Some(v),
                Some(r) => agree &= *r == v,
            }
        }
        let value = reference.expect("the direct formula always applies");
        all_agree &= agree;
        lines.push(format!("⟨{a}⟩_{k} = {value}"));
        rows.push(json!({"k": k, "value": value.to_json(), "text": value.to_string(), "formulas": values, "agree": agree}));
    }
    let names: Vec<&str> = formulas.iter().map(|f| f.name()).collect();
    lines.push(format!("formulas: {}", names.join(", ")));
    lines.push(format!("agreement={all_agree}"));
    Ok(Output {
        json: json!({"field": cfg.lab.field.to_json(), "a": a.to_json(), "brackets": rows, "agreement": all_agree}),
        text: lines.join("\n"),
        ok: all_agree,
    })
}

/// What to compare a brute-force sum against, if anything.
struct Closed {
    name: &'static str,
    value: RatFun,
}

fn closed_power_sum(cfg: &CliConfig, i: u32, k: i64) -> Result<Option<Closed>> {
    let field = &cfg.lab.field;
    let q = field.q();
    if k == -1 {
        let value = RatFun::new(PolyA::one(field), carlitz_l(field, i))?;
        return Ok(Some(Closed { name: "reciprocal-l", value }));
    }
    if k < 0 {
        return Ok(None);
    }
    let k = k as u64;
    if sivanish_predicate(q, i, k) {
        return Ok(Some(Closed { name: "vanishing", value: RatFun::zero(field) }));
    }
    let digits = sigma_q(q, k + 1);
    if (1..q).contains(&digits) {
        let ls = digit_positions(q, k + 1);
        return Ok(Some(Closed { name: "digit-expansion", value: s_closed(field, i, &ls)? }));
    }
    Ok(None)
}

fn comparison(brute: &RatFun, closed: Option<Closed>) -> (Value, String, bool) {
    match closed {
        Some(c) => {
            let agree = c.value == *brute;
            (
                json!({"closed_form": c.name, "closed": c.value.to_json(), "closed_text": c.value.to_string(), "agreement": agree}),
                format!("closed ({}) = {}\nagreement={agree}", c.name, c.value),
                agree,
            )
        }
        None => (json!({"closed_form": null, "agreement": null}), "no closed form applies".into(), true),
    }
}

pub fn power_sum(cfg: &CliConfig, i: u32, k: Option<i64>, exponents: Option<&[u32]>) -> Result<Output> {
    let field = &cfg.lab.field;
    let (k, closed) = match (k, exponents) {
        (Some(k), None) => (k, closed_power_sum(cfg, i, k)?),
        (None, Some(ls)) => {
            let k = s_closed_exponent(field.q(), ls)
                .and_then(|k| i64::try_from(k).ok())
                .ok_or_else(|| Error::Usage("exponent list gives an exponent that does not fit in 64 bits".into()))?;
            (k, Some(Closed { name: "digit-expansion", value: s_closed(field, i, ls)? }))
        }
        _ => return Err(Error::Usage("give exactly one of --k and --exponents".into())),
    };
    let brute = s_brute(&cfg.lab, i, k)?;
    let (cmp, cmp_text, ok) = comparison(&brute, closed);
    let mut out = json!({"field": field.to_json(), "i": i, "k": k, "brute": brute.to_json(), "brute_text": brute.to_string()});
    merge(&mut out, cmp);
    Ok(Output { json: out, text: format!("S_{i}({k}) = {brute}\n{cmp_text}"), ok })
}

pub fn parse_pairs(s: &str) -> Result<Vec<(u64, u32)>> {
    s.split(',')
        .map(|pair| {
            let bad = || Error::Usage(format!("pair {pair:?} is not of the form j:μ"));
            let (j, mu) = pair.trim().split_once(':').ok_or_else(bad)?;
            Ok((j.trim().parse().map_err(|_| bad())?, mu.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

pub fn hyper_sum(cfg: &CliConfig, i: u32, pairs: &[(u64, u32)]) -> Result<Output> {
    let field = &cfg.lab.field;
    let brute = h_brute(&cfg.lab, i, pairs, true)?;
    let closed = h_closed(field, i, pairs).ok().map(|value| Closed { name: "hyper-product", value });
    let (cmp, cmp_text, ok) = comparison(&brute, closed);
    let pairs_json: Vec<Value> = pairs.iter().map(|&(j, mu)| json!({"j": j, "mu": mu})).collect();
    let mut out = json!({"field": field.to_json(), "i": i, "pairs": pairs_json, "brute": brute.to_json(), "brute_text": brute.to_string()});
    merge(&mut out, cmp);
    Ok(Output { json: out, text: format!("sum = {brute}\n{cmp_text}"), ok })
}

pub fn special_poly(cfg: &CliConfig, m: u64, full: bool) -> Result<Output> {
    let mut report = verify_log_algebraicity(&cfg.lab, m, cfg.trunc)?;
    if full {
        report.poly = special_poly_thakur(&cfg.lab.field, m, None)?;
    }
    let mut json = report.to_json();
    json["full"] = json!(full);
    let depth = report.max_i.map_or("none".to_string(), |d| d.to_string());
    let text = format!(
        "{}\nmatch={} integral={} N={} max_i={depth}",
        report.poly, report.matches, report.integral, report.n
    );
    Ok(Output { json, text, ok: report.matches && report.integral })
}

pub fn hyper(cfg: &CliConfig, a: &PolyA, j: u64, k: Option<u32>) -> Result<Output> {
    let value = hyperderivative(a, j);
    let mut out = json!({"field": cfg.lab.field.to_json(), "a": a.to_json(), "j": j, "value": value.to_json(), "text": value.to_string()});
    let mut lines = vec![format!("∂^{j}({a}) = {value}")];
    let mut ok = true;
    if let Some(k) = k {
        let twisted = value.frobenius_twist(k);
        let jj = usize::try_from(j).map_err(|_| Error::Usage(format!("j = {j} is too large")))?;
        let i = a.degree().unwrap_or(0).max(jj);
        let via = hyperderiv_via_vandermonde(a, i, jj, k)?;
        let agree = via.value == twisted && via.t_independent;
        ok = agree;
        out["k"] = json!(k);
        out["twisted"] = twisted.to_json();
        out["vandermonde"] = json!({"size": i + 1, "value": via.value.to_json(), "t_independent": via.t_independent});
        out["agreement"] = json!(agree);
        lines.push(format!("(∂^{j} a)^(q^{k}) = {twisted}"));
        lines.push(format!("vandermonde size {} gives {}; t_independent={}", i + 1, via.value, via.t_independent));
        lines.push(format!("agreement={agree}"));
    }
    Ok(Output { json: out, text: lines.join("\n"), ok })
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{default_trunc, Format};
    use crate::literal::parse_poly;
    use carlitz_lab::{Field, Lab};

    fn cfg(q: u64) -> CliConfig {
        let field = Field::from_q(q).unwrap();
        CliConfig { lab: Lab::new(field, 1_000_000), format: Format::Json, seed: 0, trunc: default_trunc(q) }
    }

    #[test]
    fn bracket_examples() {
        let c = cfg(3);
        let f = &c.lab.field;
        let out = bracket(&c, &parse_poly(f, "t^2").unwrap(), Some(1)).unwrap();
        assert!(out.ok);
        assert_eq!(out.json["brackets"][0]["text"], "θ^3 + θ");
        let out = bracket(&c, &parse_poly(f, "1").unwrap(), None).unwrap();
        assert_eq!(out.json["brackets"][0]["text"], "1");
        let out = bracket(&c, &parse_poly(f, "t").unwrap(), Some(5)).unwrap();
        assert_eq!(out.json["brackets"][0]["text"], "0");
        assert!(out.ok);
    }

    #[test]
    fn power_sum_examples() {
        let c = cfg(3);
        let f = &c.lab.field;
        let out = power_sum(&c, 1, Some(-1), None).unwrap();
        let want = RatFun::new(PolyA::one(f), carlitz_l(f, 1)).unwrap();
        assert_eq!(out.json["brute"], want.to_json());
        assert_eq!(out.json["agreement"], true);
        let c2 = cfg(2);
        let out = power_sum(&c2, 2, Some(2), None).unwrap();
        assert_eq!(out.json["brute_text"], "0");
        assert_eq!(out.json["closed_form"], "vanishing");
        let out = power_sum(&c, 1, None, Some(&[1, 2])).unwrap();
        assert_eq!(out.json["k"], 11);
        assert!(out.ok);
        assert!(power_sum(&c, 1, None, None).is_err());
    }

    #[test]
    fn hyper_sum_example() {
        let c = cfg(3);
        let f = &c.lab.field;
        let out = hyper_sum(&c, 1, &parse_pairs("1:0").unwrap()).unwrap();
        let want = RatFun::new(PolyA::from_ints(f, &[-1]), PolyA::from_ints(f, &[0, -1, 0, 1])).unwrap();
        assert_eq!(out.json["brute"], want.to_json());
        assert_eq!(out.json["agreement"], true);
        assert!(parse_pairs("1-0").is_err());
        assert_eq!(parse_pairs("0:1, 2:3").unwrap(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn special_poly_example() {
        let c = cfg(3);
        let out = special_poly(&c, 1, false).unwrap();
        assert!(out.text.starts_with("x*z\n"));
        assert_eq!(out.json["match"], true);
        assert!(special_poly(&c, 5, false).is_err());
    }

    #[test]
    fn hyper_example() {
        let c = cfg(3);
        let f = &c.lab.field;
        let a = parse_poly(f, "t^3 + 2t").unwrap();
        let out = hyper(&c, &a, 1, Some(1)).unwrap();
        assert!(out.ok);
        assert_eq!(out.json["text"], "2");
    }
}

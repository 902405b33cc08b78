//! Verification suites run by `verify`. Each suite exercises one module at the configured field.
//!
//! Randomness comes from ChaCha8 seeded by `--seed`, one stream per suite, so a suite draws the
//! same inputs whether it runs alone or inside `all`.

use std::fmt::Debug;
use std::time::Instant;

use carlitz_lab::carlitz::{
    bracket_carlitz_formula, bracket_direct, bracket_formulas, bracket_hyper_formula, bracket_theta_power, carlitz_eval_series,
    carlitz_of, exp_c, log_c, mu_expand_checked,
};
use carlitz_lab::hyperderiv::{hyperderivative, lucas_binomial, taylor_check, voloch_qpower_check, HyperOp};
use carlitz_lab::logalg::{lambda_brute, lambda_closed_multi, lambda_closed_single, special_poly_thakur, verify_log_algebraicity};
use carlitz_lab::multipoly::symbolic_vars;
use carlitz_lab::powersums::{
    angles_pellarin_both_sides, h_brute, h_closed, s_brute, s_closed, s_closed_exponent, sigma_q, sivanish_predicate, specialize_t,
};
use carlitz_lab::symfun::{
    ehdiff_complete, ehdiff_complete_direct, ehdiff_elementary, ehdiff_elementary_direct, esym, g_poly, hsym, matrix_e, matrix_h,
    symmrec2_sum,
};
use carlitz_lab::vandermonde::{hyperderiv_via_vandermonde, kappa, kappa_matrix, vandermonde_matrix};
use carlitz_lab::{Coeff, Error, Field, FqElem, Monomial, MultiPoly, PolyA, RatFun, Result, TruncSeries, Var};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::CliConfig;

/// Ok carries a short summary, Err the first counterexample.
type Outcome = std::result::Result<String, String>;

pub struct CheckResult {
    pub module: &'static str,
    pub operation: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

impl CheckResult {
    fn to_json(&self) -> Value {
        json!({
            "module": self.module,
            "operation": self.operation,
            "check": self.check,
            "passed": self.passed,
            "detail": self.detail,
            "millis": self.millis as u64,
        })
    }
}

pub struct SuiteCtx<'a> {
    pub cfg: &'a CliConfig,
    pub rng: ChaCha8Rng,
    module: &'static str,
    results: Vec<CheckResult>,
}

impl SuiteCtx<'_> {
    fn field(&self) -> Field {
        self.cfg.lab.field.clone()
    }

    fn check(&mut self, operation: &str, check: &str, f: impl FnOnce(&mut ChaCha8Rng) -> Result<Outcome>) {
        let start = Instant::now();
        let outcome = f(&mut self.rng).unwrap_or_else(|e| Err(e.to_string()));
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.results.push(CheckResult {
            module: self.module,
            operation: operation.into(),
            check: check.into(),
            passed,
            detail,
            millis: start.elapsed().as_millis(),
        });
    }
}

/// Runs `pred` on every case and stops at the first one that fails or errors.
fn all_cases<T: Debug>(cases: impl IntoIterator<Item = T>, mut pred: impl FnMut(&T) -> Result<bool>) -> Result<Outcome> {
    let mut n = 0usize;
    for c in cases {
        match pred(&c) {
            Ok(true) => n += 1,
            Ok(false) => return Ok(Err(format!("counterexample {c:?}"))),
            Err(e) => return Ok(Err(format!("{c:?}: {e}"))),
        }
    }
    Ok(Ok(format!("{n} cases")))
}

fn rand_poly(f: &Field, max_deg: usize, rng: &mut ChaCha8Rng) -> PolyA {
    let d = rng.gen_range(0..=max_deg);
    PolyA::from_raw(f, (0..=d).map(|_| rng.gen_range(0..f.q())).collect())
}

fn rand_nonzero(f: &Field, max_deg: usize, rng: &mut ChaCha8Rng) -> PolyA {
    loop {
        let p = rand_poly(f, max_deg, rng);
        if !p.is_zero() {
            return p;
        }
    }
}

fn rand_elem(f: &Field, rng: &mut ChaCha8Rng) -> FqElem {
    FqElem::from_coords(f, &f.coords(rng.gen_range(0..f.q()))).expect("valid coordinates")
}

/// Largest d ≤ limit with q^d ≤ budget.
fn degree_within(q: u64, budget: u64, limit: u32) -> u32 {
    (0..=limit).take_while(|&d| q.checked_pow(d).is_some_and(|v| v <= budget)).last().unwrap_or(0)
}

/// Every polynomial of degree ≤ d, as coefficient vectors of length d + 1.
fn all_polys(f: &Field, d: u32) -> impl Iterator<Item = PolyA> + '_ {
    let q = f.q();
    (0..q.pow(d + 1)).map(move |idx| PolyA::from_raw(f, (0..=d).map(|b| idx / q.pow(b) % q).collect()))
}

pub trait Suite: Sync {
    fn name(&self) -> &'static str;
    fn module(&self) -> &'static str;
    fn run(&self, ctx: &mut SuiteCtx);
}

struct Algebra;
struct Hyper;
struct Symfun;
struct Vandermonde;
struct Carlitz;
struct PowerSums;
struct LogAlg;

pub fn suites() -> Vec<Box<dyn Suite>> {
    vec![
        Box::new(Algebra),
        Box::new(Hyper),
        Box::new(Symfun),
        Box::new(Vandermonde),
        Box::new(Carlitz),
        Box::new(PowerSums),
        Box::new(LogAlg),
    ]
}

pub fn suite_names() -> Vec<&'static str> {
    let mut names: Vec<&str> = suites().iter().map(|s| s.name()).collect();
    names.push("all");
    names
}

/// The suites selected by `name`, or a usage error naming the valid choices.
pub fn select(name: &str) -> Result<Vec<Box<dyn Suite>>> {
    if name == "all" {
        return Ok(suites());
    }
    let picked: Vec<_> = suites().into_iter().filter(|s| s.name() == name).collect();
    if picked.is_empty() {
        return Err(Error::Usage(format!("unknown suite {name:?}; expected one of {}", suite_names().join(", "))));
    }
    Ok(picked)
}

pub struct Report {
    pub suite: String,
    pub results: Vec<CheckResult>,
    pub millis: u128,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn to_json(&self, cfg: &CliConfig) -> Value {
        let failed = self.results.iter().filter(|r| !r.passed).count();
        json!({
            "suite": self.suite,
            "field": cfg.lab.field.to_json(),
            "seed": cfg.seed,
            "trunc": cfg.trunc,
            "checks": self.results.iter().map(CheckResult::to_json).collect::<Vec<_>>(),
            "passed": self.results.len() - failed,
            "failed": failed,
            "ok": failed == 0,
            "millis": self.millis as u64,
        })
    }

    pub fn to_text(&self) -> String {
        let mut lines: Vec<String> = self
            .results
            .iter()
            .map(|r| {
                let mark = if r.passed { "ok  " } else { "FAIL" };
                format!("{mark} {}::{} {}: {} ({} ms)", r.module, r.operation, r.check, r.detail, r.millis)
            })
            .collect();
        let failed = self.results.iter().filter(|r| !r.passed).count();
        lines.push(format!("{} checks, {failed} failed, {} ms", self.results.len(), self.millis));
        lines.join("\n")
    }
}

pub fn run(cfg: &CliConfig, name: &str) -> Result<Report> {
    let picked = select(name)?;
    let start = Instant::now();
    let mut results = Vec::new();
    let all = suites();
    for suite in picked {
        let stream = all.iter().position(|s| s.name() == suite.name()).expect("registered") as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        let mut ctx = SuiteCtx { cfg, rng, module: suite.module(), results: Vec::new() };
        suite.run(&mut ctx);
        results.extend(ctx.results);
    }
    Ok(Report { suite: name.to_string(), results, millis: start.elapsed().as_millis() })
}

impl Suite for Algebra {
    fn name(&self) -> &'static str {
        "algebra"
    }
    fn module(&self) -> &'static str {
        "algebra-core"
    }
    fn run(&self, ctx: &mut SuiteCtx) {
        let f = ctx.field();
        let q = f.q();
        ctx.check("FqElem", "inverse and Frobenius fixes every element", |rng| {
            let elems: Vec<FqElem> = if q <= 512 {
                f.elements().collect()
            } else {
                (0..256).map(|_| rand_elem(&f, rng)).collect()
            };
            all_cases(elems, |x| {
                let inv_ok = x.is_zero() || (x * &x.inverse()?).is_one();
                Ok(inv_ok && x.pow(q) == *x)
            })
        });
        ctx.check("FqElem", "freshman's dream in characteristic p", |rng| {
            let pairs: Vec<(FqElem, FqElem)> = (0..200).map(|_| (rand_elem(&f, rng), rand_elem(&f, rng))).collect();
            all_cases(pairs, |(x, y)| Ok((x + y).pow(f.p()) == &x.pow(f.p()) + &y.pow(f.p())))
        });
        ctx.check("PolyA", "ring axioms on random triples", |rng| {
            let cases: Vec<_> = (0..100).map(|_| (rand_poly(&f, 6, rng), rand_poly(&f, 6, rng), rand_poly(&f, 6, rng))).collect();
            all_cases(cases, |(a, b, c)| {
                Ok(&(a * b) * c == a * &(b * c) && a * &(b + c) == &(a * b) + &(a * c) && a * b == b * a && &(a - b) + b == *a)
            })
        });
        ctx.check("PolyA::divmod", "a = qb + r with deg r < deg b", |rng| {
            let cases: Vec<_> = (0..100).map(|_| (rand_poly(&f, 10, rng), rand_nonzero(&f, 5, rng))).collect();
            all_cases(cases, |(a, b)| {
                let (qq, r) = a.divmod(b)?;
                Ok(&(&qq * b) + &r == *a && (r.is_zero() || r.degree() < b.degree()))
            })
        });
        ctx.check("PolyA::gcd", "gcd is monic, divides both, and leaves coprime cofactors", |rng| {
            let cases: Vec<_> = (0..60)
                .map(|_| {
                    let c = rand_nonzero(&f, 3, rng);
                    (&rand_nonzero(&f, 4, rng) * &c, &rand_nonzero(&f, 4, rng) * &c)
                })
                .collect();
            all_cases(cases, |(a, b)| {
                let g = a.gcd(b);
                let (ca, cb) = (a.exact_div(&g)?, b.exact_div(&g)?);
                Ok(g.is_monic() && ca.gcd(&cb).is_one())
            })
        });
        ctx.check("PolyA::frobenius_twist", "twist by k equals the q^k-th power", |rng| {
            let kmax = degree_within(q, 1000, 2);
            let cases: Vec<_> = (0..40).map(|_| (rand_poly(&f, 4, rng), rng.gen_range(0..=kmax))).collect();
            all_cases(cases, |(a, k)| Ok(a.frobenius_twist(*k) == a.pow(q.pow(*k))))
        });
        ctx.check("RatFun::new", "canonical form is unique with monic denominator", |rng| {
            let cases: Vec<_> = (0..60)
                .map(|_| (rand_poly(&f, 4, rng), rand_nonzero(&f, 4, rng), rand_nonzero(&f, 3, rng)))
                .collect();
            all_cases(cases, |(n, d, c)| {
                let r = RatFun::new(n.clone(), d.clone())?;
                let s = RatFun::new(n * c, d * c)?;
                Ok(r == s && r.den().is_monic() && r.num().gcd(r.den()).is_one() || r.num().is_zero() && r.den().is_one())
            })
        });
        ctx.check("MultiPoly::eval", "evaluation is a ring homomorphism", |rng| {
            let one = f.one();
            let vars = [Var::X, Var::Z];
            let rand_mp = |rng: &mut ChaCha8Rng| {
                let terms: Vec<_> = (0..5)
                    .map(|_| (Monomial::from_pairs(&[(Var::X, rng.gen_range(0..4)), (Var::Z, rng.gen_range(0..4))]), rand_elem(&f, rng)))
                    .collect();
                MultiPoly::from_terms(&one, &vars, terms)
            };
            let cases: Vec<_> = (0..50)
                .map(|_| (rand_mp(rng), rand_mp(rng), rand_elem(&f, rng), rand_elem(&f, rng)))
                .collect();
            all_cases(cases, |(g, h, x, z)| {
                let at = [(Var::X, x.clone()), (Var::Z, z.clone())];
                let ev = |p: &MultiPoly<FqElem>| p.eval(&at);
                Ok(ev(&(g * h))? == &ev(g)? * &ev(h)? && ev(&(g + h))? == &ev(g)? + &ev(h)?)
            })
        });
    }
}

impl Suite for Hyper {
    fn name(&self) -> &'static str {
        "hyper"
    }
    fn module(&self) -> &'static str {
        "hyperderiv"
    }
    fn run(&self, ctx: &mut SuiteCtx) {
        let f = ctx.field();
        let p = f.p();
        ctx.check("hyperderivative", "∂^j θ^n = C(n, j) θ^{n−j}, zero when a digit of j exceeds n's", |_| {
            let top = p.pow(3).min(128);
            let cases = (0..top).flat_map(|n| (0..=n + 1).map(move |j| (n, j)));
            all_cases(cases, |&(n, j)| {
                let d = hyperderivative(&PolyA::monomial(&f.one(), n as usize), j);
                let c = lucas_binomial(n, j, p);
                let digits_exceed = {
                    let (mut a, mut b, mut out) = (n, j, false);
                    while b > 0 {
                        out |= b % p > a % p;
                        a /= p;
                        b /= p;
                    }
                    out
                };
                let want = if j > n || c == 0 { PolyA::zero(&f) } else { PolyA::monomial(&f.int(c as i64), (n - j) as usize) };
                Ok(d == want && (j > n || (c == 0) == digits_exceed))
            })
        });
        ctx.check("hyperderivative", "Leibniz rule", |rng| {
            let cases: Vec<_> = (0..40).map(|_| (rand_poly(&f, 8, rng), rand_poly(&f, 8, rng), rng.gen_range(0..=8u64))).collect();
            all_cases(cases, |(a, b, j)| {
                let mut rhs = PolyA::zero(&f);
                for i in 0..=*j {
                    rhs = &rhs + &(&hyperderivative(a, i) * &hyperderivative(b, j - i));
                }
                Ok(hyperderivative(&(a * b), *j) == rhs)
            })
        });
        ctx.check("hyperderivative", "∂^i∂^j = C(i+j, i)∂^{i+j}", |rng| {
            let cases: Vec<_> = (0..40).map(|_| (rand_poly(&f, 10, rng), rng.gen_range(0..=5u64), rng.gen_range(0..=5u64))).collect();
            all_cases(cases, |(a, i, j)| {
                let c = f.int(lucas_binomial(i + j, *i, p) as i64);
                Ok(hyperderivative(&hyperderivative(a, *j), *i) == hyperderivative(a, i + j).scale(&c))
            })
        });
        ctx.check("taylor_check", "Taylor coefficients rebuild f(t)", |rng| {
            let cases: Vec<_> = (0..30).map(|_| rand_poly(&f, 8, rng)).collect();
            all_cases(cases, |a| Ok(taylor_check(a)))
        });
        ctx.check("HyperOp::apply", "the multivariate operator agrees on polynomials in one variable", |rng| {
            let cases: Vec<_> = (0..30).map(|_| (rand_poly(&f, 8, rng), rng.gen_range(0..=6u64))).collect();
            all_cases(cases, |(a, j)| {
                let lifted = MultiPoly::from_poly_a(a, Var::X);
                let got = HyperOp::new(Var::X, *j).apply(&lifted)?;
                Ok(got == MultiPoly::from_poly_a(&hyperderivative(a, *j), Var::X) && HyperOp::new(Var::Theta, *j).apply_a(a)? == hyperderivative(a, *j))
            })
        });
        ctx.check("voloch_qpower_check", "g^{q^k} = Σ ∂^j(g)[k]^j modulo θ^32", |rng| {
            let cases: Vec<_> = (0..20).map(|_| (rand_poly(&f, 31, rng), rng.gen_range(0..=3u32))).collect();
            all_cases(cases, |(g, k)| Ok(voloch_qpower_check(g, *k, 32)))
        });
    }
}

impl Suite for Symfun {
    fn name(&self) -> &'static str {
        "symfun"
    }
    fn module(&self) -> &'static str {
        "symfun"
    }
    fn run(&self, ctx: &mut SuiteCtx) {
        let f = ctx.field();
        let xs = symbolic_vars(Var::XIdx, 6);
        let ys = symbolic_vars(Var::YIdx, 6);
        let one = xs[0].one_like();
        ctx.check("esym/hsym", "Σ (−1)^j e_j h_{n−j} = 0 for n ≥ 1 over ℤ", |_| {
            let cases = (1..=5usize).flat_map(|d| (1..=6i64).map(move |n| (d, n)));
            all_cases(cases, |&(d, n)| {
                let mut acc = one.zero_like();
                for j in 0..=n {
                    let term = esym(&xs[..d], j, &one).mul_ref(&hsym(&xs[..d], n - j, &one));
                    acc = acc.add_ref(&one.sign_like(j as u64).mul_ref(&term));
                }
                Ok(acc.is_zero())
            })
        });
        ctx.check("matrix_e/matrix_h", "E_d·H_d = I over ℤ", |_| {
            all_cases(1..=6usize, |&d| Ok(matrix_e(d, &xs, &one)?.mul(&matrix_h(d, &xs, &one)?).is_identity()))
        });
        ctx.check("matrix_e/matrix_h", "E_d·H_d = I at random points", |rng| {
            let cases: Vec<_> = (1..=6usize).map(|d| (d, (0..d).map(|_| rand_elem(&f, rng)).collect::<Vec<_>>())).collect();
            all_cases(cases, |(d, vals)| Ok(matrix_e(*d, vals, &f.one())?.mul(&matrix_h(*d, vals, &f.one())?).is_identity()))
        });
        ctx.check("symmrec2_sum", "equals δ_{ik} over ℤ", |_| {
            let cases = (1..=5usize).flat_map(|i| (1..=i).map(move |k| (i, k)));
            all_cases(cases, |&(i, k)| {
                let v = symmrec2_sum(i, k, &xs, &one)?;
                Ok(if i == k { v.is_one() } else { v.is_zero() })
            })
        });
        ctx.check("ehdiff", "expansions of e and h at T − x_m over ℤ", |_| {
            let t = MultiPoly::var(Var::CapT, one.sample());
            let cases = (0..=4usize).flat_map(|d| (0..=4usize).map(move |k| (d, k)));
            all_cases(cases, |&(d, k)| {
                let comp = ehdiff_complete(d, k, &xs, &t)? == ehdiff_complete_direct(d, k, &xs, &t)?;
                let elem = k > d || ehdiff_elementary(d, k, &xs, &t)? == ehdiff_elementary_direct(d, k, &xs, &t)?;
                Ok(comp && elem)
            })
        });
        ctx.check("g_poly", "x_{ℓ+1}..x_k drop out over ℤ", |_| {
            let cases = (2..=5usize).flat_map(|i| (1..i).flat_map(move |k| (1..=k).map(move |l| (i, k, l))));
            all_cases(cases, |&(i, k, l)| {
                let g = g_poly(i, k, l, &xs, &ys, &one)?;
                let free = (l + 1..=k).all(|v| !g.involves(Var::XIdx(v as u32)));
                let n = i - (k - l);
                let reduced_ok = if n >= 2 && l < n {
                    let reduced: Vec<_> = xs[..l].iter().chain(&xs[k..i - 1]).cloned().collect();
                    g == g_poly(n, l, l, &reduced, &ys, &one)?
                } else {
                    true
                };
                Ok(free && reduced_ok)
            })
        });
    }
}

impl Suite for Vandermonde {
    fn name(&self) -> &'static str {
        "vandermonde"
    }
    fn module(&self) -> &'static str {
        "vandermonde"
    }
    fn run(&self, ctx: &mut SuiteCtx) {
        let f = ctx.field();
        let q = f.q();
        ctx.check("kappa_matrix", "κ·V = V·κ = I at distinct random nodes of F_q", |rng| {
            let pool: Vec<FqElem> = if q <= 4096 { f.elements().collect() } else { (0..64).map(|_| rand_elem(&f, rng)).collect() };
            let cases: Vec<Vec<FqElem>> = (0..30)
                .map(|_| {
                    let n = rng.gen_range(1..=6usize.min(q as usize));
                    pool.choose_multiple(rng, n).cloned().collect()
                })
                .collect();
            all_cases(cases, |nodes| {
                let v = vandermonde_matrix(nodes, &f.one());
                let k = kappa_matrix(nodes)?;
                Ok(k.mul(&v).is_identity() && v.mul(&k).is_identity())
            })
        });
        ctx.check("kappa_matrix", "κ·V = I at nodes in K", |rng| {
            let cases: Vec<Vec<RatFun>> = (0..8)
                .map(|_| {
                    let n = rng.gen_range(1..=degree_within(q, 100, 3) + 1);
                    // distinct numerators θ^{q^m} + c keep the nodes distinct
                    let den = rand_nonzero(&f, 2, rng);
                    let c = rand_poly(&f, 0, rng);
                    (0..n).map(|m| RatFun::new(&PolyA::theta_q_pow(&f, m) + &c, den.clone()).expect("nonzero")).collect()
                })
                .collect();
            all_cases(cases, |nodes| Ok(kappa_matrix(nodes)?.mul(&vandermonde_matrix(nodes, &RatFun::one(&f))).is_identity()))
        });
        ctx.check("kappa", "coincident nodes are rejected", |rng| {
            let x = rand_elem(&f, rng);
            let nodes = vec![x.clone(), f.one() + x.clone(), x];
            Ok(match kappa(2, 0, 0, &nodes) {
                Err(Error::Singular { first: 0, second: 2 }) => Ok("singular pair (0, 2) reported".into()),
                other => Err(format!("nodes {nodes:?} gave {other:?}")),
            })
        });
        ctx.check("hyperderiv_via_vandermonde", "matches ∂^j(a)^{q^k} with a t-independence certificate", |rng| {
            // t^{q^i} and θ^{q^k} appear, so keep q^i and q^k small
            let small = degree_within(q, 100, 2);
            let cases: Vec<(PolyA, usize, usize, u32)> = if q.pow(3) <= 256 {
                let mut cases = Vec::new();
                for i in 0..=2usize {
                    for a in all_polys(&f, i as u32) {
                        for j in 0..=i {
                            for k in 0..=2u32 {
                                cases.push((a.clone(), i, j, k));
                            }
                        }
                    }
                }
                cases
            } else {
                (0..40)
                    .map(|_| {
                        let i = rng.gen_range(0..=small as usize);
                        (PolyA::from_raw(&f, (0..=i).map(|_| rng.gen_range(0..q)).collect()), i, rng.gen_range(0..=i), rng.gen_range(0..=small))
                    })
                    .collect()
            };
            all_cases(cases, |(a, i, j, k)| {
                let r = hyperderiv_via_vandermonde(a, *i, *j, *k)?;
                Ok(r.t_independent && r.value == hyperderivative(a, *j as u64).frobenius_twist(*k))
            })
        });
    }
}

impl Suite for Carlitz {
    fn name(&self) -> &'static str {
        "carlitz"
    }
    fn module(&self) -> &'static str {
        "carlitz"
    }
    fn run(&self, ctx: &mut SuiteCtx) {
        let f = ctx.field();
        let lab = ctx.cfg.lab.clone();
        let q = f.q();
        let top = degree_within(q, 81, 4);
        ctx.check("bracket_formulas", &format!("all applicable formulas agree for monic a, deg a ≤ {top}"), |_| {
            let mut cases = Vec::new();
            for d in 0..=top {
                cases.extend(lab.monic_enumerate(d)?);
            }
            let formulas = bracket_formulas();
            all_cases(cases, |a| {
                let deg = a.degree().unwrap_or(0);
                for k in 0..=deg + 1 {
                    let want = bracket_direct(a, k);
                    if bracket_carlitz_formula(a, k)? != want || bracket_hyper_formula(a, k) != want {
                        return Ok(false);
                    }
                    for form in formulas.iter().filter(|g| g.applies(a)) {
                        if form.bracket(a, k)? != want {
                            return Ok(false);
                        }
                    }
                }
                Ok(mu_expand_checked(a)?.len() <= deg + 1)
            })
        });
        let mmax = degree_within(q, 6561, 8) as usize;
        ctx.check("bracket_theta_power", &format!("matches the direct bracket of θ^m for m ≤ {mmax}"), |_| {
            let cases = (0..=mmax).flat_map(|m| (0..=m).map(move |k| (m, k)));
            all_cases(cases, |&(m, k)| Ok(bracket_theta_power(&f, m, k)? == bracket_direct(&PolyA::monomial(&f.one(), m), k)))
        });
        ctx.check("carlitz_of", "C_{ab} = C_a·C_b and C_{a+b} = C_a + C_b", |rng| {
            let d = degree_within(q, 100, 3).max(1) as usize;
            let cases: Vec<_> = (0..25).map(|_| (rand_poly(&f, d, rng), rand_poly(&f, d, rng))).collect();
            all_cases(cases, |(a, b)| {
                Ok(carlitz_of(&(a * b)) == &carlitz_of(a) * &carlitz_of(b) && carlitz_of(&(a + b)) == &carlitz_of(a) + &carlitz_of(b))
            })
        });
        let n = ctx.cfg.trunc.min(q * q * q);
        ctx.check("exp_c/log_c", &format!("log∘exp = id and exp(a·f) = C_a(exp f) modulo z^{n}"), |rng| {
            let one = RatFun::one(&f);
            let cases: Vec<_> = (0..6)
                .map(|_| {
                    let c1 = RatFun::from_poly(rand_poly(&f, 2, rng));
                    let c2 = RatFun::from_poly(rand_poly(&f, 2, rng));
                    let x = MultiPoly::var(Var::X, &one);
                    let z = MultiPoly::var(Var::Z, &one);
                    let poly = &(&x * &z).scale(&c1) + &z.pow(2).scale(&c2);
                    (TruncSeries::new(poly, n), rand_nonzero(&f, 2, rng))
                })
                .collect();
            all_cases(cases, |(s, a)| {
                let e = exp_c(s)?;
                let inv = log_c(&e)? == *s && exp_c(&log_c(s)?)? == *s;
                let fe = exp_c(&s.scale(&RatFun::from_poly(a.clone())))? == carlitz_eval_series(a, &e);
                Ok(inv && fe)
            })
        });
    }
}

impl Suite for PowerSums {
    fn name(&self) -> &'static str {
        "powersums"
    }
    fn module(&self) -> &'static str {
        "powersums"
    }
    fn run(&self, ctx: &mut SuiteCtx) {
        let f = ctx.field();
        let lab = ctx.cfg.lab.clone();
        let q = f.q();
        let imax = degree_within(q, 243, 3);
        let smax = (q - 1).min(2) as usize;
        let lmax = degree_within(q, 729, 6);
        ctx.check("s_brute", &format!("S_i(k) vanishes where predicted, i ≤ {imax}, k ≤ 40"), |_| {
            let cases = (1..=imax).flat_map(|i| (0..=40u64).map(move |k| (i, k)));
            all_cases(cases, |&(i, k)| {
                let s = s_brute(&lab, i, k as i64)?;
                let region = k < q.pow(i) - 1 || sigma_q(q, k) < i as u64 * (q - 1);
                Ok(!region || (sivanish_predicate(q, i, k) && s.is_zero()))
            })
        });
        ctx.check("s_closed", &format!("closed form matches brute sums, i ≤ {imax}, s ≤ {smax}"), |_| {
            let mut cases = Vec::new();
            for i in 1..=imax {
                for l1 in 0..=(i + 1).min(lmax) {
                    cases.push((i, vec![l1]));
                    if smax >= 2 {
                        for l2 in l1..=(i + 1).min(lmax) {
                            cases.push((i, vec![l1, l2]));
                        }
                    }
                }
            }
            all_cases(cases, |(i, ls)| {
                let k = s_closed_exponent(q, ls).ok_or_else(|| Error::Usage("exponent overflow".into()))?;
                Ok(s_closed(&f, *i, ls)? == s_brute(&lab, *i, k as i64)?)
            })
        });
        let ap_i = degree_within(q, 125, 2).max(1);
        ctx.check("angles_pellarin_both_sides", &format!("polynomial identity in t_1..t_s, i ≤ {ap_i}, s ≤ {smax}"), |_| {
            let cases = (1..=ap_i).flat_map(|i| (1..=smax).map(move |s| (i, s)));
            all_cases(cases, |&(i, s)| {
                let (lhs, rhs) = angles_pellarin_both_sides(&lab, i, s)?;
                let ls: Vec<u32> = (0..s as u32).map(|r| i + r).collect();
                Ok(lhs == rhs && specialize_t(&rhs, &ls)? == s_closed(&f, i, &ls)?)
            })
        });
        let hmax = degree_within(q, 27, 3).max(1);
        ctx.check("h_closed", &format!("closed form matches brute sums, i ≤ {hmax}, s ≤ {smax}, j ≤ i, μ ≤ i + 1"), |_| {
            let mut cases = Vec::new();
            for i in 1..=hmax {
                let grid: Vec<(u64, u32)> = (0..=i as u64).flat_map(|j| (0..=i + 1).map(move |mu| (j, mu))).collect();
                for &p1 in &grid {
                    cases.push((i, vec![p1]));
                    if smax >= 2 {
                        for &p2 in &grid {
                            cases.push((i, vec![p1, p2]));
                        }
                    }
                }
            }
            all_cases(cases, |(i, pairs)| Ok(h_closed(&f, *i, pairs)? == h_brute(&lab, *i, pairs, true)?))
        });
    }
}

impl Suite for LogAlg {
    fn name(&self) -> &'static str {
        "logalg"
    }
    fn module(&self) -> &'static str {
        "logalg"
    }
    fn run(&self, ctx: &mut SuiteCtx) {
        let f = ctx.field();
        let lab = ctx.cfg.lab.clone();
        let q = f.q();
        let n = ctx.cfg.trunc;
        let imax = degree_within(q, 81, 3);
        let mumax = degree_within(q, 81, 3);
        ctx.check("lambda_closed_single", &format!("matches brute λ for i ≤ {imax}, μ ≤ {mumax}, both regimes"), |_| {
            let cases = (0..=imax).flat_map(|i| (0..=mumax).map(move |mu| (i, mu)));
            all_cases(cases, |&(i, mu)| Ok(lambda_closed_single(&f, i, mu) == lambda_brute(&lab, i, q.pow(mu))?))
        });
        if q > 2 {
            ctx.check("lambda_closed_multi", "two-digit exponents", |_| {
                let top = mumax.min(2);
                let cases = (0..=imax.min(2)).flat_map(|i| (0..=top).flat_map(move |a| (a..=top).map(move |b| (i, a, b))));
                all_cases(cases, |&(i, a, b)| Ok(lambda_closed_multi(&f, i, &[a, b])? == lambda_brute(&lab, i, q.pow(a) + q.pow(b))?))
            });
        }
        let ms: Vec<u64> = (1..=n.min(q.pow(3)))
            .filter(|&m| sigma_q(q, m) <= q - 1)
            .filter(|&m| q <= 3 || m <= q * q + q)
            .take(12)
            .collect();
        ctx.check("verify_log_algebraicity", &format!("closed form equals the series modulo z^{n}, m ∈ {ms:?}"), |_| {
            all_cases(ms.clone(), |&m| {
                let r = verify_log_algebraicity(&lab, m, n)?;
                Ok(r.matches && r.integral)
            })
        });
        ctx.check("special_poly_thakur", "P_1 = xz and P_q = x^q z − x^q z^q", |_| {
            let one = PolyA::one(&f);
            let x = MultiPoly::var(Var::X, &one);
            let z = MultiPoly::var(Var::Z, &one);
            let p1 = special_poly_thakur(&f, 1, None)?;
            let pq = special_poly_thakur(&f, q, None)?;
            let want_q = &(&x.pow(q) * &z) - &(&x.pow(q) * &z.pow(q));
            Ok(if p1 == &x * &z && pq == want_q {
                Ok("both match".into())
            } else {
                Err(format!("P_1 = {p1}, P_q = {pq}"))
            })
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{default_trunc, Format};
    use carlitz_lab::Lab;

    fn cfg(q: u64, seed: u64) -> CliConfig {
        let field = Field::from_q(q).unwrap();
        CliConfig { lab: Lab::new(field, 1_000_000), format: Format::Json, seed, trunc: default_trunc(q) }
    }

    #[test]
    fn registry_names() {
        assert_eq!(suite_names(), ["algebra", "hyper", "symfun", "vandermonde", "carlitz", "powersums", "logalg", "all"]);
        let err = select("bogus").err().unwrap();
        assert!(err.to_string().contains("algebra, hyper"));
        assert_eq!(select("all").unwrap().len(), 7);
    }

    #[test]
    fn quick_suites_pass() {
        let c = cfg(5, 1);
        for name in ["algebra", "hyper", "vandermonde"] {
            let r = run(&c, name).unwrap();
            assert!(r.ok(), "{}", r.to_text());
        }
    }

    #[test]
    fn failing_check_reports_counterexample() {
        let c = cfg(3, 0);
        let mut ctx = SuiteCtx { cfg: &c, rng: ChaCha8Rng::seed_from_u64(0), module: "test", results: Vec::new() };
        ctx.check("op", "even", |_| all_cases(0..5u32, |&n| Ok(n < 3)));
        assert!(!ctx.results[0].passed);
        assert_eq!(ctx.results[0].detail, "counterexample 3");
    }
}

use carlitz_lab::enumerate::{CAP_ENV, DEFAULT_CAP};
use carlitz_lab::{Error, Field, Lab, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Field, enumeration cap, output format, seed and truncation shared by every subcommand.
#[derive(Clone, Debug)]
pub struct CliConfig {
    pub lab: Lab,
    pub format: Format,
    pub seed: u64,
    pub trunc: u64,
}

pub const TRUNC_MAX: u64 = 256;

/// q³ for q ≤ 3, q² otherwise, never above 256.
pub fn default_trunc(q: u64) -> u64 {
    let n = if q <= 3 { q.pow(3) } else { q.saturating_mul(q) };
    n.min(TRUNC_MAX)
}

pub struct FieldArgs<'a> {
    pub p: Option<u64>,
    pub e: Option<u32>,
    pub q: Option<u64>,
    pub modulus: Option<&'a str>,
}

fn parse_modulus(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|c| {
            c.trim()
                .parse::<u64>()
                .map_err(|_| Error::Usage(format!("modulus coefficient {c:?} is not a non-negative integer")))
        })
        .collect()
}

pub fn build_field(args: &FieldArgs) -> Result<Field> {
    let modulus = args.modulus.map(parse_modulus).transpose()?;
    match (args.q, args.p, args.e) {
        (Some(q), None, None) if modulus.is_none() => Field::from_q(q),
        (Some(q), p, e) => {
            let field = match (p, e) {
                (Some(p), e) => Field::new(p, e.unwrap_or(1), modulus)?,
                (None, e) => {
                    let base = Field::from_q(q)?;
                    Field::new(base.p(), e.unwrap_or(base.e()), modulus)?
                }
            };
            if field.q() != q {
                return Err(Error::Usage(format!(
                    "--q {q} conflicts with p = {}, e = {} (q = {})",
                    field.p(),
                    field.e(),
                    field.q()
                )));
            }
            Ok(field)
        }
        (None, p, e) => Field::new(p.unwrap_or(3), e.unwrap_or(1), modulus),
    }
}

/// Explicit flag, then the environment variable, then the default.
pub fn resolve_cap(flag: Option<u64>) -> Result<u64> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("{CAP_ENV}={v:?} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(p: Option<u64>, e: Option<u32>, q: Option<u64>, modulus: Option<&str>) -> FieldArgs<'_> {
        FieldArgs { p, e, q, modulus }
    }

    #[test]
    fn trunc_defaults() {
        assert_eq!(default_trunc(2), 8);
        assert_eq!(default_trunc(3), 27);
        assert_eq!(default_trunc(5), 25);
        assert_eq!(default_trunc(16), 256);
        assert_eq!(default_trunc(101), 256);
    }

    #[test]
    fn field_resolution() {
        assert_eq!(build_field(&args(None, None, None, None)).unwrap().q(), 3);
        assert_eq!(build_field(&args(None, None, Some(4), None)).unwrap().e(), 2);
        assert_eq!(build_field(&args(Some(2), Some(2), None, Some("1,1,1"))).unwrap().q(), 4);
        assert_eq!(build_field(&args(None, None, Some(4), Some("1,1,1"))).unwrap().q(), 4);
        assert!(build_field(&args(Some(5), None, Some(3), None)).is_err());
        assert!(build_field(&args(None, None, Some(6), None)).is_err());
        assert!(build_field(&args(Some(2), Some(2), None, Some("1,0,1"))).is_err());
        assert!(build_field(&args(None, None, None, Some("x"))).is_err());
    }
}

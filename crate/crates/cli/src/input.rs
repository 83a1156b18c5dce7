use std::path::Path;

use critpoint::{ModelSpec, Rational};
use num::{BigInt, One, Zero};

use crate::Failure;

/// Comma-separated rationals.
#[derive(Clone, Debug)]
pub struct RatList(pub Vec<Rational>);

/// Comma-separated degrees.
#[derive(Clone, Debug)]
pub struct DegList(pub Vec<u32>);

/// `3`, `-7/8` or a plain decimal such as `0.25`, read exactly.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad number `{s}`"));
        }
        let negative = int.starts_with('-');
        let whole: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            w => w.parse().map_err(|_| format!("bad number `{s}`"))?,
        };
        let digits: BigInt = frac.parse().map_err(|_| format!("bad number `{s}`"))?;
        let scale = num::pow(BigInt::from(10), frac.len());
        let v = Rational::new(whole * &scale + digits, scale);
        return Ok(if negative { -v } else { v });
    }
    let v: Rational = s.parse().map_err(|_| format!("bad number `{s}`"))?;
    Ok(v)
}

pub fn parse_rationals(s: &str) -> Result<RatList, String> {
    s.split(',').map(parse_rational).collect::<Result<_, _>>().map(RatList)
}

pub fn parse_degrees(s: &str) -> Result<DegList, String> {
    s.split(',')
        .map(|d| d.trim().parse::<u32>().map_err(|_| format!("bad degree `{d}`")))
        .collect::<Result<_, _>>()
        .map(DegList)
}

pub fn rationals_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter()
        .map(|r| if r.denom().is_one() { r.numer().to_string() } else { r.to_string() })
        .collect()
}

pub fn read_model(path: &Path) -> Result<ModelSpec, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    ModelSpec::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_fractions_and_decimals() {
        let v = parse_rationals("7/8, 1/100,-0.25,3").unwrap().0;
        let want = [Rational::new(7.into(), 8.into()), Rational::new(1.into(), 100.into()), Rational::new((-1).into(), 4.into()), Rational::from_integer(3.into())];
        assert_eq!(v, want);
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }
}

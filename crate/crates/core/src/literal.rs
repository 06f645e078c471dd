//! Text forms shared by the command line, the JSON exports and test fixtures.
//!
//! Element literals follow `p^<q> * [d_0, d_1, ...]`: the element
//! `p^q * sum d_i pi^i`, with `q` an integer or a parenthesised fraction
//! whose denominator divides `e`. Digits are integers in `[0, p)` when
//! `f = 1` and coefficient tuples `(c_0,...,c_(f-1))` otherwise. Plain
//! rationals such as `5`, `-3` or `1/2` are accepted on input.

use num_rational::Rational64;

use crate::padic::{DigitExpansion, PAdicElement, RationalExponent, ResidueElement, ResidueField, SpecRef};
use crate::{Error, Result};

fn fmt_exponent(r: Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("({}/{})", r.numer(), r.denom())
    }
}

/// `p^t`, or `0` when `t = -inf`.
pub fn format_power(p: u64, t: RationalExponent) -> String {
    match t {
        RationalExponent::NegInf => "0".to_string(),
        RationalExponent::PosInf => "inf".to_string(),
        RationalExponent::Finite(r) => format!("{p}^{}", fmt_exponent(r)),
    }
}

pub fn format_digit(field: &ResidueField, d: ResidueElement) -> String {
    if field.degree() == 1 {
        d.index().to_string()
    } else {
        let cs: Vec<String> = field.coeffs(d).iter().map(u64::to_string).collect();
        format!("({})", cs.join(","))
    }
}

pub fn format_digits(field: &ResidueField, digits: &[ResidueElement]) -> String {
    let ds: Vec<String> = digits.iter().map(|d| format_digit(field, *d)).collect();
    format!("[{}]", ds.join(", "))
}

pub fn format_element(x: &PAdicElement) -> String {
    let spec = x.spec();
    let dx = x.significant_digits();
    if x.is_zero() || dx.is_empty() {
        return "0".to_string();
    }
    let q = Rational64::new(dx.lo, i64::from(spec.e()));
    format!("{}^{} * {}", spec.p(), fmt_exponent(q), format_digits(spec.residue_field(), &dx.digits))
}

impl std::fmt::Display for PAdicElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_element(self))
    }
}

fn parse_digit(field: &ResidueField, s: &str) -> Result<ResidueElement> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad digit `{s}`"));
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let cs = inner.split(',').map(|c| c.trim().parse::<u64>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
        return field.from_coeffs(&cs).map_err(|e| Error::Parse(e.to_string()));
    }
    let v: u64 = s.parse().map_err(|_| bad())?;
    if field.degree() != 1 {
        return Err(Error::Parse(format!("digit `{s}` must be a coefficient tuple when f > 1")));
    }
    field.element(v).map_err(|e| Error::Parse(e.to_string()))
}

/// Splits on commas that are not nested inside brackets or parentheses.
pub fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

pub fn parse_digit_list(field: &ResidueField, s: &str) -> Result<Vec<ResidueElement>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed digit list, got `{s}`")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(inner, ',').into_iter().map(|d| parse_digit(field, d)).collect()
}

fn parse_exponent(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let s = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(s);
    crate::padic::RationalExponent::from_str_finite(s)
}

pub fn parse_element(spec: &SpecRef, s: &str) -> Result<PAdicElement> {
    let s = s.trim();
    if let Some((base, rest)) = s.split_once('^') {
        let p: u64 = base.trim().parse().map_err(|_| Error::Parse(format!("bad base in `{s}`")))?;
        if p != spec.p() {
            return Err(Error::Parse(format!("literal base {p} does not match p = {}", spec.p())));
        }
        let (exp, digits) = match rest.split_once('*') {
            Some((exp, digits)) => (exp, Some(digits)),
            None => (rest, None),
        };
        let q = RationalExponent::Finite(parse_exponent(exp)?);
        let lo = q.to_pi(spec.e()).ok_or_else(|| Error::Parse(format!("exponent {q} is not in (1/{})Z", spec.e())))?;
        let digits = match digits {
            Some(d) => parse_digit_list(spec.residue_field(), d)?,
            None => vec![spec.residue_field().one()],
        };
        return Ok(PAdicElement::from_digits(spec, &DigitExpansion::new(lo, digits)));
    }
    let r = crate::padic::RationalExponent::from_str_finite(s)?;
    PAdicElement::from_rational(spec, i128::from(*r.numer()), i128::from(*r.denom()))
}

/// `key=value` pairs separated by top-level commas.
pub fn parse_fields(s: &str) -> Result<Vec<(String, String)>> {
    split_top_level(s, ',')
        .into_iter()
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{}`", part.trim())))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

pub fn field<'a>(fields: &'a [(String, String)], key: &str) -> Result<&'a str> {
    fields
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::make_extension;

    #[test]
    fn ramified_literal() {
        let k = make_extension(2, 2, 1, 20).unwrap();
        let x = parse_element(&k, "2^(1/2) * [1, 0, 1]").unwrap();
        let pi = PAdicElement::uniformizer(&k);
        assert_eq!(x, &pi + &(&pi * &(&pi * &pi)));
        assert_eq!(format_element(&x), "2^(1/2) * [1, 0, 1]");
    }

    #[test]
    fn rationals_and_zero() {
        let k = make_extension(3, 1, 1, 10).unwrap();
        assert_eq!(format_element(&parse_element(&k, "5").unwrap()), "3^0 * [2, 1]");
        assert_eq!(format_element(&parse_element(&k, "0").unwrap()), "0");
        assert_eq!(format_element(&parse_element(&k, "1/3").unwrap()), "3^-1 * [1]");
        assert!(parse_element(&k, "2^0 * [1]").is_err());
        assert!(parse_element(&k, "3^0 * [3]").is_err());
    }

    #[test]
    fn tuple_digits() {
        let k = make_extension(2, 1, 2, 10).unwrap();
        let x = parse_element(&k, "2^1 * [(0,1), (1,1)]").unwrap();
        assert_eq!(format_element(&x), "2^1 * [(0,1), (1,1)]");
        assert!(parse_element(&k, "2^0 * [1]").is_err());
    }

    #[test]
    fn fields_respect_nesting() {
        let f = parse_fields("center=2^(1/2) * [1, 0, 1],rexp=1/2 + sqrt2").unwrap();
        assert_eq!(f[0], ("center".into(), "2^(1/2) * [1, 0, 1]".into()));
        assert_eq!(field(&f, "rexp").unwrap(), "1/2 + sqrt2");
        assert!(field(&f, "omega").is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(format_power(3, RationalExponent::integer(1)), "3^1");
        assert_eq!(format_power(3, RationalExponent::integer(-2)), "3^-2");
        assert_eq!(format_power(2, RationalExponent::new(1, 2)), "2^(1/2)");
        assert_eq!(format_power(2, RationalExponent::NegInf), "0");
    }
}

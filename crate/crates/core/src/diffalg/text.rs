use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;

use super::poly::{DiffPoly, Monomial};
use crate::error::Error;

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &e) in self.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "u{j}^{e}")?;
            first = false;
        }
        Ok(())
    }
}

/// `c * u0^a0 u1^a1 … + …`, highest jet orders first; `0` for the zero polynomial.
impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c} * {m}")?;
            }
        }
        Ok(())
    }
}

fn parse_monomial(s: &str) -> Result<Monomial, Error> {
    let mut exps: Vec<u32> = Vec::new();
    for tok in s.split_whitespace() {
        let body = tok.strip_prefix('u').ok_or_else(|| Error::Parse(format!("bad variable `{tok}`")))?;
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i, e),
            None => (body, "1"),
        };
        let j: usize = idx.parse().map_err(|_| Error::Parse(format!("bad index in `{tok}`")))?;
        let e: u32 = exp.parse().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
        if exps.len() <= j {
            exps.resize(j + 1, 0);
        }
        exps[j] += e;
    }
    Ok(Monomial::new(exps))
}

fn parse_coeff(s: &str) -> Result<BigRational, Error> {
    BigRational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))
}

impl FromStr for DiffPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let normalized = s.replace(" - ", " + -");
        let mut p = DiffPoly::zero();
        for raw in normalized.split(" + ") {
            let term = raw.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            let (coeff, mono) = if let Some((c, m)) = term.split_once('*') {
                (parse_coeff(c)?, parse_monomial(m)?)
            } else if let Some(rest) = term.strip_prefix('-').filter(|r| r.trim_start().starts_with('u')) {
                (-BigRational::one(), parse_monomial(rest)?)
            } else if term.starts_with('u') {
                (BigRational::one(), parse_monomial(term)?)
            } else {
                (parse_coeff(term)?, Monomial::one())
            };
            p.add_term(mono, coeff);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let p: DiffPoly = "1 * u5^1 + 5/2 * u0^2 u3^1 + -15/8 * u0^4 u1^1 + 7".parse().unwrap();
        assert_eq!(p.to_string(), "1 * u5^1 + 5/2 * u0^2 u3^1 + -15/8 * u0^4 u1^1 + 7");
        assert_eq!(p.to_string().parse::<DiffPoly>().unwrap(), p);
    }

    #[test]
    fn lenient_forms() {
        let a: DiffPoly = "u3 - 3/2 * u0^2 u1".parse().unwrap();
        let b: DiffPoly = "1 * u3^1 + -3/2 * u0^2 u1^1".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!("0".parse::<DiffPoly>().unwrap(), DiffPoly::zero());
    }

    #[test]
    fn rejects_garbage() {
        assert!("x1^2".parse::<DiffPoly>().is_err());
        assert!("1 * u1^a".parse::<DiffPoly>().is_err());
        assert!("1 + ".parse::<DiffPoly>().is_err());
    }
}

//! Textual grammar for field elements.
//!
//! Elements are written as signed sums of terms `c*b^k` with rational `c`
//! and integer `k` (possibly negative), e.g. `"b^-2 + b^-3"` or
//! `"3/2*b^2 - 1"`. Whitespace is ignored. [`core::fmt::Display`] for
//! [`AlgNum`] emits a canonical form of the same grammar, so printing and
//! re-parsing is the identity.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::field::{AlgNum, Ctx};
use crate::{Error, Result};

/// Parse an element of `Q(beta)` from the textual grammar.
pub fn parse_algnum(ctx: &Ctx, input: &str) -> Result<AlgNum> {
    let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::Parse("empty input".to_string()));
    }
    let mut pos = 0usize;
    let mut acc = AlgNum::zero(ctx);
    let mut first = true;
    while pos < chars.len() {
        let mut negative = false;
        match chars[pos] {
            '+' => {
                pos += 1;
            }
            '-' => {
                negative = true;
                pos += 1;
            }
            _ if first => {}
            c => {
                return Err(Error::Parse(format!("expected '+' or '-' before '{c}'")));
            }
        }
        first = false;
        let (coeff, k) = parse_term(&chars, &mut pos)?;
        let coeff = if negative { -coeff } else { coeff };
        let term = AlgNum::beta_pow(ctx, k).scale(&coeff);
        acc = &acc + &term;
    }
    Ok(acc)
}

/// One term: `rational`, `rational*b^k`, or `b^k` (with `b` short for
/// `b^1`). Returns the rational coefficient and the exponent.
fn parse_term(chars: &[char], pos: &mut usize) -> Result<(BigRational, i64)> {
    let coeff = if chars.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
        let num = parse_uint(chars, pos)?;
        let den = if chars.get(*pos) == Some(&'/') {
            *pos += 1;
            let d = parse_uint(chars, pos)?;
            if d.is_zero() {
                return Err(Error::Parse("zero denominator".to_string()));
            }
            d
        } else {
            BigInt::one()
        };
        if chars.get(*pos) == Some(&'*') {
            *pos += 1;
            if chars.get(*pos) != Some(&'b') {
                return Err(Error::Parse("expected 'b' after '*'".to_string()));
            }
        }
        Some(BigRational::new(num, den))
    } else {
        None
    };

    if chars.get(*pos) == Some(&'b') {
        *pos += 1;
        let k = if chars.get(*pos) == Some(&'^') {
            *pos += 1;
            let neg = if chars.get(*pos) == Some(&'-') {
                *pos += 1;
                true
            } else {
                false
            };
            let digits = parse_uint(chars, pos)?;
            let k: i64 = digits
                .try_into()
                .map_err(|_| Error::Parse("exponent out of range".to_string()))?;
            if neg {
                -k
            } else {
                k
            }
        } else {
            1
        };
        Ok((coeff.unwrap_or_else(BigRational::one), k))
    } else {
        match coeff {
            Some(c) => Ok((c, 0)),
            None => {
                let found = chars
                    .get(*pos)
                    .map(|c| c.to_string())
                    .unwrap_or_else(|| "end".into());
                Err(Error::Parse(format!("expected a term, found {found}")))
            }
        }
    }
}

fn parse_uint(chars: &[char], pos: &mut usize) -> Result<BigInt> {
    let start = *pos;
    while chars.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::Parse("expected digits".to_string()));
    }
    let s: String = chars[start..*pos].iter().collect();
    s.parse::<BigInt>()
        .map_err(|e| Error::Parse(format!("bad integer: {e}")))
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if i == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if i == 1 {
                    write!(f, "b")?;
                } else {
                    write!(f, "b^{i}")?;
                }
            }
        }
        Ok(())
    }
}

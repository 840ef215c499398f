//! Power-series expansion of rational generating functions in `s`.

use crate::expr::IntPoly;

use super::SseqError;

/// `numerator / denominator` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational {
    pub numerator: IntPoly,
    pub denominator: IntPoly,
}

impl Rational {
    /// Parse `num / den`; the split is at the single top-level `/`.
    pub fn parse(text: &str) -> Result<Self, SseqError> {
        let mut depth = 0i32;
        let mut split = None;
        for (k, ch) in text.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => {
                    if split.is_some() {
                        return Err(SseqError::Series("more than one top-level '/'".into()));
                    }
                    split = Some(k);
                }
                _ => {}
            }
        }
        let (num, den) = match split {
            Some(k) => (&text[..k], &text[k + 1..]),
            None => (text, "1"),
        };
        Ok(Rational {
            numerator: IntPoly::parse(num)?,
            denominator: IntPoly::parse(den)?,
        })
    }

    pub fn expand(&self, n: usize) -> Result<Vec<i64>, SseqError> {
        expand_rational(&self.numerator, &self.denominator, n)
    }
}

/// Coefficients of `s^0..=s^n` in `numerator / denominator`. The constant
/// term of the denominator must be `±1` so the expansion stays integral.
pub fn expand_rational(numerator: &IntPoly, denominator: &IntPoly, n: usize) -> Result<Vec<i64>, SseqError> {
    let d0 = denominator.0.first().copied().unwrap_or(0);
    if d0 == 0 {
        return Err(SseqError::Series("denominator vanishes at s = 0".into()));
    }
    if d0.abs() != 1 {
        return Err(SseqError::Series(format!("constant term {d0} of the denominator is not a unit")));
    }
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut c = numerator.0.get(k).copied().unwrap_or(0);
        for (j, &dj) in denominator.0.iter().enumerate().skip(1).take(k) {
            c = dj
                .checked_mul(out[k - j])
                .and_then(|x: i64| c.checked_sub(x))
                .ok_or_else(|| SseqError::Series("coefficient overflow".into()))?;
        }
        out.push(c * d0);
    }
    Ok(out)
}

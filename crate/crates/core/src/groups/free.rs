//! Reduced words in a free group.

use alloc::vec::Vec;

use super::Syllable;
use crate::{Error, Result};

/// Product of two reduced words, reduced.
pub(crate) fn mul(a: &[Syllable], b: &[Syllable]) -> Result<Vec<Syllable>> {
    let mut out: Vec<Syllable> = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    for (i, s) in b.iter().enumerate() {
        match out.last_mut() {
            Some(last) if last.generator == s.generator => {
                let exp = last.exponent.checked_add(s.exponent).ok_or(Error::Overflow)?;
                if exp == 0 {
                    out.pop();
                } else {
                    last.exponent = exp;
                    out.extend_from_slice(&b[i + 1..]);
                    return Ok(out);
                }
            }
            _ => {
                out.extend_from_slice(&b[i..]);
                return Ok(out);
            }
        }
    }
    Ok(out)
}

pub(crate) fn inv(a: &[Syllable]) -> Result<Vec<Syllable>> {
    a.iter()
        .rev()
        .map(|s| {
            Ok(Syllable { generator: s.generator, exponent: s.exponent.checked_neg().ok_or(Error::Overflow)? })
        })
        .collect()
}

pub(crate) fn is_reduced(a: &[Syllable], rank: usize) -> bool {
    a.iter().all(|s| s.exponent != 0 && (s.generator as usize) < rank)
        && a.windows(2).all(|w| w[0].generator != w[1].generator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(letters: &[(u32, i64)]) -> Vec<Syllable> {
        letters.iter().map(|&(generator, exponent)| Syllable { generator, exponent }).collect()
    }

    #[test]
    fn cancellation_cascades() {
        let a = w(&[(0, 1), (1, 2), (0, -1)]);
        let b = w(&[(0, 1), (1, -2), (0, 3)]);
        assert_eq!(mul(&a, &b).unwrap(), w(&[(0, 4)]));
        assert_eq!(mul(&a, &inv(&a).unwrap()).unwrap(), vec![]);
    }

    #[test]
    fn partial_merge() {
        let a = w(&[(0, 2)]);
        let b = w(&[(0, -1), (1, 1)]);
        assert_eq!(mul(&a, &b).unwrap(), w(&[(0, 1), (1, 1)]));
        assert!(is_reduced(&mul(&a, &b).unwrap(), 2));
        assert!(!is_reduced(&w(&[(0, 1), (0, 1)]), 2));
    }
}

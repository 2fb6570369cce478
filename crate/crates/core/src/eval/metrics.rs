use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::recommend::RankedList;

fn hits<'a>(
    recommended: &'a RankedList,
    relevant: &'a HashSet<String>,
    n: usize,
) -> impl Iterator<Item = bool> + 'a {
    recommended.ids().take(n).map(|id| relevant.contains(id))
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    Ok(())
}

/// Relevant ids in the top `n`, divided by `n`.
///
/// A list shorter than `n` is scored over what it has, still dividing by `n`.
pub fn precision_at_n(recommended: &RankedList, relevant: &HashSet<String>, n: usize) -> Result<f64> {
    check_n(n)?;
    let found = hits(recommended, relevant, n).filter(|&h| h).count();
    Ok(found as f64 / n as f64)
}

/// Mean of precision@r over the ranks `r <= n` that hold a relevant id; 0 with no hits.
///
/// The sum is accumulated as an exact fraction, so the result is the correctly
/// rounded value (e.g. exactly 0.7 for hits at ranks 1, 4, 5), falling back to
/// floating point only if the fraction outgrows 53-bit integers.
pub fn average_precision(
    recommended: &RankedList,
    relevant: &HashSet<String>,
    n: usize,
) -> Result<f64> {
    check_n(n)?;
    let mut found = 0u64;
    let mut float_total = 0.0;
    let mut exact = Some((0u128, 1u128));
    for (rank, hit) in hits(recommended, relevant, n).enumerate() {
        if hit {
            found += 1;
            let rank = rank as u128 + 1;
            float_total += found as f64 / rank as f64;
            exact = exact.and_then(|(num, den)| add_fraction(num, den, u128::from(found), rank));
        }
    }
    if found == 0 {
        return Ok(0.0);
    }
    const LIMIT: u128 = 1 << 53;
    Ok(match exact {
        Some((num, den)) => {
            let den = den * u128::from(found);
            let g = gcd(num, den);
            let (num, den) = (num / g, den / g);
            if num < LIMIT && den < LIMIT {
                num as f64 / den as f64
            } else {
                float_total / found as f64
            }
        }
        None => float_total / found as f64,
    })
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// `a/b + c/d` in lowest terms, or `None` on overflow.
fn add_fraction(a: u128, b: u128, c: u128, d: u128) -> Option<(u128, u128)> {
    let g = gcd(b, d);
    let den = (b / g).checked_mul(d)?;
    let num = a.checked_mul(d / g)?.checked_add(c.checked_mul(b / g)?)?;
    let h = gcd(num, den);
    Some((num / h, den / h))
}

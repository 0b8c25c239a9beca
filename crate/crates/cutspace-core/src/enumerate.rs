//! Labeled partial orders on a few points.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::finite::{bits, full_mask, FinitePoset, Mask};

pub const MAX_ENUMERATED: usize = 6;

/// Closed up-set rows of every labeled partial order on `n` points.
///
/// A poset on `n` points is one on the first `n - 1` plus the strict
/// down-set `D` and strict up-set `U` of the last point, where `D` is a
/// lower set, `U` an upper set and `D <= U` pointwise.
pub fn poset_rows(n: usize) -> Result<Vec<Vec<Mask>>> {
    if n == 0 || n > MAX_ENUMERATED {
        return Err(Error::OutOfRange(format!("poset size {n} outside 1..={MAX_ENUMERATED}")));
    }
    let mut level: Vec<Vec<Mask>> = alloc::vec![alloc::vec![1]];
    for k in 1..n {
        let mut next = Vec::new();
        let full = full_mask(k);
        for rows in &level {
            let down = |x: usize| (0..k).filter(|&y| rows[y] >> x & 1 == 1).fold(0, |m, y| m | 1 << y);
            let downs: Vec<Mask> = (0..k).map(down).collect();
            for d in 0..=full {
                if bits(d).any(|x| downs[x] & !d != 0) {
                    continue;
                }
                // Everything above all of D is the room for U.
                let room = bits(d).fold(full, |m, x| m & rows[x]) & !d;
                for u in 0..=full {
                    if u & !room != 0 || bits(u).any(|x| rows[x] & !u != 0) {
                        continue;
                    }
                    let mut r: Vec<Mask> = rows
                        .iter()
                        .enumerate()
                        .map(|(i, &row)| if d >> i & 1 == 1 { row | u | 1 << k } else { row })
                        .collect();
                    r.push(u | 1 << k);
                    next.push(r);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// Every labeled partial order on `n` points, named `p0, p1, ...`.
pub fn enumerate_posets(n: usize) -> Result<Vec<FinitePoset>> {
    poset_rows(n)?.into_iter().map(FinitePoset::with_default_names).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let counts: Vec<usize> = (1..=5).map(|n| poset_rows(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 3, 19, 219, 4231]);
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(poset_rows(0), Err(Error::OutOfRange(_))));
        assert!(matches!(enumerate_posets(7), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn rows_are_valid_and_distinct() {
        let mut all = poset_rows(4).unwrap();
        for r in &all {
            FinitePoset::with_default_names(r.clone()).unwrap();
        }
        let n = all.len();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), n);
    }
}

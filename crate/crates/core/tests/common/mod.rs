//! Brute-force oracles shared by the integration suites. None of these call
//! into the code paths they are used to check.

#![allow(dead_code)]

use lrcx::BitMatrix;

/// Smallest union of `j` subsets of size `r` whose pairwise intersections
/// are at most `x`, by exhaustive search.
///
/// Any such family fits in a ground set of `j·r` points. The first set is
/// fixed to `{0..r}`; the second is fixed up to the symmetries of the first,
/// which act transitively on sets with a given overlap `a`; the third ranges
/// over every `r`-subset.
pub fn min_union_size(r: usize, j: usize, x: usize) -> usize {
    assert!((1..=3).contains(&j) && r >= 1);
    let ground = j * r;
    assert!(ground <= 31);
    let first: u32 = (1 << r) - 1;
    if j == 1 {
        return r;
    }
    let all_r_subsets: Vec<u32> = (0u32..(1 << ground)).filter(|m| m.count_ones() as usize == r).collect();
    let mut best = usize::MAX;
    for a in 0..=x.min(r) {
        // a points shared with the first set, r − a fresh ones
        let second: u32 = ((1 << a) - 1) | ((((1u64 << (r - a)) - 1) as u32) << r);
        if j == 2 {
            best = best.min((first | second).count_ones() as usize);
            continue;
        }
        for &third in &all_r_subsets {
            if (third & first).count_ones() as usize <= x && (third & second).count_ones() as usize <= x {
                best = best.min((first | second | third).count_ones() as usize);
            }
        }
    }
    best
}

/// Smallest number (up to `max_weight`) of columns of `h` summing to zero,
/// i.e. the lightest nonzero codeword of weight at most `max_weight`.
pub fn min_dependent_columns(h: &BitMatrix, max_weight: usize) -> Option<usize> {
    let n = h.cols();
    let cols: Vec<Vec<bool>> = (0..n).map(|j| (0..h.rows()).map(|i| h.get(i, j)).collect()).collect();
    let xor = |acc: &mut Vec<bool>, c: &[bool]| {
        for (a, b) in acc.iter_mut().zip(c) {
            *a ^= *b;
        }
    };
    fn rec(
        cols: &[Vec<bool>],
        start: usize,
        left: usize,
        acc: &mut Vec<bool>,
        xor: &dyn Fn(&mut Vec<bool>, &[bool]),
    ) -> bool {
        if left == 0 {
            return acc.iter().all(|b| !b);
        }
        for c in start..cols.len() {
            xor(acc, &cols[c]);
            let hit = rec(cols, c + 1, left - 1, acc, xor);
            xor(acc, &cols[c]);
            if hit {
                return true;
            }
        }
        false
    }
    (1..=max_weight.min(n)).find(|&w| {
        let mut acc = vec![false; h.rows()];
        rec(&cols, 0, w, &mut acc, &xor)
    })
}

/// `C(n, k)` by Pascal's triangle.
pub fn pascal(n: usize, k: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

pub fn printed_wzl22() -> BitMatrix {
    BitMatrix::from_strs(&["000111", "011001", "101010", "110100"])
}

pub fn printed_h12() -> BitMatrix {
    BitMatrix::from_strs(&[
        "000000111111",
        "001111000011",
        "110011001100",
        "111100110000",
    ])
}

//! Binary `(r, t)` availability codes built from subset incidence.
//!
//! `H(m, t)` has one row per `(t−1)`-subset `E` of `[m]` and one column per
//! `t`-subset `F`, both in lexicographic order, with a one wherever `E ⊆ F`.
//! With `m = r + t` the resulting code has length `C(m, t)`, rate `r/(r+t)`,
//! distance `t + 1`, and every coordinate lies in exactly `t` checks of
//! weight `r + 1` that meet only in that coordinate.

use std::fmt;

use crate::combin::{binom, subsets};
use crate::error::{invalid, Result};
use crate::gf2::{BitMatrix, Distance};
use crate::rational::{from_u64, Rational};
use crate::xlrc::CodeParams;

/// A subset of `[m]`, stored as its strictly increasing elements.
///
/// Ordering is lexicographic on the element sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetLabel(Vec<usize>);

impl SubsetLabel {
    /// Builds a label, rejecting unsorted, repeated or out-of-range elements.
    pub fn new(elements: Vec<usize>, m: usize) -> Result<Self> {
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("subset label must be strictly increasing"));
        }
        if elements.iter().any(|&e| e == 0 || e > m) {
            return Err(invalid(format!("subset label elements must lie in 1..={m}")));
        }
        Ok(SubsetLabel(elements))
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn is_subset_of(&self, other: &SubsetLabel) -> bool {
        self.0.iter().all(|e| other.contains(*e))
    }

    pub fn is_disjoint_from(&self, other: &SubsetLabel) -> bool {
        self.0.iter().all(|e| !other.contains(*e))
    }

    /// `[m] \ self`.
    pub fn complement(&self, m: usize) -> SubsetLabel {
        SubsetLabel((1..=m).filter(|e| !self.contains(*e)).collect())
    }
}

impl fmt::Display for SubsetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// How column labels relate to the incidence rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    /// Columns are `t`-subsets `F`; `H[E][F] = 1` iff `E ⊆ F`.
    #[default]
    Incidence,
    /// Columns are relabelled by complements `[m] \ F` and re-sorted;
    /// `H[E][G] = 1` iff `E ∩ G = ∅`.
    Complement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WzlCode {
    pub m: usize,
    pub t: usize,
    pub convention: Convention,
    pub h: BitMatrix,
    pub row_labels: Vec<SubsetLabel>,
    pub col_labels: Vec<SubsetLabel>,
}

impl WzlCode {
    /// Locality `r = m − t`.
    pub fn r(&self) -> usize {
        self.m - self.t
    }

    /// Code length `C(m, t)`.
    pub fn length(&self) -> usize {
        self.h.cols()
    }
}

fn check_mt(m: usize, t: usize) -> Result<()> {
    if t < 1 || t > m {
        return Err(invalid(format!("need 1 <= t <= m, got m={m}, t={t}")));
    }
    Ok(())
}

/// Builds `H(m, t)` under the incidence convention.
///
/// For `t = 1` the single row is labelled by the empty set and is all ones;
/// for `t = m` the matrix is a single all-ones column.
pub fn build_wzl(m: usize, t: usize) -> Result<WzlCode> {
    check_mt(m, t)?;
    let row_labels: Vec<SubsetLabel> = subsets(m, t - 1).into_iter().map(SubsetLabel).collect();
    let col_labels: Vec<SubsetLabel> = subsets(m, t).into_iter().map(SubsetLabel).collect();
    let mut h = BitMatrix::zeros(row_labels.len(), col_labels.len());
    for (i, e) in row_labels.iter().enumerate() {
        for (j, f) in col_labels.iter().enumerate() {
            if e.is_subset_of(f) {
                h.set(i, j, true);
            }
        }
    }
    Ok(WzlCode {
        m,
        t,
        convention: Convention::Incidence,
        h,
        row_labels,
        col_labels,
    })
}

/// Builds `H(m, t)` under the requested convention.
pub fn build_wzl_with(m: usize, t: usize, convention: Convention) -> Result<WzlCode> {
    let code = build_wzl(m, t)?;
    Ok(match convention {
        Convention::Incidence => code,
        Convention::Complement => complement_columns(&code),
    })
}

/// Relabels every column by the complement of its label and re-sorts the
/// columns lexicographically by the new labels. Applying it twice is the
/// identity.
pub fn complement_columns(code: &WzlCode) -> WzlCode {
    let mut order: Vec<(SubsetLabel, usize)> = code
        .col_labels
        .iter()
        .enumerate()
        .map(|(j, l)| (l.complement(code.m), j))
        .collect();
    order.sort();
    let perm: Vec<usize> = order.iter().map(|(_, j)| *j).collect();
    let convention = match code.convention {
        Convention::Incidence => Convention::Complement,
        Convention::Complement => Convention::Incidence,
    };
    WzlCode {
        m: code.m,
        t: code.t,
        convention,
        h: code.h.select_columns(&perm),
        row_labels: code.row_labels.clone(),
        col_labels: order.into_iter().map(|(l, _)| l).collect(),
    }
}

/// Checks the block recursion
///
/// ```text
/// H(m,t) = | H(m−1,t−1)      0      |
///          |     I       H(m−1,t)   |
/// ```
///
/// where the first row and column blocks are the labels containing 1.
pub fn check_recursion(m: usize, t: usize) -> Result<bool> {
    if t < 2 || m < 3 || t > m - 1 {
        return Err(invalid(format!("recursion needs 2 <= t <= m-1, got m={m}, t={t}")));
    }
    let whole = build_wzl(m, t)?;
    let top_left = build_wzl(m - 1, t - 1)?.h;
    let bottom_right = build_wzl(m - 1, t)?.h;
    let eye = BitMatrix::identity(top_left.cols());
    let zero = BitMatrix::zeros(top_left.rows(), bottom_right.cols());
    if eye.rows() != bottom_right.rows() {
        return Ok(false);
    }
    let assembled = BitMatrix::from_blocks(&top_left, &zero, &eye, &bottom_right);
    Ok(assembled == whole.h)
}

/// Parameters of the `(r, t)` code with `m = r + t`.
pub fn wzl_params(r: usize, t: usize) -> Result<CodeParams> {
    if r < 1 || t < 1 {
        return Err(invalid(format!("need r >= 1 and t >= 1, got r={r}, t={t}")));
    }
    let m = (r + t) as u64;
    let n = binom(m, t as u64);
    let checks = binom(m - 1, t as u64 - 1);
    let k = n - checks;
    let rate = Rational::new((r as u64).into(), m.into());
    debug_assert_eq!(rate, from_u64(k) / from_u64(n));
    Ok(CodeParams {
        n: n as usize,
        k: k as usize,
        r,
        t,
        x: 0,
        rate,
        d: Some(Distance::Finite(t + 1)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::min_distance;

    #[test]
    fn degenerate_shapes() {
        let c = build_wzl(4, 1).unwrap();
        assert_eq!((c.h.rows(), c.h.cols()), (1, 4));
        assert_eq!(c.h, BitMatrix::ones(1, 4));
        assert!(c.row_labels[0].is_empty());

        let c = build_wzl(4, 4).unwrap();
        assert_eq!(c.h, BitMatrix::ones(4, 1));
    }

    #[test]
    fn invalid_shapes() {
        assert!(build_wzl(3, 0).is_err());
        assert!(build_wzl(3, 4).is_err());
        assert!(check_recursion(5, 1).is_err());
        assert!(check_recursion(5, 5).is_err());
        assert!(wzl_params(0, 2).is_err());
    }

    #[test]
    fn complement_reproduces_printed_example() {
        let c = complement_columns(&build_wzl(4, 2).unwrap());
        assert_eq!(
            c.h,
            BitMatrix::from_strs(&["000111", "011001", "101010", "110100"])
        );
        assert_eq!(c.h.rank(), 3);
        assert_eq!(c.convention, Convention::Complement);
        for (i, e) in c.row_labels.iter().enumerate() {
            for (j, g) in c.col_labels.iter().enumerate() {
                assert_eq!(c.h.get(i, j), e.is_disjoint_from(g));
            }
        }
    }

    #[test]
    fn complement_is_an_involution() {
        for (m, t) in [(4, 2), (5, 2), (6, 3), (5, 1), (5, 5)] {
            let c = build_wzl(m, t).unwrap();
            let twice = complement_columns(&complement_columns(&c));
            assert_eq!(twice, c);
        }
    }

    #[test]
    fn weights_of_h52() {
        let c = build_wzl(5, 2).unwrap();
        assert_eq!((c.h.rows(), c.h.cols()), (5, 10));
        assert!((0..5).all(|i| c.h.row_weight(i) == 4));
        assert!((0..10).all(|j| c.h.col_weight(j) == 2));
        assert_eq!(min_distance(&c.h).unwrap(), Distance::Finite(3));
    }

    #[test]
    fn recursion_examples() {
        assert!(check_recursion(4, 2).unwrap());
        assert!(check_recursion(6, 3).unwrap());
    }

    #[test]
    fn params_examples() {
        let p = wzl_params(2, 2).unwrap();
        assert_eq!((p.n, p.k, p.d), (6, 3, Some(Distance::Finite(3))));
        assert_eq!(p.rate, crate::rational::ratio(1, 2));
        assert_eq!(crate::rational::decimal4(&wzl_params(3, 2).unwrap().rate), "0.6000");
        assert_eq!(wzl_params(3, 2).unwrap().n, 10);
        assert_eq!(crate::rational::decimal4(&wzl_params(7, 3).unwrap().rate), "0.7000");
    }

    #[test]
    fn label_validation() {
        assert!(SubsetLabel::new(vec![1, 3], 4).is_ok());
        assert!(SubsetLabel::new(vec![3, 1], 4).is_err());
        assert!(SubsetLabel::new(vec![0, 1], 4).is_err());
        assert!(SubsetLabel::new(vec![1, 5], 4).is_err());
        assert_eq!(SubsetLabel::new(vec![1, 3], 4).unwrap().to_string(), "{1,3}");
    }
}

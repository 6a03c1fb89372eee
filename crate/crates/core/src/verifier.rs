//! Checking that a parity-check matrix admits `t` recovering sets per
//! coordinate, each of size at most `r`, pairwise meeting in at most `x`
//! coordinates.
//!
//! For a linear code, `R` recovers coordinate `i` exactly when some dual
//! codeword has `i` in its support and the rest of its support inside `R`.
//! [`verify_family`] checks that structurally by solving for such a dual
//! word, and in deep mode also checks the separation property directly: no
//! two codewords agree on `R` while differing at `i`.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{for_each_nonzero_combination, span, BitMatrix, BitVec};

/// Largest `rank(H)` for which the whole dual code is enumerated.
pub const DUAL_ENUM_MAX_RANK: usize = 20;

/// Largest code dimension for the exhaustive separation check.
pub const DEEP_MAX_DIM: usize = 20;

/// How many rows of `H` the bounded search adds together at most.
pub const COMBO_DEPTH: usize = 3;

/// One recovering set: zero-based coordinates, ascending, optionally with the
/// dual codeword that realizes it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecoverySet {
    members: Vec<usize>,
    witness: Option<BitVec>,
}

impl RecoverySet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        RecoverySet { members, witness: None }
    }

    pub fn with_witness(members: Vec<usize>, witness: BitVec) -> Self {
        let mut s = RecoverySet::new(members);
        s.witness = Some(witness);
        s
    }

    /// Builds a set from one-based coordinates.
    pub fn from_one_based(members: &[usize]) -> Self {
        RecoverySet::new(members.iter().map(|&m| m - 1).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.members.iter().map(|m| m + 1).collect()
    }

    pub fn witness(&self) -> Option<&BitVec> {
        self.witness.as_ref()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.members.binary_search(&j).is_ok()
    }

    pub fn intersection(&self, other: &RecoverySet) -> Vec<usize> {
        self.members.iter().copied().filter(|&m| other.contains(m)).collect()
    }

    pub fn intersection_size(&self, other: &RecoverySet) -> usize {
        self.members.iter().filter(|&&m| other.contains(m)).count()
    }
}

impl fmt::Display for RecoverySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, m) in self.members.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", m + 1)?;
        }
        f.write_str("}")
    }
}

/// Recovering sets for every coordinate of a length-`n` code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveringFamily {
    n: usize,
    sets: Vec<Vec<RecoverySet>>,
}

impl RecoveringFamily {
    /// # Panics
    ///
    /// Panics unless there is exactly one list of sets per coordinate.
    pub fn new(n: usize, sets: Vec<Vec<RecoverySet>>) -> Self {
        assert_eq!(sets.len(), n, "need one list of recovering sets per coordinate");
        RecoveringFamily { n, sets }
    }

    /// Builds a family from one-based coordinate lists.
    pub fn from_one_based(n: usize, sets: &[Vec<Vec<usize>>]) -> Self {
        RecoveringFamily::new(
            n,
            sets.iter()
                .map(|per| per.iter().map(|s| RecoverySet::from_one_based(s)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Recovering sets of zero-based coordinate `i`.
    pub fn sets(&self, i: usize) -> &[RecoverySet] {
        &self.sets[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[RecoverySet])> {
        self.sets.iter().enumerate().map(|(i, s)| (i, s.as_slice()))
    }

    /// Largest number of sets held by any coordinate.
    pub fn max_sets(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Checks the structural invariants: every set nonempty, in range, and
    /// free of its own coordinate.
    pub fn validate(&self) -> std::result::Result<(), String> {
        for (i, per) in self.iter() {
            for s in per {
                if s.is_empty() {
                    return Err(format!("coordinate {}: empty recovering set", i + 1));
                }
                if s.contains(i) {
                    return Err(format!("coordinate {}: set {s} contains the coordinate", i + 1));
                }
                if let Some(&bad) = s.members().iter().find(|&&m| m >= self.n) {
                    return Err(format!("coordinate {}: index {} out of range", i + 1, bad + 1));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SearchMode {
    /// Rows of `H` only.
    RowsOnly,
    /// Every word of the dual code; exhaustive, needs `rank(H) ≤ 20`.
    DualEnum,
    /// Sums of up to [`COMBO_DEPTH`] distinct rows of `H`.
    #[default]
    BoundedCombos,
}

impl SearchMode {
    pub fn is_exhaustive(self) -> bool {
        matches!(self, SearchMode::DualEnum)
    }
}

/// Distinct dual codewords of weight at most `max_weight` reachable in `mode`.
fn dual_words(h: &BitMatrix, max_weight: usize, mode: SearchMode) -> Result<Vec<BitVec>> {
    let mut out = Vec::new();
    match mode {
        SearchMode::RowsOnly => out.extend(h.row_vecs().into_iter().filter(|w| !w.is_zero())),
        SearchMode::DualEnum => {
            let basis = h.row_space_basis();
            if basis.rows() > DUAL_ENUM_MAX_RANK {
                return Err(Error::DimensionTooLarge {
                    dim: basis.rows(),
                    cap: DUAL_ENUM_MAX_RANK,
                });
            }
            let n = h.cols();
            for_each_nonzero_combination(&basis, DUAL_ENUM_MAX_RANK, |w| {
                let weight: usize = w.iter().map(|x| x.count_ones() as usize).sum();
                if weight <= max_weight {
                    out.push(BitVec::from_words(n, w.to_vec()));
                }
                true
            })?;
        }
        SearchMode::BoundedCombos => {
            let rows = h.row_vecs();
            let mut combo = |idx: &[usize]| {
                let mut w = rows[idx[0]].clone();
                for &k in &idx[1..] {
                    w.xor_assign(&rows[k]);
                }
                if !w.is_zero() {
                    out.push(w);
                }
            };
            let m = rows.len();
            for a in 0..m {
                combo(&[a]);
                for b in a + 1..m {
                    if COMBO_DEPTH >= 2 {
                        combo(&[a, b]);
                    }
                    for c in b + 1..m {
                        if COMBO_DEPTH >= 3 {
                            combo(&[a, b, c]);
                        }
                    }
                }
            }
        }
    }
    out.retain(|w| w.weight() <= max_weight);
    out.sort();
    out.dedup();
    Ok(out)
}

fn candidates_from(words: &[BitVec], i: usize) -> Vec<RecoverySet> {
    let mut sets: Vec<RecoverySet> = words
        .iter()
        .filter(|w| w.get(i))
        .map(|w| RecoverySet::with_witness(w.iter_ones().filter(|&j| j != i).collect(), w.clone()))
        .filter(|s| !s.is_empty())
        .collect();
    sets.sort_by(|a, b| a.members.cmp(&b.members));
    sets.dedup_by(|a, b| a.members == b.members);
    sets
}

/// Candidate recovering sets for zero-based coordinate `i`: supports (minus
/// `i`) of dual words of weight at most `r + 1` through `i`, sorted
/// lexicographically.
pub fn candidate_sets(h: &BitMatrix, i: usize, r: usize, mode: SearchMode) -> Result<Vec<RecoverySet>> {
    assert!(i < h.cols(), "coordinate out of range");
    let words = dual_words(h, r + 1, mode)?;
    Ok(candidates_from(&words, i))
}

/// Lexicographically first choice of `t` distinct candidates whose pairwise
/// intersections are at most `x`.
fn choose_sets(cands: &[RecoverySet], t: usize, x: usize) -> Option<Vec<RecoverySet>> {
    fn go(cands: &[RecoverySet], t: usize, x: usize, start: usize, picked: &mut Vec<usize>) -> bool {
        if picked.len() == t {
            return true;
        }
        for c in start..cands.len() {
            if cands.len() - c < t - picked.len() {
                break;
            }
            if picked.iter().all(|&p| cands[p].intersection_size(&cands[c]) <= x) {
                picked.push(c);
                if go(cands, t, x, c + 1, picked) {
                    return true;
                }
                picked.pop();
            }
        }
        false
    }
    let mut picked = Vec::with_capacity(t);
    go(cands, t, x, 0, &mut picked).then(|| picked.into_iter().map(|p| cands[p].clone()).collect())
}

/// Outcome of a witness search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Discovery {
    Found(RecoveringFamily),
    /// No admissible sets for `coordinate` (zero-based). When `exhaustive`
    /// the search covered the whole dual code, so none exist.
    NotFound { coordinate: usize, exhaustive: bool },
}

impl Discovery {
    pub fn found(self) -> Option<RecoveringFamily> {
        match self {
            Discovery::Found(f) => Some(f),
            Discovery::NotFound { .. } => None,
        }
    }
}

fn discover_per_coordinate(h: &BitMatrix, r: usize, t: usize, x: usize, mode: SearchMode) -> Result<Vec<Option<Vec<RecoverySet>>>> {
    let words = dual_words(h, r + 1, mode)?;
    Ok((0..h.cols())
        .into_par_iter()
        .map(|i| choose_sets(&candidates_from(&words, i), t, x))
        .collect())
}

/// Searches for `t` recovering sets per coordinate with pairwise
/// intersections at most `x`, preferring lexicographically smallest sets.
pub fn discover_family(h: &BitMatrix, r: usize, t: usize, x: usize, mode: SearchMode) -> Result<Discovery> {
    let per = discover_per_coordinate(h, r, t, x, mode)?;
    let mut sets = Vec::with_capacity(per.len());
    for (i, found) in per.into_iter().enumerate() {
        match found {
            Some(s) => sets.push(s),
            None => {
                return Ok(Discovery::NotFound {
                    coordinate: i,
                    exhaustive: mode.is_exhaustive(),
                })
            }
        }
    }
    Ok(Discovery::Found(RecoveringFamily::new(h.cols(), sets)))
}

/// A dual codeword with `i` in its support and the rest inside `set`.
pub fn find_witness(h: &BitMatrix, i: usize, set: &RecoverySet) -> Option<BitVec> {
    if h.rows() == 0 {
        return None;
    }
    // Constrain every column outside set ∪ {i}, plus column i itself.
    let constrained: Vec<usize> = (0..h.cols()).filter(|&c| c == i || !set.contains(c)).collect();
    let system = h.select_columns(&constrained).transpose();
    let mut rhs = BitVec::zeros(constrained.len());
    let pos = constrained.iter().position(|&c| c == i)?;
    rhs.set(pos, true);
    let y = system.solve(&rhs)?;
    let mut w = BitVec::zeros(h.cols());
    for k in y.iter_ones() {
        w.xor_assign(&h.row(k));
    }
    Some(w)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureReason {
    LengthMismatch { family: usize, code: usize },
    NoFamily { exhaustive: bool },
    WrongSetCount { found: usize, expected: usize },
    EmptySet { set: usize },
    ContainsSelf { set: usize },
    OutOfRange { set: usize, index: usize },
    SetTooLarge { set: usize, size: usize, r: usize },
    IntersectionTooLarge { a: usize, b: usize, size: usize, x: usize },
    NotRecoverable { set: usize },
    NotSeparating { set: usize },
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FailureReason::*;
        match self {
            LengthMismatch { family, code } => write!(f, "family covers {family} coordinates, code has {code}"),
            NoFamily { exhaustive: true } => f.write_str("no admissible recovering sets exist (exhaustive search)"),
            NoFamily { exhaustive: false } => f.write_str("no admissible recovering sets found (bounded search)"),
            WrongSetCount { found, expected } => write!(f, "{found} recovering sets, expected {expected}"),
            EmptySet { set } => write!(f, "set {} is empty", set + 1),
            ContainsSelf { set } => write!(f, "set {} contains the coordinate itself", set + 1),
            OutOfRange { set, index } => write!(f, "set {} has index {} out of range", set + 1, index + 1),
            SetTooLarge { set, size, r } => write!(f, "set {} has size {size} > r = {r}", set + 1),
            IntersectionTooLarge { a, b, size, x } => {
                write!(f, "sets {} and {} share {size} > x = {x} coordinates", a + 1, b + 1)
            }
            NotRecoverable { set } => write!(f, "set {} does not determine the coordinate", set + 1),
            NotSeparating { set } => write!(f, "set {} fails codeword separation", set + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    /// Zero-based; `None` for failures not tied to one coordinate.
    pub coordinate: Option<usize>,
    pub reason: FailureReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateReport {
    pub coordinate: usize,
    pub sets: Vec<RecoverySet>,
    pub max_set_size: usize,
    pub max_intersection: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub ok: bool,
    pub per_coordinate: Vec<CoordinateReport>,
    pub failures: Vec<Failure>,
    /// Whether the exhaustive separation check ran.
    pub deep_checked: bool,
}

impl VerificationReport {
    fn from_parts(per_coordinate: Vec<CoordinateReport>, failures: Vec<Failure>, deep_checked: bool) -> Self {
        VerificationReport {
            ok: failures.is_empty(),
            per_coordinate,
            failures,
            deep_checked,
        }
    }
}

/// Codewords packed one per `stride` words, for the separation check.
struct PackedCode {
    stride: usize,
    data: Vec<u64>,
}

impl PackedCode {
    fn new(h: &BitMatrix) -> Option<Self> {
        let basis = h.nullspace_basis();
        let words = span(&basis, DEEP_MAX_DIM).ok()?;
        let stride = h.cols().div_ceil(64);
        let mut data = Vec::with_capacity(words.len() * stride);
        for w in &words.words {
            data.extend_from_slice(w.as_words());
        }
        Some(PackedCode { stride, data })
    }

    /// `C(i,0)` and `C(i,1)` restricted to `set` must be disjoint.
    fn separates(&self, i: usize, set: &RecoverySet) -> bool {
        let mut mask = vec![0u64; self.stride];
        for &m in set.members() {
            mask[m / 64] |= 1 << (m % 64);
        }
        let bit = |c: &[u64]| (c[i / 64] >> (i % 64)) & 1;
        let mut keyed: Vec<(Vec<u64>, u64)> = self
            .data
            .chunks_exact(self.stride)
            .map(|c| (c.iter().zip(&mask).map(|(a, b)| a & b).collect(), bit(c)))
            .collect();
        keyed.sort_unstable();
        keyed.dedup();
        keyed.windows(2).all(|w| w[0].0 != w[1].0)
    }

    fn separates_narrow(&self, i: usize, set: &RecoverySet) -> bool {
        debug_assert_eq!(self.stride, 1);
        let mask = set.members().iter().fold(0u64, |acc, &m| acc | 1 << m);
        let mut keyed: Vec<u64> = self
            .data
            .iter()
            .map(|&c| ((c & mask) << 1) | ((c >> i) & 1))
            .collect();
        keyed.sort_unstable();
        keyed.dedup();
        keyed.windows(2).all(|w| w[0] >> 1 != w[1] >> 1)
    }
}

fn check_coordinate(
    h: &BitMatrix,
    i: usize,
    sets: &[RecoverySet],
    (r, t, x): (usize, usize, usize),
    packed: Option<&PackedCode>,
) -> (CoordinateReport, Vec<Failure>) {
    let n = h.cols();
    let mut reasons = Vec::new();
    if sets.len() != t {
        reasons.push(FailureReason::WrongSetCount { found: sets.len(), expected: t });
    }
    let mut max_set_size = 0;
    let mut max_intersection = 0;
    for (a, s) in sets.iter().enumerate() {
        max_set_size = max_set_size.max(s.len());
        let mut well_formed = true;
        if s.is_empty() {
            reasons.push(FailureReason::EmptySet { set: a });
            well_formed = false;
        }
        if s.contains(i) {
            reasons.push(FailureReason::ContainsSelf { set: a });
            well_formed = false;
        }
        if let Some(&index) = s.members().iter().find(|&&m| m >= n) {
            reasons.push(FailureReason::OutOfRange { set: a, index });
            well_formed = false;
        }
        if s.len() > r {
            reasons.push(FailureReason::SetTooLarge { set: a, size: s.len(), r });
        }
        for (b, other) in sets.iter().enumerate().skip(a + 1) {
            let size = s.intersection_size(other);
            max_intersection = max_intersection.max(size);
            if size > x {
                reasons.push(FailureReason::IntersectionTooLarge { a, b, size, x });
            }
        }
        if !well_formed {
            continue;
        }
        if find_witness(h, i, s).is_none() {
            reasons.push(FailureReason::NotRecoverable { set: a });
        }
        if let Some(code) = packed {
            let ok = if code.stride == 1 {
                code.separates_narrow(i, s)
            } else {
                code.separates(i, s)
            };
            if !ok {
                reasons.push(FailureReason::NotSeparating { set: a });
            }
        }
    }
    let report = CoordinateReport {
        coordinate: i,
        sets: sets.to_vec(),
        max_set_size,
        max_intersection,
    };
    let failures = reasons
        .into_iter()
        .map(|reason| Failure { coordinate: Some(i), reason })
        .collect();
    (report, failures)
}

fn deep_code(h: &BitMatrix, deep: bool) -> Option<PackedCode> {
    if deep && h.code_dimension() <= DEEP_MAX_DIM {
        PackedCode::new(h)
    } else {
        None
    }
}

fn assemble(results: Vec<(CoordinateReport, Vec<Failure>)>, deep_checked: bool) -> VerificationReport {
    let mut per = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for (rep, fails) in results {
        per.push(rep);
        failures.extend(fails);
    }
    VerificationReport::from_parts(per, failures, deep_checked)
}

/// Checks `family` against `h` for parameters `(r, t, x)`.
///
/// The separation check runs when `deep` is set and the code dimension is at
/// most [`DEEP_MAX_DIM`]; `deep_checked` in the report says whether it did.
pub fn verify_family(h: &BitMatrix, family: &RecoveringFamily, r: usize, t: usize, x: usize, deep: bool) -> VerificationReport {
    if family.n() != h.cols() {
        let failure = Failure {
            coordinate: None,
            reason: FailureReason::LengthMismatch {
                family: family.n(),
                code: h.cols(),
            },
        };
        return VerificationReport::from_parts(Vec::new(), vec![failure], false);
    }
    let packed = deep_code(h, deep);
    let results = (0..h.cols())
        .into_par_iter()
        .map(|i| check_coordinate(h, i, family.sets(i), (r, t, x), packed.as_ref()))
        .collect();
    assemble(results, packed.is_some())
}

/// Searches for a family and verifies it, reporting coordinates without one
/// as failures instead of stopping at the first.
pub fn verify_matrix(h: &BitMatrix, r: usize, t: usize, x: usize, mode: SearchMode, deep: bool) -> Result<VerificationReport> {
    let per = discover_per_coordinate(h, r, t, x, mode)?;
    let packed = deep_code(h, deep);
    let results = per
        .into_par_iter()
        .enumerate()
        .map(|(i, found)| match found {
            Some(sets) => check_coordinate(h, i, &sets, (r, t, x), packed.as_ref()),
            None => (
                CoordinateReport {
                    coordinate: i,
                    sets: Vec::new(),
                    max_set_size: 0,
                    max_intersection: 0,
                },
                vec![Failure {
                    coordinate: Some(i),
                    reason: FailureReason::NoFamily {
                        exhaustive: mode.is_exhaustive(),
                    },
                }],
            ),
        })
        .collect();
    Ok(assemble(results, packed.is_some()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wzl::{build_wzl, Convention};
    use crate::xlrc::{build_xlrc_with, canonical_family, BuildOptions};

    fn printed_h12() -> BitMatrix {
        BitMatrix::from_strs(&[
            "000000111111",
            "001111000011",
            "110011001100",
            "111100110000",
        ])
    }

    fn one_based(sets: &[RecoverySet]) -> Vec<Vec<usize>> {
        sets.iter().map(RecoverySet::one_based).collect()
    }

    #[test]
    fn candidate_examples() {
        let c = candidate_sets(&printed_h12(), 0, 5, SearchMode::RowsOnly).unwrap();
        assert_eq!(one_based(&c), vec![vec![2, 3, 4, 7, 8], vec![2, 5, 6, 9, 10]]);

        let c = candidate_sets(&BitMatrix::from_strs(&["111"]), 1, 2, SearchMode::RowsOnly).unwrap();
        assert_eq!(one_based(&c), vec![vec![1, 3]]);

        let h = build_wzl(5, 2).unwrap().h;
        for i in 0..h.cols() {
            let rows = candidate_sets(&h, i, 3, SearchMode::RowsOnly).unwrap();
            let dual = candidate_sets(&h, i, 3, SearchMode::DualEnum).unwrap();
            for s in &rows {
                assert!(dual.iter().any(|d| d.members() == s.members()));
            }
        }
    }

    #[test]
    fn dual_enum_cap() {
        let h = BitMatrix::identity(21);
        assert_eq!(
            candidate_sets(&h, 0, 1, SearchMode::DualEnum),
            Err(Error::DimensionTooLarge { dim: 21, cap: 20 })
        );
    }

    #[test]
    fn verify_examples() {
        let opts = BuildOptions {
            convention: Convention::Complement,
            distance_cap: None,
        };
        let code = build_xlrc_with(2, 2, 1, opts).unwrap();
        let fam = canonical_family(&code);
        let rep = verify_family(&code.h, &fam, 5, 2, 1, true);
        assert!(rep.ok, "{:?}", rep.failures);
        assert!(rep.deep_checked);

        let rep = verify_family(&code.h, &fam, 5, 2, 0, false);
        assert!(!rep.ok);
        let bad: std::collections::BTreeSet<_> = rep.failures.iter().filter_map(|f| f.coordinate).collect();
        assert_eq!(bad.len(), 12);
        assert!(rep
            .failures
            .iter()
            .all(|f| matches!(f.reason, FailureReason::IntersectionTooLarge { size: 1, .. })));

        let wzl = build_wzl(4, 2).unwrap();
        let fam = crate::xlrc::rows_family(&wzl.h);
        let rep = verify_family(&wzl.h, &fam, 2, 2, 0, true);
        assert!(rep.ok && rep.deep_checked);
        assert!(rep.per_coordinate.iter().all(|c| c.max_intersection == 0));
    }

    #[test]
    fn verify_catches_malformed_sets() {
        let h = BitMatrix::from_strs(&["1111"]);
        let fam = RecoveringFamily::from_one_based(4, &[vec![vec![1, 2]], vec![vec![1]], vec![vec![1, 2, 4]], vec![vec![1, 2, 3]]]);
        let rep = verify_family(&h, &fam, 3, 1, 0, true);
        let reasons: Vec<_> = rep.failures.iter().map(|f| (f.coordinate, f.reason.clone())).collect();
        assert!(reasons.contains(&(Some(0), FailureReason::ContainsSelf { set: 0 })));
        assert!(reasons.contains(&(Some(1), FailureReason::NotRecoverable { set: 0 })));
        assert!(reasons.contains(&(Some(1), FailureReason::NotSeparating { set: 0 })));
        assert!(!reasons.iter().any(|(c, _)| *c == Some(2) || *c == Some(3)));

        let short = RecoveringFamily::from_one_based(3, &[vec![], vec![], vec![]]);
        let rep = verify_family(&h, &short, 3, 1, 0, false);
        assert!(matches!(rep.failures[0].reason, FailureReason::LengthMismatch { .. }));
    }

    #[test]
    fn discover_examples() {
        let opts = BuildOptions {
            convention: Convention::Complement,
            distance_cap: None,
        };
        let code = build_xlrc_with(2, 2, 1, opts).unwrap();
        let found = discover_family(&code.h, 5, 2, 1, SearchMode::BoundedCombos).unwrap().found().unwrap();
        let canon = canonical_family(&code);
        for i in 0..12 {
            let mut a = one_based(found.sets(i));
            let mut b = one_based(canon.sets(i));
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }

        let h = build_wzl(4, 2).unwrap().h;
        for mode in [SearchMode::RowsOnly, SearchMode::BoundedCombos, SearchMode::DualEnum] {
            let d = discover_family(&h, 2, 3, 0, mode).unwrap();
            assert_eq!(
                d,
                Discovery::NotFound {
                    coordinate: 0,
                    exhaustive: mode == SearchMode::DualEnum
                }
            );
        }

        let h = BitMatrix::from_strs(&["1111"]);
        let f = discover_family(&h, 3, 1, 0, SearchMode::RowsOnly).unwrap().found().unwrap();
        for i in 0..4 {
            let expect: Vec<usize> = (1..=4).filter(|&j| j != i + 1).collect();
            assert_eq!(one_based(f.sets(i)), vec![expect]);
        }
    }

    #[test]
    fn verify_matrix_reports_missing_coordinates() {
        let rep = verify_matrix(&printed_h12(), 5, 2, 0, SearchMode::BoundedCombos, false).unwrap();
        assert!(!rep.ok);
        assert_eq!(rep.failures.len(), 12);
        let rep = verify_matrix(&printed_h12(), 5, 2, 1, SearchMode::BoundedCombos, true).unwrap();
        assert!(rep.ok);
    }

    #[test]
    fn witnesses_are_dual_words() {
        let h = printed_h12();
        let codewords = crate::gf2::enumerate_codewords(&h, 20).unwrap();
        let s = RecoverySet::from_one_based(&[2, 5, 6, 9, 10]);
        let w = find_witness(&h, 0, &s).unwrap();
        assert!(w.get(0));
        assert!(w.iter_ones().all(|j| j == 0 || s.contains(j)));
        assert!(codewords.words.iter().all(|c| !c.dot(&w)));
        assert!(find_witness(&h, 0, &RecoverySet::from_one_based(&[2, 3])).is_none());
    }

    #[test]
    fn family_validation() {
        let f = RecoveringFamily::from_one_based(2, &[vec![vec![2]], vec![vec![2]]]);
        assert!(f.validate().is_err());
        let f = RecoveringFamily::from_one_based(2, &[vec![vec![2]], vec![vec![1]]]);
        assert!(f.validate().is_ok());
    }
}

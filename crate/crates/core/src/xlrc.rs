//! `(r, t, x)` codes from a seed `(r̃, t̃)` incidence code.
//!
//! Every column of the seed parity-check matrix is repeated `x + 1` times in
//! adjacent positions (`H = H_seed ⊗ [1 … 1]`). A coordinate then shares each
//! of its `t̃` checks with its `x` sibling copies, so its recovering sets have
//! size `r = (r̃ + 1)(x + 1) − 1` and any two of them meet in exactly those
//! `x` siblings. The rank does not change, giving rate
//! `(r + (t − 1)x) / (r + t + (t − 1)x)`.

use crate::combin::binom;
use crate::error::{invalid, Result};
use crate::gf2::{min_distance_capped, BitMatrix, Distance, DEFAULT_MAX_DIM};
use crate::rational::{from_u64, Rational};
use crate::verifier::{RecoveringFamily, RecoverySet};
use crate::wzl::{build_wzl_with, Convention, WzlCode};

/// Scalar parameters of a code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub t: usize,
    pub x: usize,
    /// Always `k / n`.
    pub rate: Rational,
    /// `None` when the distance was not computed.
    pub d: Option<Distance>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XlrcCode {
    pub base: WzlCode,
    pub x: usize,
    pub h: BitMatrix,
    pub params: CodeParams,
}

impl XlrcCode {
    pub fn r_tilde(&self) -> usize {
        self.base.r()
    }

    pub fn t_tilde(&self) -> usize {
        self.base.t
    }

    /// Zero-based coordinates sharing a seed column with `i`, excluding `i`.
    pub fn siblings(&self, i: usize) -> Vec<usize> {
        let block = self.x + 1;
        let start = i / block * block;
        (start..start + block).filter(|&j| j != i).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    pub convention: Convention,
    /// Compute `d` by enumeration when the code dimension is at most this.
    pub distance_cap: Option<usize>,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            convention: Convention::Incidence,
            distance_cap: Some(DEFAULT_MAX_DIM),
        }
    }
}

fn check_tilde(r_tilde: usize, t_tilde: usize) -> Result<()> {
    if r_tilde < 1 || t_tilde < 1 {
        return Err(invalid(format!(
            "need r~ >= 1 and t~ >= 1, got r~={r_tilde}, t~={t_tilde}"
        )));
    }
    Ok(())
}

/// Builds the code with default options.
pub fn build_xlrc(r_tilde: usize, t_tilde: usize, x: usize) -> Result<XlrcCode> {
    build_xlrc_with(r_tilde, t_tilde, x, BuildOptions::default())
}

pub fn build_xlrc_with(r_tilde: usize, t_tilde: usize, x: usize, opts: BuildOptions) -> Result<XlrcCode> {
    check_tilde(r_tilde, t_tilde)?;
    let base = build_wzl_with(r_tilde + t_tilde, t_tilde, opts.convention)?;
    let h = base.h.kronecker(&BitMatrix::ones(1, x + 1));
    let mut params = map_params(r_tilde, t_tilde, x)?;
    debug_assert_eq!(params.n, h.cols());
    params.d = match opts.distance_cap {
        Some(cap) if params.k <= cap => Some(min_distance_capped(&h, cap)?),
        _ => None,
    };
    Ok(XlrcCode { base, x, h, params })
}

/// Parameters of the construction, from the seed parameters alone.
pub fn map_params(r_tilde: usize, t_tilde: usize, x: usize) -> Result<CodeParams> {
    check_tilde(r_tilde, t_tilde)?;
    let m = (r_tilde + t_tilde) as u64;
    let n = (x as u64 + 1) * binom(m, t_tilde as u64);
    let k = n - binom(m - 1, t_tilde as u64 - 1);
    Ok(CodeParams {
        n: n as usize,
        k: k as usize,
        r: (r_tilde + 1) * (x + 1) - 1,
        t: t_tilde,
        x,
        rate: from_u64(k) / from_u64(n),
        d: None,
    })
}

/// `(r + (t−1)x) / (r + t + (t−1)x)`.
pub fn closed_form_rate(r: usize, t: usize, x: usize) -> Rational {
    let spread = (t as u64 - 1) * x as u64;
    Rational::new(
        (r as u64 + spread).into(),
        (r as u64 + t as u64 + spread).into(),
    )
}

/// Seed locality `r̃` giving final locality `r` at intersection `x`, if any.
pub fn seed_locality(r: usize, x: usize) -> Option<usize> {
    let block = x + 1;
    if (r + 1) % block != 0 || (r + 1) / block < 2 {
        return None;
    }
    Some((r + 1) / block - 1)
}

/// Rate of the construction with final parameters `(r, t, x)`.
pub fn construction_rate(r: usize, t: usize, x: usize) -> Result<Rational> {
    let r_tilde = seed_locality(r, x)
        .ok_or_else(|| invalid(format!("no seed gives locality {r} at x = {x}")))?;
    Ok(map_params(r_tilde, t, x)?.rate)
}

/// The recovering sets read off the parity checks: for each coordinate, the
/// support of each of the `t` rows through it, minus the coordinate.
pub fn canonical_family(code: &XlrcCode) -> RecoveringFamily {
    rows_family(&code.h)
}

/// For each coordinate, one recovering set per row of `h` through it, in row
/// order, each carrying its row as witness.
pub fn rows_family(h: &BitMatrix) -> RecoveringFamily {
    let n = h.cols();
    let rows = h.row_vecs();
    let sets = (0..n)
        .map(|i| {
            rows.iter()
                .filter(|row| row.get(i))
                .map(|row| RecoverySet::with_witness(row.iter_ones().filter(|&j| j != i).collect(), row.clone()))
                .collect()
        })
        .collect();
    RecoveringFamily::new(n, sets)
}

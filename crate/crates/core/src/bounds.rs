//! Exact rate and distance bounds.
//!
//! The rate bound for `(r, t, x)` codes comes from bounding the size of a
//! union of `j` recovering sets of size `r` whose pairwise intersections are
//! at most `x`:
//!
//! ```text
//! N_lower(r, j, x) = (2r − (s−1)x)·s / 2,   s = min(j, ⌊r/x⌋ + 1)
//! N_upper(r, j, x) = j·r
//! ```
//!
//! and feeding those into a one-sided inclusion–exclusion:
//!
//! ```text
//! f(r,t,x) = Σ_{j odd}  C(t,j) / (N_upper(r,j,x) + 1)
//!          − Σ_{j even} C(t,j) / (N_lower(r,j,x) + 1)
//! R*(r,t,x) = 1 − f(r,t,x)
//! ```
//!
//! Every value is an exact rational; decimal strings are rendered from them.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combin::binom;
use crate::error::{invalid, Result};
use crate::rational::{decimal4, from_u64, Rational};
use crate::wzl::wzl_params;
use crate::xlrc::construction_rate;

fn check_rtx(r: usize, t: usize, x: usize) -> Result<()> {
    if r < 1 || t < 1 {
        return Err(invalid(format!("need r >= 1 and t >= 1, got r={r}, t={t}")));
    }
    if x > r {
        return Err(invalid(format!("need x <= r, got x={x}, r={r}")));
    }
    Ok(())
}

/// `j·r`: the union size when the sets are disjoint.
pub fn n_upper(r: usize, j: usize, _x: usize) -> usize {
    j * r
}

/// Smallest possible union of `j` sets of size `r` meeting pairwise in at
/// most `x` points. With `x = 0` the sets are disjoint and `s = j`.
pub fn n_lower(r: usize, j: usize, x: usize) -> Result<usize> {
    if r < 1 || j < 1 {
        return Err(invalid(format!("need r >= 1 and j >= 1, got r={r}, j={j}")));
    }
    if x > r {
        return Err(invalid(format!("need x <= r, got x={x}, r={r}")));
    }
    let s = if x == 0 { j } else { j.min(r / x + 1) };
    let twice = (2 * r - (s - 1) * x) * s;
    assert!(twice % 2 == 0, "union bound is not an integer");
    Ok(twice / 2)
}

pub fn f_value(r: usize, t: usize, x: usize) -> Result<Rational> {
    check_rtx(r, t, x)?;
    let mut f = Rational::zero();
    for j in 1..=t {
        let c = from_u64(binom(t as u64, j as u64));
        if j % 2 == 1 {
            f += c / from_u64(n_upper(r, j, x) as u64 + 1);
        } else {
            f -= c / from_u64(n_lower(r, j, x)? as u64 + 1);
        }
    }
    Ok(f)
}

/// `R*(r,t,x) = 1 − f(r,t,x)`.
pub fn rate_upper(r: usize, t: usize, x: usize) -> Result<Rational> {
    Ok(Rational::one() - f_value(r, t, x)?)
}

/// `∏_{i=1}^{t} 1/(1 + 1/(i·r))`, the bound for disjoint recovering sets.
pub fn rate_product(r: usize, t: usize) -> Result<Rational> {
    if r < 1 || t < 1 {
        return Err(invalid(format!("need r >= 1 and t >= 1, got r={r}, t={t}")));
    }
    Ok((1..=t).fold(Rational::one(), |acc, i| {
        let ir = (i * r) as u64;
        acc * Rational::new(BigInt::from(ir), BigInt::from(ir + 1))
    }))
}

fn check_nkrt(n: usize, k: usize, r: usize, t: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(invalid(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    if r < 1 || t < 1 {
        return Err(invalid(format!("need r >= 1 and t >= 1, got r={r}, t={t}")));
    }
    Ok(())
}

/// `n − k + 2 − ⌈(t(k−1) + 1) / (t(r−1) + 1)⌉`.
pub fn distance_bound_wr(n: usize, k: usize, r: usize, t: usize) -> Result<i64> {
    check_nkrt(n, k, r, t)?;
    let num = (t * (k - 1) + 1) as i64;
    let den = (t * (r - 1) + 1) as i64;
    let ceil = (num + den - 1) / den;
    Ok(n as i64 - k as i64 + 2 - ceil)
}

/// `n − Σ_{i=0}^{t} ⌊(k−1) / r^i⌋`.
pub fn distance_bound_tbf(n: usize, k: usize, r: usize, t: usize) -> Result<i64> {
    check_nkrt(n, k, r, t)?;
    let mut sum: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..=t {
        let term = (k as u128 - 1) / power;
        if term == 0 {
            break;
        }
        sum += term;
        power = power.saturating_mul(r as u128);
    }
    Ok(n as i64 - sum as i64)
}

/// All bound values for one `(r, t, x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub r: usize,
    pub t: usize,
    pub x: usize,
    /// Index `j − 1` holds the value for `j` sets.
    pub n_lower_by_j: Vec<usize>,
    pub n_upper_by_j: Vec<usize>,
    pub f: Rational,
    pub rate_upper: Rational,
    /// The disjoint-set product bound, for comparison.
    pub rate_product_x0: Option<Rational>,
    pub decimal4: String,
}

impl BoundReport {
    pub fn new(r: usize, t: usize, x: usize) -> Result<Self> {
        check_rtx(r, t, x)?;
        let n_lower_by_j = (1..=t).map(|j| n_lower(r, j, x)).collect::<Result<Vec<_>>>()?;
        let n_upper_by_j = (1..=t).map(|j| n_upper(r, j, x)).collect();
        let f = f_value(r, t, x)?;
        let rate_upper = Rational::one() - &f;
        let decimal4 = decimal4(&rate_upper);
        Ok(BoundReport {
            r,
            t,
            x,
            n_lower_by_j,
            n_upper_by_j,
            f,
            rate_upper,
            rate_product_x0: Some(rate_product(r, t)?),
            decimal4,
        })
    }
}

/// Row keys of the first table.
pub const TABLE1_ROWS: [(usize, usize); 8] = [(4, 2), (5, 2), (6, 2), (7, 2), (4, 3), (5, 3), (6, 3), (7, 3)];
/// Column keys (values of `x`) of the first table.
pub const TABLE1_XS: [usize; 4] = [0, 1, 2, 3];
/// Row keys of the second table.
pub const TABLE2_ROWS: [(usize, usize); 6] = [(3, 2), (5, 2), (7, 2), (3, 3), (5, 3), (7, 3)];

/// Rate upper bounds over the `(r, t) × x` grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1 {
    pub rows: Vec<Table1Row>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Row {
    pub r: usize,
    pub t: usize,
    /// One report per entry of [`TABLE1_XS`].
    pub cells: Vec<BoundReport>,
}

pub fn table1() -> Table1 {
    let rows = TABLE1_ROWS
        .iter()
        .map(|&(r, t)| Table1Row {
            r,
            t,
            cells: TABLE1_XS
                .iter()
                .map(|&x| BoundReport::new(r, t, x).expect("table parameters are valid"))
                .collect(),
        })
        .collect();
    Table1 { rows }
}

/// Constructed rates against upper bounds, at `x = 0` and `x = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table2Row {
    pub r: usize,
    pub t: usize,
    pub wzl_rate: Rational,
    pub rate_upper_x0: Rational,
    pub construction_rate_x1: Rational,
    pub rate_upper_x1: Rational,
}

impl Table2Row {
    pub fn values(&self) -> [&Rational; 4] {
        [&self.wzl_rate, &self.rate_upper_x0, &self.construction_rate_x1, &self.rate_upper_x1]
    }

    pub fn decimals(&self) -> [String; 4] {
        self.values().map(decimal4)
    }
}

pub fn table2() -> Vec<Table2Row> {
    TABLE2_ROWS
        .iter()
        .map(|&(r, t)| Table2Row {
            r,
            t,
            wzl_rate: wzl_params(r, t).expect("valid").rate,
            rate_upper_x0: rate_upper(r, t, 0).expect("valid"),
            construction_rate_x1: construction_rate(r, t, 1).expect("odd locality has a seed"),
            rate_upper_x1: rate_upper(r, t, 1).expect("valid"),
        })
        .collect()
}

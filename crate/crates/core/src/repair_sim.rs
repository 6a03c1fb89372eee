//! Parallel single-symbol repair: erase one coordinate and rebuild it once
//! from each of its recovering sets, tracking how often each helper is read.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::gf2::{BitMatrix, BitVec, Echelon};
use crate::verifier::{find_witness, RecoveringFamily, RecoverySet};

/// Systematic encoder: message bits go to the non-pivot columns of the
/// reduced echelon form of `H`, pivots are solved for.
#[derive(Debug, Clone)]
pub struct Encoder {
    echelon: Echelon,
    free: Vec<usize>,
}

impl Encoder {
    pub fn new(h: &BitMatrix) -> Self {
        let echelon = h.echelon();
        let free = echelon.free_columns();
        Encoder { echelon, free }
    }

    /// Message length `n − rank(H)`.
    pub fn dimension(&self) -> usize {
        self.free.len()
    }

    /// Positions carrying the message, ascending.
    pub fn systematic_positions(&self) -> &[usize] {
        &self.free
    }

    pub fn encode(&self, message: &BitVec) -> Result<BitVec> {
        if message.len() != self.free.len() {
            return Err(invalid(format!(
                "message has length {}, code dimension is {}",
                message.len(),
                self.free.len()
            )));
        }
        let n = self.echelon.reduced.cols();
        let mut c = BitVec::zeros(n);
        for (k, &f) in self.free.iter().enumerate() {
            if message.get(k) {
                c.set(f, true);
            }
        }
        for (row, &p) in self.echelon.pivots.iter().enumerate() {
            let parity = self.free.iter().filter(|&&f| c.get(f) && self.echelon.reduced.get(row, f)).count() % 2 == 1;
            c.set(p, parity);
        }
        Ok(c)
    }
}

pub fn systematic_encode(h: &BitMatrix, message: &BitVec) -> Result<BitVec> {
    Encoder::new(h).encode(message)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepairTrace {
    pub erased: usize,
    pub true_value: bool,
    /// For each recovering set, the helpers read and their values.
    pub recoveries: Vec<Vec<(usize, bool)>>,
    pub recovered_values: Vec<bool>,
    /// How many of the parallel recoveries read each helper.
    pub helper_load: BTreeMap<usize, usize>,
}

impl RepairTrace {
    pub fn all_correct(&self) -> bool {
        self.recovered_values.iter().all(|&v| v == self.true_value)
    }

    pub fn max_load(&self) -> usize {
        self.helper_load.values().copied().max().unwrap_or(0)
    }
}

/// The dual word used to repair `i` from `set`: the stored witness when its
/// support fits, otherwise one solved for.
fn repair_word(h: &BitMatrix, i: usize, set: &RecoverySet) -> Option<BitVec> {
    if let Some(w) = set.witness() {
        if w.len() == h.cols() && w.get(i) && w.iter_ones().all(|j| j == i || set.contains(j)) {
            return Some(w.clone());
        }
    }
    find_witness(h, i, set)
}

/// Rebuilds coordinate `erased` from each of its recovering sets.
pub fn simulate_repair(h: &BitMatrix, family: &RecoveringFamily, codeword: &BitVec, erased: usize) -> Result<RepairTrace> {
    if codeword.len() != h.cols() || !h.mul_vec(codeword).is_zero() {
        return Err(Error::InvalidCodeword);
    }
    if erased >= h.cols() || family.n() != h.cols() {
        return Err(invalid(format!("coordinate {} out of range", erased + 1)));
    }
    let mut recoveries = Vec::new();
    let mut recovered_values = Vec::new();
    let mut helper_load = BTreeMap::new();
    for (k, set) in family.sets(erased).iter().enumerate() {
        let w = repair_word(h, erased, set).ok_or_else(|| {
            invalid(format!(
                "set {} of coordinate {} does not determine it",
                k + 1,
                erased + 1
            ))
        })?;
        let reads: Vec<(usize, bool)> = w
            .iter_ones()
            .filter(|&j| j != erased)
            .map(|j| (j, codeword.get(j)))
            .collect();
        for &(j, _) in &reads {
            *helper_load.entry(j).or_insert(0) += 1;
        }
        recovered_values.push(reads.iter().fold(false, |acc, &(_, v)| acc ^ v));
        recoveries.push(reads);
    }
    Ok(RepairTrace {
        erased,
        true_value: codeword.get(erased),
        recoveries,
        recovered_values,
        helper_load,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub samples: usize,
    /// Number of single-erasure repairs attempted (`samples × n`).
    pub repairs: usize,
    /// Repairs in which every parallel recovery returned the true value.
    pub successes: usize,
    /// Count of (repair, helper) pairs by load.
    pub load_histogram: BTreeMap<usize, usize>,
    pub max_load: usize,
    /// Helper loads of each coordinate; they do not depend on the codeword.
    pub loads_by_coordinate: Vec<BTreeMap<usize, usize>>,
}

impl SweepReport {
    pub fn all_succeeded(&self) -> bool {
        self.successes == self.repairs
    }
}

/// Message `sample` of a sweep seeded with `seed`. Sample 0 is all zeros;
/// the rest are uniform bits from a ChaCha8 stream keyed by `seed`.
fn sweep_messages(k: usize, samples: usize, seed: u64) -> Vec<BitVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|s| {
            if s == 0 {
                BitVec::zeros(k)
            } else {
                BitVec::from_bools((0..k).map(|_| rng.gen::<bool>()))
            }
        })
        .collect()
}

/// Encodes `samples` messages and repairs every coordinate of each.
pub fn repair_sweep(h: &BitMatrix, family: &RecoveringFamily, samples: usize, seed: u64) -> Result<SweepReport> {
    let encoder = Encoder::new(h);
    let n = h.cols();
    let mut report = SweepReport {
        samples,
        repairs: 0,
        successes: 0,
        load_histogram: BTreeMap::new(),
        max_load: 0,
        loads_by_coordinate: Vec::new(),
    };
    for (s, message) in sweep_messages(encoder.dimension(), samples, seed).iter().enumerate() {
        let c = encoder.encode(message)?;
        for i in 0..n {
            let trace = simulate_repair(h, family, &c, i)?;
            report.repairs += 1;
            if trace.all_correct() {
                report.successes += 1;
            }
            for &load in trace.helper_load.values() {
                *report.load_histogram.entry(load).or_insert(0) += 1;
            }
            report.max_load = report.max_load.max(trace.max_load());
            if s == 0 {
                report.loads_by_coordinate.push(trace.helper_load);
            }
        }
    }
    Ok(report)
}

//! The coloured recovery graph and the random-permutation colouring.
//!
//! Vertex `i` has an edge to `m` of colour `l` whenever `m` is in the `l`-th
//! recovering set of `i`. Under a permutation `τ`, vertex `v` takes colour
//! `l` when `τ(v)` exceeds `τ(m)` for every `m` in its `l`-th set; the
//! coloured vertices can serve as check symbols, and their expected fraction
//! is at least `f(r, t, x)`.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::rational::Rational;
use crate::verifier::RecoveringFamily;

/// Largest vertex count for [`exhaustive_expected_fraction`] (`8! = 40320`).
pub const EXHAUSTIVE_MAX_N: usize = 8;

/// A coloured edge; `color` is zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub color: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryGraph {
    n: usize,
    t: usize,
    /// `targets[v][l]`: the `l`-th recovering set of `v`.
    targets: Vec<Vec<Vec<usize>>>,
}

impl RecoveryGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of colours.
    pub fn t(&self) -> usize {
        self.t
    }

    /// All edges, ordered by source, colour, target. An edge with several
    /// colours appears once per colour.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for (source, per) in self.targets.iter().enumerate() {
            for (color, ts) in per.iter().enumerate() {
                out.extend(ts.iter().map(|&target| Edge { source, target, color }));
            }
        }
        out
    }

    /// Targets of colour `color` leaving `v`.
    pub fn targets(&self, v: usize, color: usize) -> &[usize] {
        self.targets[v].get(color).map_or(&[], Vec::as_slice)
    }

    /// Out-degree counting each colour of an edge separately.
    pub fn out_degree(&self, v: usize) -> usize {
        self.targets[v].iter().map(Vec::len).sum()
    }

    /// Number of distinct out-neighbours.
    pub fn distinct_targets(&self, v: usize) -> usize {
        let mut all: Vec<usize> = self.targets[v].iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all.len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.targets.iter().flatten().flatten().filter(|&&m| m == v).count()
    }
}

/// Builds the recovery graph of `family`.
pub fn build_graph(family: &RecoveringFamily) -> RecoveryGraph {
    let targets: Vec<Vec<Vec<usize>>> = family
        .iter()
        .map(|(_, sets)| sets.iter().map(|s| s.members().to_vec()).collect())
        .collect();
    RecoveryGraph {
        n: family.n(),
        t: family.max_sets(),
        targets,
    }
}

/// A bijection on `[n]`, stored as the rank `τ(v)` of each vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_ranks(ranks: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; ranks.len()];
        for &r in &ranks {
            if r >= ranks.len() || std::mem::replace(&mut seen[r], true) {
                return Err(invalid("ranks do not form a permutation"));
            }
        }
        Ok(Permutation(ranks))
    }

    /// Uniform permutation by Fisher–Yates.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut ranks: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            ranks.swap(i, j);
        }
        Permutation(ranks)
    }

    pub fn rank(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringOutcome {
    pub permutation: Permutation,
    /// Zero-based colour of each vertex, if any.
    pub colors: Vec<Option<usize>>,
    /// The coloured vertices, ascending.
    pub colored_set: Vec<usize>,
}

impl ColoringOutcome {
    pub fn fraction(&self) -> f64 {
        self.colored_set.len() as f64 / self.colors.len() as f64
    }
}

fn color_of(graph: &RecoveryGraph, ranks: &[usize], v: usize) -> Option<usize> {
    let rv = ranks[v];
    graph.targets[v]
        .iter()
        .position(|set| set.iter().all(|&m| ranks[m] < rv))
}

fn count_colored(graph: &RecoveryGraph, ranks: &[usize]) -> usize {
    (0..graph.n).filter(|&v| color_of(graph, ranks, v).is_some()).count()
}

/// Colours each vertex with the smallest admissible colour.
pub fn color_vertices(graph: &RecoveryGraph, permutation: &Permutation) -> ColoringOutcome {
    assert_eq!(permutation.len(), graph.n, "permutation size differs from the graph");
    let colors: Vec<Option<usize>> = (0..graph.n).map(|v| color_of(graph, permutation.ranks(), v)).collect();
    let colored_set = (0..graph.n).filter(|&v| colors[v].is_some()).collect();
    ColoringOutcome {
        permutation: permutation.clone(),
        colors,
        colored_set,
    }
}

/// True when some vertex of `subset` has no edge of at least one colour
/// landing inside `subset`.
pub fn structural_check(graph: &RecoveryGraph, subset: &[usize]) -> bool {
    let mut inside = vec![false; graph.n];
    for &v in subset {
        inside[v] = true;
    }
    subset.iter().any(|&v| {
        (0..graph.t).any(|l| !graph.targets(v, l).iter().any(|&m| inside[m]))
    })
}

/// Runs [`structural_check`] on every nonempty subset of the coloured set.
/// Returns `(checked, passed)`.
///
/// # Panics
///
/// Panics if more than 24 vertices are coloured.
pub fn structural_sweep(graph: &RecoveryGraph, outcome: &ColoringOutcome) -> (u64, u64) {
    let u = &outcome.colored_set;
    assert!(u.len() <= 24, "subset sweep over {} vertices is too large", u.len());
    let mut passed = 0;
    let total = (1u64 << u.len()) - 1;
    let mut subset = Vec::with_capacity(u.len());
    for mask in 1..=total {
        subset.clear();
        subset.extend(u.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &v)| v));
        if structural_check(graph, &subset) {
            passed += 1;
        }
    }
    (total, passed)
}

/// True when the edges leaving each coloured vertex in its own colour, and
/// landing on coloured vertices, form no cycle.
pub fn same_color_walks_acyclic(graph: &RecoveryGraph, outcome: &ColoringOutcome) -> bool {
    let n = graph.n;
    let mut indeg = vec![0usize; n];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in &outcome.colored_set {
        let color = outcome.colors[v].expect("coloured vertex has a colour");
        for &m in graph.targets(v, color) {
            if outcome.colors[m].is_some() {
                adj[v].push(m);
                indeg[m] += 1;
            }
        }
    }
    let mut stack: Vec<usize> = outcome.colored_set.iter().copied().filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = stack.pop() {
        removed += 1;
        for &m in &adj[v] {
            indeg[m] -= 1;
            if indeg[m] == 0 {
                stack.push(m);
            }
        }
    }
    removed == outcome.colored_set.len()
}

/// The permutation used by trial `trial` of a run seeded with `seed`:
/// ChaCha8 keyed by `seed`, stream `trial`, then Fisher–Yates.
pub fn trial_permutation(n: usize, seed: u64, trial: u64) -> Permutation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    Permutation::random(n, &mut rng)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloSummary {
    pub trials: u64,
    /// Mean of `|U| / n`.
    pub mean: f64,
    pub stderr: f64,
    /// Trials whose same-colour walks were acyclic.
    pub acyclic_trials: u64,
}

/// Samples `trials` permutations and summarises the coloured fraction.
///
/// Each trial draws from its own stream, so the result does not depend on
/// how trials are scheduled.
pub fn monte_carlo(graph: &RecoveryGraph, trials: u64, seed: u64) -> MonteCarloSummary {
    assert!(trials >= 1, "need at least one trial");
    let per_trial: Vec<(usize, bool)> = (0..trials)
        .into_par_iter()
        .map(|k| {
            let perm = trial_permutation(graph.n, seed, k);
            let outcome = color_vertices(graph, &perm);
            (outcome.colored_set.len(), same_color_walks_acyclic(graph, &outcome))
        })
        .collect();
    let n = graph.n as f64;
    let fractions: Vec<f64> = per_trial.iter().map(|&(c, _)| c as f64 / n).collect();
    let mean = fractions.iter().sum::<f64>() / trials as f64;
    let stderr = if trials > 1 {
        let var = fractions.iter().map(|f| (f - mean) * (f - mean)).sum::<f64>() / (trials - 1) as f64;
        (var / trials as f64).sqrt()
    } else {
        0.0
    };
    MonteCarloSummary {
        trials,
        mean,
        stderr,
        acyclic_trials: per_trial.iter().filter(|p| p.1).count() as u64,
    }
}

/// `(mean, stderr)` of the coloured fraction over seeded random permutations.
pub fn monte_carlo_colored_fraction(graph: &RecoveryGraph, trials: u64, seed: u64) -> (f64, f64) {
    let s = monte_carlo(graph, trials, seed);
    (s.mean, s.stderr)
}

/// Exact expectation of `|U| / n` over all `n!` permutations.
pub fn exhaustive_expected_fraction(graph: &RecoveryGraph) -> Result<Rational> {
    let n = graph.n;
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::DimensionTooLarge {
            dim: n,
            cap: EXHAUSTIVE_MAX_N,
        });
    }
    if n == 0 {
        return Err(invalid("graph has no vertices"));
    }
    // Heap's algorithm over the rank vector.
    let mut ranks: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut total = count_colored(graph, &ranks) as u64;
    let mut perms: u64 = 1;
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                ranks.swap(0, i);
            } else {
                ranks.swap(c[i], i);
            }
            total += count_colored(graph, &ranks) as u64;
            perms += 1;
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(Rational::new(BigInt::from(total), BigInt::from(perms * n as u64)))
}

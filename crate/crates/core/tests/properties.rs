mod common;

use common::{min_dependent_columns, min_union_size, pascal, printed_h12};
use lrcx::bounds::{n_lower, n_upper, rate_product, rate_upper};
use lrcx::gf2::{enumerate_codewords, min_distance, min_distance_capped, BitMatrix, BitVec, Distance};
use lrcx::rational::{from_u64, ratio, Rational};
use lrcx::recovery_graph::{build_graph, color_vertices, same_color_walks_acyclic, trial_permutation};
use lrcx::repair_sim::{repair_sweep, Encoder};
use lrcx::verifier::{discover_family, verify_family, RecoverySet, SearchMode};
use lrcx::wzl::{build_wzl, build_wzl_with, check_recursion, Convention};
use lrcx::xlrc::{build_xlrc_with, canonical_family, closed_form_rate, map_params, BuildOptions};
use lrcx::RecoveringFamily;
use num_traits::One;
use proptest::prelude::*;

fn matrix_strategy() -> impl Strategy<Value = BitMatrix> {
    (1usize..8, 1usize..14).prop_flat_map(|(rows, cols)| {
        prop::collection::vec(any::<bool>(), rows * cols).prop_map(move |bits| {
            let mut m = BitMatrix::zeros(rows, cols);
            for (k, b) in bits.into_iter().enumerate() {
                m.set(k / cols, k % cols, b);
            }
            m
        })
    })
}

proptest! {
    #[test]
    fn rank_plus_nullity_is_cols(h in matrix_strategy()) {
        let basis = h.nullspace_basis();
        prop_assert_eq!(h.rank() + basis.rows(), h.cols());
        for v in basis.row_vecs() {
            prop_assert!(h.mul_vec(&v).is_zero());
        }
        prop_assert!(h.rank() <= h.rows().min(h.cols()));
    }

    #[test]
    fn kronecker_with_ones_repeats_columns(h in matrix_strategy(), x in 0usize..4) {
        let k = h.kronecker(&BitMatrix::ones(1, x + 1));
        prop_assert_eq!(k.cols(), h.cols() * (x + 1));
        for j in 0..k.cols() {
            prop_assert_eq!(k.column(j), h.column(j / (x + 1)));
        }
        prop_assert_eq!(k.rank(), h.rank());
    }

    #[test]
    fn distance_matches_column_search(h in matrix_strategy()) {
        let d = min_distance(&h).unwrap();
        let oracle = min_dependent_columns(&h, 4);
        match d {
            Distance::Infinite => prop_assert_eq!(oracle, None),
            Distance::Finite(w) if w <= 4 => prop_assert_eq!(oracle, Some(w)),
            Distance::Finite(_) => prop_assert_eq!(oracle, None),
        }
    }

    #[test]
    fn codewords_form_a_linear_code(h in matrix_strategy()) {
        let code = enumerate_codewords(&h, 14).unwrap();
        prop_assert_eq!(code.len(), 1usize << (h.cols() - h.rank()));
        prop_assert!(code.contains(&BitVec::zeros(h.cols())));
        for a in code.words.iter().take(8) {
            for b in &code.words {
                let mut s = a.clone();
                s.xor_assign(b);
                prop_assert!(code.contains(&s));
            }
        }
    }

    #[test]
    fn solve_returns_solutions(h in matrix_strategy(), seed in any::<u64>()) {
        let mut x = BitVec::zeros(h.cols());
        for j in 0..h.cols() {
            if seed >> (j % 64) & 1 == 1 {
                x.set(j, true);
            }
        }
        let b = h.mul_vec(&x);
        let sol = h.solve(&b).expect("consistent by construction");
        prop_assert_eq!(h.mul_vec(&sol), b);
    }

    #[test]
    fn encoder_is_linear_and_injective(h in matrix_strategy(), a in any::<u32>(), b in any::<u32>()) {
        let enc = Encoder::new(&h);
        let k = enc.dimension();
        let msg = |bits: u32| BitVec::from_bools((0..k).map(|i| bits >> (i % 32) & 1 == 1));
        let (ma, mb) = (msg(a), msg(b));
        let (ca, cb) = (enc.encode(&ma).unwrap(), enc.encode(&mb).unwrap());
        prop_assert!(h.mul_vec(&ca).is_zero());
        let mut sum_m = ma.clone();
        sum_m.xor_assign(&mb);
        let mut sum_c = ca.clone();
        sum_c.xor_assign(&cb);
        prop_assert_eq!(enc.encode(&sum_m).unwrap(), sum_c);
        prop_assert_eq!(ma == mb, ca == cb);
    }

    #[test]
    fn verification_is_monotone(r_tilde in 1usize..4, t_tilde in 1usize..3, x in 0usize..3, dr in 0usize..3, dx in 0usize..3) {
        let code = build_xlrc_with(r_tilde, t_tilde, x, BuildOptions { distance_cap: None, ..Default::default() }).unwrap();
        let fam = canonical_family(&code);
        let p = &code.params;
        prop_assert!(verify_family(&code.h, &fam, p.r, p.t, p.x, false).ok);
        prop_assert!(verify_family(&code.h, &fam, p.r + dr, p.t, p.x + dx, false).ok);
    }

    #[test]
    fn coloring_respects_ranks(seed in any::<u64>()) {
        let code = build_xlrc_with(2, 2, 1, BuildOptions { distance_cap: None, ..Default::default() }).unwrap();
        let fam = canonical_family(&code);
        let g = build_graph(&fam);
        let perm = trial_permutation(g.n(), seed, 0);
        let out = color_vertices(&g, &perm);
        for v in 0..g.n() {
            if let Some(c) = out.colors[v] {
                prop_assert!(fam.sets(v)[c].members().iter().all(|&m| perm.rank(m) < perm.rank(v)));
                prop_assert!((0..c).all(|e| fam.sets(v)[e].members().iter().any(|&m| perm.rank(m) > perm.rank(v))));
            } else {
                for s in fam.sets(v) {
                    prop_assert!(s.members().iter().any(|&m| perm.rank(m) > perm.rank(v)));
                }
            }
        }
        prop_assert!(same_color_walks_acyclic(&g, &out));
    }
}

#[test]
fn wzl_invariants_over_grid() {
    for m in 2..=9 {
        for t in 1..m {
            let r = m - t;
            for convention in [Convention::Incidence, Convention::Complement] {
                let code = build_wzl_with(m, t, convention).unwrap();
                let h = &code.h;
                assert_eq!(h.cols() as u64, pascal(m, t));
                assert_eq!(h.rows() as u64, pascal(m, t - 1));
                let rank = h.rank() as u64;
                assert_eq!(rank, pascal(m - 1, t - 1), "rank of H({m},{t})");
                let k = h.cols() as u64 - rank;
                assert_eq!(k, pascal(m - 1, t));
                assert_eq!(from_u64(k) / from_u64(h.cols() as u64), ratio(r as i64, m as i64));
                assert!((0..h.rows()).all(|i| h.row_weight(i) == r + 1));
                assert!((0..h.cols()).all(|j| h.col_weight(j) == t));
                if h.cols() <= 21 {
                    assert_eq!(min_distance(h).unwrap(), Distance::Finite(t + 1), "d of H({m},{t})");
                }
                let fam = lrcx::xlrc::rows_family(h);
                let rep = verify_family(h, &fam, r, t, 0, false);
                assert!(rep.ok, "H({m},{t}) {convention:?}: {:?}", rep.failures.first());
            }
            if t >= 2 {
                assert!(check_recursion(m, t).unwrap());
            }
        }
    }
}

#[test]
fn incidence_rule_holds_entrywise() {
    for (m, t) in [(4, 2), (5, 3), (6, 2), (6, 4)] {
        let code = build_wzl(m, t).unwrap();
        for (i, e) in code.row_labels.iter().enumerate() {
            for (j, f) in code.col_labels.iter().enumerate() {
                assert_eq!(code.h.get(i, j), e.is_subset_of(f));
            }
        }
        assert!(code.col_labels.windows(2).all(|w| w[0] < w[1]));
        assert!(code.row_labels.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn h52_distance_by_brute_force() {
    let h = build_wzl(5, 2).unwrap().h;
    let words = enumerate_codewords(&h, 25).unwrap();
    assert_eq!(words.len(), 64);
    let min = words.words.iter().filter(|w| !w.is_zero()).map(BitVec::weight).min();
    assert_eq!(min, Some(3));
    assert_eq!(min_dependent_columns(&h, 4), Some(3));
}

#[test]
fn construction_rates_match_matrix_ranks() {
    for r_tilde in 1..=7 {
        for t_tilde in 1..=4 {
            for x in 0..=3 {
                let p = map_params(r_tilde, t_tilde, x).unwrap();
                let code = build_xlrc_with(r_tilde, t_tilde, x, BuildOptions { distance_cap: None, ..Default::default() }).unwrap();
                let rank = code.h.rank();
                assert_eq!(rank, code.base.h.rank());
                let from_matrix = from_u64((code.h.cols() - rank) as u64) / from_u64(code.h.cols() as u64);
                assert_eq!(p.rate, from_matrix);
                assert_eq!(p.rate, closed_form_rate(p.r, p.t, p.x));
                let via_seed = Rational::one()
                    - Rational::new(
                        (t_tilde as u64).into(),
                        (((r_tilde + t_tilde) * (x + 1)) as u64).into(),
                    );
                assert_eq!(p.rate, via_seed);
                assert!(p.rate <= rate_upper(p.r, p.t, p.x).unwrap(), "({r_tilde},{t_tilde},{x})");
            }
        }
    }
}

#[test]
fn union_bound_matches_exhaustive_minimum() {
    for r in 1..=6 {
        for j in 1..=3 {
            for x in 0..=2.min(r) {
                let formula = n_lower(r, j, x).unwrap();
                assert_eq!(formula, min_union_size(r, j, x), "r={r} j={j} x={x}");
                assert!(formula <= n_upper(r, j, x));
                assert_eq!(formula == n_upper(r, j, x), x == 0 || j == 1, "r={r} j={j} x={x}");
            }
        }
    }
}

#[test]
fn rate_bound_grows_with_x() {
    for (r, t) in lrcx::bounds::TABLE1_ROWS {
        let vals: Vec<Rational> = (0..=3).map(|x| rate_upper(r, t, x).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
    }
    for r in 1..=16 {
        for t in 1..=6 {
            assert_eq!(rate_upper(r, t, 0).unwrap(), rate_product(r, t).unwrap());
        }
    }
}

#[test]
fn structural_and_deep_recoverability_agree() {
    // Random single sets, checked both ways.
    let h = printed_h12();
    let mut agree = 0;
    for mask in 1u32..(1 << 11) {
        let members: Vec<usize> = (0..11).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        if members.len() > 6 {
            continue;
        }
        let set = RecoverySet::new(members.clone());
        let mut sets = vec![Vec::new(); 12];
        sets[0] = vec![set];
        let fam = RecoveringFamily::new(12, sets);
        let rep = verify_family(&h, &fam, 11, 1, 0, true);
        let at0: Vec<_> = rep.failures.iter().filter(|f| f.coordinate == Some(0)).map(|f| f.reason.clone()).collect();
        let structural = !at0.iter().any(|r| matches!(r, lrcx::verifier::FailureReason::NotRecoverable { .. }));
        let deep = !at0.iter().any(|r| matches!(r, lrcx::verifier::FailureReason::NotSeparating { .. }));
        assert_eq!(structural, deep, "set {members:?}");
        agree += 1;
    }
    assert!(agree > 500);
}

#[test]
fn discovered_families_round_trip() {
    for (r_tilde, t_tilde, x) in [(1, 2, 1), (2, 2, 2), (3, 1, 1), (1, 3, 2), (2, 3, 0)] {
        let code = build_xlrc_with(r_tilde, t_tilde, x, BuildOptions { distance_cap: Some(20), ..Default::default() }).unwrap();
        let p = &code.params;
        for mode in [SearchMode::RowsOnly, SearchMode::BoundedCombos, SearchMode::DualEnum] {
            let fam = discover_family(&code.h, p.r, p.t, p.x, mode).unwrap().found().expect("family exists");
            let rep = verify_family(&code.h, &fam, p.r, p.t, p.x, true);
            assert!(rep.ok, "{r_tilde},{t_tilde},{x} {mode:?}: {:?}", rep.failures.first());
        }
    }
}

#[test]
fn repair_loads_and_recovery() {
    for (r_tilde, t_tilde, x) in [(2, 2, 0), (3, 2, 1), (1, 3, 2), (2, 1, 3)] {
        let code = build_xlrc_with(r_tilde, t_tilde, x, BuildOptions { distance_cap: None, ..Default::default() }).unwrap();
        let fam = canonical_family(&code);
        let rep = repair_sweep(&code.h, &fam, 20, 77).unwrap();
        assert!(rep.all_succeeded());
        for (i, loads) in rep.loads_by_coordinate.iter().enumerate() {
            let siblings = code.siblings(i);
            for (&helper, &load) in loads {
                let expect = if siblings.contains(&helper) { t_tilde } else { 1 };
                assert_eq!(load, expect);
            }
        }
    }
}

#[test]
fn distance_cap_applies() {
    let h = build_wzl(8, 3).unwrap().h;
    assert!(min_distance_capped(&h, 10).is_err());
}

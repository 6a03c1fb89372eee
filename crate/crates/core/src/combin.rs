//! Small combinatorial helpers: binomials and lexicographic subset listing.

/// `n choose k`, exact; zero when `k > n`.
pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// All `k`-subsets of `{1, …, m}` as ascending sequences, in lexicographic
/// order.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k > m {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // rightmost position that can still advance
        let Some(pos) = (0..k).rev().find(|&p| cur[p] < m - (k - 1 - p)) else {
            break;
        };
        cur[pos] += 1;
        for q in pos + 1..k {
            cur[q] = cur[q - 1] + 1;
        }
    }
    out
}

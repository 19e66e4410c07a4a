//! Comparisons against brute-force oracles that share no code with the library.

use oti_core::models::{
    costandard_model, schur_module, schur_module_with, semistandard_tableaux, sl2_costandard,
    weyl_dimension, SchurRoute,
};
use oti_core::nilmod::{graded_decompose, jordan_type, phi};
use oti_core::ver::{fuse, VerObject, VerParams};
use oti_core::weyl::{alcove_position, AlcovePosition, RootDatum, Weight};

fn rank_mod(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..rows.len()).find(|&r| rows[r][c] % p != 0) else { continue };
        rows.swap(rank, r);
        let inv = (1..p).find(|&x| x * rows[rank][c] % p == 1).unwrap();
        for r2 in rank + 1..rows.len() {
            let f = rows[r2][c] * inv % p;
            for k in c..cols {
                rows[r2][k] = (rows[r2][k] + p * p - f * rows[rank][k] % p) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![0; m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] = (out[i][j] + a[i][k] * b[k][j]) % p;
            }
        }
    }
    out
}

/// Jordan block counts of a nilpotent matrix from ranks of its powers.
fn block_sizes(eta: &[Vec<u64>], p: u64) -> Vec<usize> {
    let n = eta.len();
    let mut ranks = vec![n];
    let mut power: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    for _ in 0..=n {
        power = mat_mul(&power, eta, p);
        ranks.push(rank_mod(power.clone(), p));
    }
    ranks.push(0);
    let mut sizes = Vec::new();
    for k in 1..ranks.len() - 1 {
        for _ in 0..(ranks[k - 1] + ranks[k + 1] - 2 * ranks[k]) {
            sizes.push(k);
        }
    }
    sizes
}

/// `J_a ⊗ 1 + 1 ⊗ J_b`.
fn kronecker_sum(a: usize, b: usize, p: u64) -> Vec<Vec<u64>> {
    let n = a * b;
    let mut m = vec![vec![0; n]; n];
    for i in 0..a {
        for k in 0..b {
            let col = i * b + k;
            if i + 1 < a {
                m[(i + 1) * b + k][col] = (m[(i + 1) * b + k][col] + 1) % p;
            }
            if k + 1 < b {
                m[i * b + k + 1][col] = (m[i * b + k + 1][col] + 1) % p;
            }
        }
    }
    m
}

#[test]
fn fusion_matches_kronecker_oracle() {
    for p in [3u64, 5, 7] {
        let params = VerParams::new(p).unwrap();
        for i in 0..p as usize - 1 {
            for j in 0..p as usize - 1 {
                let mut expected = VerObject::zero(params);
                for s in block_sizes(&kronecker_sum(i + 1, j + 1, p), p) {
                    if s < p as usize {
                        expected.add_simple(s - 1, 1).unwrap();
                    }
                }
                let got =
                    fuse(&VerObject::simple(params, i).unwrap(), &VerObject::simple(params, j).unwrap()).unwrap();
                assert_eq!(got, expected, "p={p} L{i} L{j}");
            }
        }
    }
}

#[test]
fn jordan_types_match_rank_oracle_on_models() {
    for p in [3u64, 5, 7] {
        for n in 0..=3 * p as usize {
            let m = sl2_costandard(n, p).unwrap();
            let mut sizes = block_sizes(&m.eta().to_rows(), p);
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            assert_eq!(jordan_type(&m.ungraded()).partition, sizes, "n={n} p={p}");
        }
    }
}

fn partitions(total: usize, max_part: usize, max_len: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    if max_len == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(total)).rev() {
        for mut rest in partitions(total - first, first, max_len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every filling of the diagram with `1..=n`, kept if rows weakly and columns
/// strictly increase.
fn ssyt_brute_force(lambda: &[usize], n: usize) -> usize {
    let cells: Vec<(usize, usize)> =
        lambda.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let total = n.pow(cells.len() as u32);
    (0..total)
        .filter(|&code| {
            let mut x = code;
            let mut t: Vec<Vec<usize>> = lambda.iter().map(|&l| vec![0; l]).collect();
            for &(r, c) in &cells {
                t[r][c] = x % n + 1;
                x /= n;
            }
            let rows_ok = t.iter().all(|row| row.windows(2).all(|w| w[0] <= w[1]));
            let cols_ok = (1..t.len()).all(|r| (0..t[r].len()).all(|c| t[r - 1][c] < t[r][c]));
            rows_ok && cols_ok
        })
        .count()
}

#[test]
fn schur_image_rank_counts_tableaux() {
    for n in 1..=3 {
        for size in 0..=6 {
            for lambda in partitions(size, size, n) {
                let count = ssyt_brute_force(&lambda, n);
                assert_eq!(semistandard_tableaux(&lambda, n).len(), count, "{lambda:?}");
                for p in [3u64, 5] {
                    let m = schur_module(n, &lambda, p).unwrap();
                    assert_eq!(m.dim(), count, "n={n} λ={lambda:?} p={p}");
                }
            }
        }
    }
}

#[test]
fn weyl_dimension_counts_tableaux() {
    let a2 = RootDatum::parse("A2").unwrap();
    let a3 = RootDatum::parse("A3").unwrap();
    for a in 0..5 {
        for b in 0..5 {
            let lambda = [a + b, b];
            let parts: Vec<usize> = lambda.iter().copied().filter(|&x| x > 0).collect();
            let w = Weight(vec![a as i64, b as i64]);
            assert_eq!(weyl_dimension(&a2, &w), ssyt_brute_force(&parts, 3) as u128);
        }
    }
    assert_eq!(weyl_dimension(&a3, &Weight(vec![1, 0, 1])), 15);
    assert_eq!(weyl_dimension(&a3, &Weight(vec![0, 2, 0])), 20);
}

#[test]
fn both_schur_routes_give_the_same_model() {
    for lambda in partitions(5, 5, 3) {
        for p in [3u64, 5, 7] {
            let full = schur_module_with(3, &lambda, p, SchurRoute::Full).unwrap();
            let span = schur_module_with(3, &lambda, p, SchurRoute::StandardSpan).unwrap();
            assert_eq!(full, span, "λ={lambda:?} p={p}");
        }
    }
    for lambda in partitions(4, 4, 4) {
        let full = schur_module_with(4, &lambda, 5, SchurRoute::Full).unwrap();
        let span = schur_module_with(4, &lambda, 5, SchurRoute::StandardSpan).unwrap();
        assert_eq!(graded_decompose(&full), graded_decompose(&span), "λ={lambda:?}");
    }
}

/// For `λ` in the fundamental alcove `∇_λ` is simple and its dimension is prime to `p`.
#[test]
fn fundamental_alcove_dimensions_are_prime_to_p() {
    for (t, p) in [("A1", 5u64), ("A1", 7), ("A2", 5), ("A2", 7), ("A3", 5)] {
        let rd = RootDatum::parse(t).unwrap();
        let r = rd.rank();
        let mut stack = vec![Weight::zero(r)];
        let mut seen = std::collections::BTreeSet::new();
        while let Some(w) = stack.pop() {
            if !seen.insert(w.clone()) || alcove_position(&rd, &w, p).unwrap() != AlcovePosition::Interior {
                continue;
            }
            let m = costandard_model(&rd, &w, p).unwrap();
            assert_eq!(m.dim() as u128, weyl_dimension(&rd, &w));
            assert_ne!(m.dim() as u64 % p, 0, "{t} {w} p={p}");
            assert!(!phi(&m.ungraded()).is_zero());
            for i in 0..r {
                let mut next = w.clone();
                next.0[i] += 1;
                stack.push(next);
            }
        }
    }
}

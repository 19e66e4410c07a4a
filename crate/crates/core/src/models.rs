//! Explicit matrix models of costandard modules restricted to the principal
//! nilpotent and graded by `2ρ∨`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{check_odd_prime, Error, Result};
use crate::fp::FpMatrix;
use crate::nilmod::{graded_decompose, jordan_type, phi, stable_form, GradedNilModule};
use crate::stable::{support, to_graded_super, GradedSuperSpace, StableObject};
use crate::ver::VerObject;
use crate::weyl::{Family, RootDatum, Weight};

/// Bound on `Π_j C(n, λ'_j)`, the dimension of the exterior-power source of the box map.
pub const MAX_SCHUR_SOURCE_DIM: u128 = 10_000;

/// Bound on the number of semistandard tableaux for the spanning-set route.
pub const MAX_SCHUR_MODEL_DIM: u128 = 1_000;

/// `∇_n` for `SL_2`: `Sym^n` of the natural module in the basis
/// `x^{n-k} y^k` (weight `n - 2k`), with `η` the lowering operator `x ↦ y`.
pub fn sl2_costandard(n: usize, p: u64) -> Result<GradedNilModule> {
    check_odd_prime(p)?;
    let dim = n + 1;
    let mut eta = FpMatrix::zeros(p, dim, dim);
    for k in 0..n {
        eta.set(k + 1, k, (n - k) as u64 % p);
    }
    let weights = (0..dim as i64).map(|k| n as i64 - 2 * k).collect();
    GradedNilModule::new(weights, eta)
}

/// How the image of the box map is spanned.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchurRoute {
    /// Images of every column-strict filling, i.e. the whole exterior-power source.
    Full,
    /// Images of the semistandard fillings only. These span the same image,
    /// since straightening holds over `ℤ`.
    StandardSpan,
}

/// `λ'`: column lengths of the Young diagram.
pub fn conjugate_partition(lambda: &[usize]) -> Vec<usize> {
    let width = lambda.first().copied().unwrap_or(0);
    (0..width).map(|j| lambda.iter().filter(|&&r| r > j).count()).collect()
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// `Π_j C(n, λ'_j)`.
pub fn schur_source_dim(n: usize, lambda: &[usize]) -> u128 {
    conjugate_partition(lambda).iter().map(|&c| binomial(n, c)).product()
}

/// Highest weight of `SL_n` in fundamental-weight coordinates: `λ_i − λ_{i+1}`.
pub fn partition_to_weight(n: usize, lambda: &[usize]) -> Weight {
    let part = |i: usize| lambda.get(i).copied().unwrap_or(0) as i64;
    Weight((0..n - 1).map(|i| part(i) - part(i + 1)).collect())
}

/// Inverse of [`partition_to_weight`], normalised to `λ_n = 0`.
pub fn weight_to_partition(w: &Weight) -> Result<Vec<usize>> {
    if !w.is_dominant() {
        return Err(Error::Domain(format!("weight {w} is not dominant")));
    }
    let c = w.coords();
    let mut parts: Vec<usize> = (0..c.len()).map(|i| c[i..].iter().sum::<i64>() as usize).collect();
    while parts.last() == Some(&0) {
        parts.pop();
    }
    Ok(parts)
}

fn validate_partition(n: usize, lambda: &[usize]) -> Result<()> {
    if !(1..=4).contains(&n) {
        return Err(Error::Parameter(format!("Schur models cover SL_n for 1 <= n <= 4, got n = {n}")));
    }
    if lambda.windows(2).any(|w| w[0] < w[1]) || lambda.contains(&0) {
        return Err(Error::Input(format!("{lambda:?} is not a partition with positive parts")));
    }
    if lambda.len() > n {
        return Err(Error::Domain(format!("partition {lambda:?} has more than {n} parts")));
    }
    Ok(())
}

/// Semistandard tableaux of shape `λ` with entries in `0..n`, as rows.
pub fn semistandard_tableaux(lambda: &[usize], n: usize) -> Vec<Vec<Vec<usize>>> {
    fn fill(
        lambda: &[usize],
        n: usize,
        cells: &[(usize, usize)],
        pos: usize,
        t: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let Some(&(r, c)) = cells.get(pos) else {
            out.push(t.clone());
            return;
        };
        let lo_row = if c > 0 { t[r][c - 1] } else { 0 };
        let lo_col = if r > 0 { t[r - 1][c] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..n {
            t[r][c] = v;
            fill(lambda, n, cells, pos + 1, t, out);
        }
    }
    let cells: Vec<(usize, usize)> =
        lambda.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r, c))).collect();
    let mut t: Vec<Vec<usize>> = lambda.iter().map(|&len| vec![0; len]).collect();
    let mut out = Vec::new();
    fill(lambda, n, &cells, 0, &mut t, &mut out);
    out
}

/// Exponent vector of a monomial in `S^{λ_1}V ⊗ ... ⊗ S^{λ_r}V`; entry
/// `t·n + i` is the exponent of `x_i` in tensor factor `t`.
type Monomial = Vec<u16>;
type Poly = BTreeMap<Monomial, u64>;

struct Ring {
    p: u64,
    n: usize,
    rows: usize,
}

impl Ring {
    fn add_term(&self, poly: &mut Poly, mono: Monomial, coeff: u64) {
        let c = coeff % self.p;
        if c == 0 {
            return;
        }
        match poly.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = (*e.get() + c) % self.p;
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (ma, &ca) in a {
            for (mb, &cb) in b {
                let mono = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                self.add_term(&mut out, mono, ca * cb);
            }
        }
        out
    }

    /// `Σ_σ sgn σ Π_t x^{(t)}_{i_σ(t)}` for a column with entries `col`.
    fn column(&self, col: &[usize]) -> Poly {
        let mut out = Poly::new();
        for (perm, sign) in permutations(col.len()) {
            let mut mono = vec![0u16; self.rows * self.n];
            for (t, &k) in perm.iter().enumerate() {
                mono[t * self.n + col[k]] += 1;
            }
            self.add_term(&mut out, mono, if sign > 0 { 1 } else { self.p - 1 });
        }
        out
    }

    /// Image of the column-strict filling given column by column.
    fn bideterminant(&self, columns: &[Vec<usize>]) -> Poly {
        let mut acc = Poly::from([(vec![0u16; self.rows * self.n], 1)]);
        for col in columns {
            acc = self.mul(&acc, &self.column(col));
        }
        acc
    }

    /// The derivation `x_i ↦ x_{i+1}` applied in every tensor factor.
    fn lower(&self, poly: &Poly) -> Poly {
        let mut out = Poly::new();
        for (mono, &c) in poly {
            for t in 0..self.rows {
                for i in 0..self.n - 1 {
                    let e = mono[t * self.n + i];
                    if e == 0 {
                        continue;
                    }
                    let mut next = mono.clone();
                    next[t * self.n + i] -= 1;
                    next[t * self.n + i + 1] += 1;
                    self.add_term(&mut out, next, c * (e as u64 % self.p));
                }
            }
        }
        out
    }

    fn content(&self, mono: &Monomial) -> Vec<u16> {
        (0..self.n).map(|i| (0..self.rows).map(|t| mono[t * self.n + i]).sum()).collect()
    }

    /// `Σ_i c_i (n + 1 − 2i)` with `i` one-based.
    fn weight(&self, content: &[u16]) -> i64 {
        let n = self.n as i64;
        content.iter().enumerate().map(|(i, &c)| c as i64 * (n - 1 - 2 * i as i64)).sum()
    }
}

/// All permutations of `0..k` with their signs.
fn permutations(k: usize) -> Vec<(Vec<usize>, i8)> {
    if k == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (perm, sign) in permutations(k - 1) {
        for pos in 0..=perm.len() {
            let mut next = perm.clone();
            next.insert(pos, k - 1);
            let moved = (perm.len() - pos) as i8;
            out.push((next, if moved % 2 == 0 { sign } else { -sign }));
        }
    }
    out
}

fn increasing_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in increasing_subsets(n, k - 1) {
            if rest.first().is_none_or(|&r| r > first) {
                let mut v = vec![first];
                v.extend(rest);
                out.push(v);
            }
        }
    }
    out
}

fn cartesian(choices: &[Vec<Vec<usize>>]) -> Vec<Vec<Vec<usize>>> {
    choices.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.push(o.clone());
                    v
                })
            })
            .collect()
    })
}

/// One weight space of the image, as a reduced echelon basis over its monomials.
struct Piece {
    weight: i64,
    basis: Vec<Poly>,
    pivots: Vec<Monomial>,
}

fn reduce_piece(p: u64, weight: i64, gens: &[Poly]) -> Piece {
    let mut monos: Vec<Monomial> = gens.iter().flat_map(|g| g.keys().cloned()).collect();
    monos.sort_unstable();
    monos.dedup();
    // leading monomials first, so pivots are the largest monomials
    monos.reverse();
    let col_of: BTreeMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = FpMatrix::zeros(p, gens.len(), monos.len());
    for (r, g) in gens.iter().enumerate() {
        for (m, &c) in g {
            mat.set(r, col_of[m], c);
        }
    }
    let pivot_cols = mat.rref_in_place();
    let basis = (0..pivot_cols.len())
        .map(|r| {
            (0..monos.len())
                .filter(|&c| mat.get(r, c) != 0)
                .map(|c| (monos[c].clone(), mat.get(r, c)))
                .collect()
        })
        .collect();
    let pivots = pivot_cols.iter().map(|&c| monos[c].clone()).collect();
    Piece { weight, basis, pivots }
}

/// `∇_λ` for `SL_n` as the image of
/// `Λ^{λ'_1}V ⊗ ... ⊗ Λ^{λ'_s}V → S^{λ_1}V ⊗ ... ⊗ S^{λ_r}V`
/// (comultiply down columns, multiply along rows) with the principal
/// lowering nilpotent `Σ_i E_{i+1,i}`.
pub fn schur_module(n: usize, lambda: &[usize], p: u64) -> Result<GradedNilModule> {
    schur_module_with(n, lambda, p, SchurRoute::Full)
}

pub fn schur_module_with(n: usize, lambda: &[usize], p: u64, route: SchurRoute) -> Result<GradedNilModule> {
    check_odd_prime(p)?;
    validate_partition(n, lambda)?;
    if (p as usize) < n {
        return Err(Error::Parameter(format!(
            "the principal nilpotent of SL_{n} has order {n} > p = {p}"
        )));
    }
    let ring = Ring { p, n, rows: lambda.len() };
    let fillings: Vec<Vec<Vec<usize>>> = match route {
        SchurRoute::Full => {
            let source = schur_source_dim(n, lambda);
            if source > MAX_SCHUR_SOURCE_DIM {
                return Err(Error::Capacity(format!(
                    "exterior-power source has dimension {source} > {MAX_SCHUR_SOURCE_DIM}"
                )));
            }
            let choices: Vec<_> =
                conjugate_partition(lambda).iter().map(|&c| increasing_subsets(n, c)).collect();
            cartesian(&choices)
        }
        SchurRoute::StandardSpan => {
            let tableaux = semistandard_tableaux(lambda, n);
            if tableaux.len() as u128 > MAX_SCHUR_MODEL_DIM {
                return Err(Error::Capacity(format!(
                    "{} semistandard tableaux > {MAX_SCHUR_MODEL_DIM}",
                    tableaux.len()
                )));
            }
            let cols = conjugate_partition(lambda);
            tableaux
                .iter()
                .map(|t| (0..cols.len()).map(|j| (0..cols[j]).map(|r| t[r][j]).collect()).collect())
                .collect()
        }
    };

    let mut by_weight: BTreeMap<i64, Vec<Poly>> = BTreeMap::new();
    for filling in &fillings {
        let poly = ring.bideterminant(filling);
        if let Some(mono) = poly.keys().next() {
            by_weight.entry(ring.weight(&ring.content(mono))).or_default().push(poly);
        }
    }
    // highest weights first
    let pieces: Vec<Piece> = by_weight
        .into_iter()
        .rev()
        .map(|(w, gens)| reduce_piece(p, w, &gens))
        .filter(|piece| !piece.basis.is_empty())
        .collect();

    let mut offset = BTreeMap::new();
    let mut weights = Vec::new();
    for piece in &pieces {
        offset.insert(piece.weight, weights.len());
        weights.extend(std::iter::repeat(piece.weight).take(piece.basis.len()));
    }
    let dim = weights.len();
    let mut eta = FpMatrix::zeros(p, dim, dim);
    for piece in &pieces {
        for (k, b) in piece.basis.iter().enumerate() {
            let col = offset[&piece.weight] + k;
            let image = ring.lower(b);
            if image.is_empty() {
                continue;
            }
            let target_weight = piece.weight - 2;
            let (Some(&base), Some(target)) =
                (offset.get(&target_weight), pieces.iter().find(|t| t.weight == target_weight))
            else {
                return Err(Error::Internal(format!("lowering left the image at weight {target_weight}")));
            };
            let coords: Vec<u64> = target.pivots.iter().map(|m| image.get(m).copied().unwrap_or(0)).collect();
            let mut rebuilt = Poly::new();
            for (j, &c) in coords.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                eta.set(base + j, col, c);
                for (m, &v) in &target.basis[j] {
                    ring.add_term(&mut rebuilt, m.clone(), c * v);
                }
            }
            if rebuilt != image {
                return Err(Error::Internal("lowering operator does not preserve the image".into()));
            }
        }
    }
    GradedNilModule::new(weights, eta)
}

/// A costandard model for `λ`: `Sym^n` in type `A1`, a Schur module in type
/// `A_{n-1}` for `n <= 4`. The full box map is used when its source fits the
/// cap, the semistandard spanning set otherwise.
pub fn costandard_model(rd: &RootDatum, lambda: &Weight, p: u64) -> Result<GradedNilModule> {
    if !lambda.is_dominant() {
        return Err(Error::Domain(format!("weight {lambda} is not dominant")));
    }
    let ct = rd.cartan_type();
    if ct.family != Family::A || ct.rank > 3 {
        return Err(Error::Capacity(format!("no explicit costandard model for type {ct}")));
    }
    if lambda.coords().len() != ct.rank {
        return Err(Error::Input(format!("weight {lambda} has the wrong rank for {ct}")));
    }
    if ct.rank == 1 {
        return sl2_costandard(lambda.coords()[0] as usize, p);
    }
    let n = ct.rank + 1;
    let parts = weight_to_partition(lambda)?;
    let route = if schur_source_dim(n, &parts) <= MAX_SCHUR_SOURCE_DIM {
        SchurRoute::Full
    } else {
        SchurRoute::StandardSpan
    };
    schur_module_with(n, &parts, p, route)
}

/// Dimension of `∇_λ` from the Weyl dimension formula.
pub fn weyl_dimension(rd: &RootDatum, lambda: &Weight) -> u128 {
    let rho = rd.rho();
    let shifted = lambda.add(&rho);
    let (mut num, mut den) = (1u128, 1u128);
    for a in rd.positive_roots() {
        num *= a.pair(&shifted) as u128;
        den *= a.pair(&rho) as u128;
    }
    num / den
}

/// `Φ_H`, `Φ^st_H` and, when defined, the graded super space of a model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelPhi {
    pub ver: VerObject,
    pub stable: StableObject,
    pub graded_super: Option<GradedSuperSpace>,
}

pub fn model_phi(m: &GradedNilModule) -> ModelPhi {
    let stable = stable_form(&graded_decompose(m));
    ModelPhi { ver: phi(&m.ungraded()), graded_super: to_graded_super(&stable).ok(), stable }
}

/// True iff exactly one Jordan block has size `< p`.
pub fn unique_small_block_check(m: &GradedNilModule) -> bool {
    let p = m.p() as usize;
    jordan_type(&m.ungraded()).partition.iter().filter(|&&k| k < p).count() == 1
}

/// One row of the support table: `n` and the support of `Φ^st(∇_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportRow {
    pub n: usize,
    pub support: Vec<i64>,
}

/// Supports of `Φ^st(∇_n)` for `SL_2`, over the extended principal block `n <= max_n`.
pub fn support_table(p: u64, max_n: usize) -> Result<Vec<SupportRow>> {
    check_odd_prime(p)?;
    let pu = p as usize;
    (0..=max_n)
        .filter(|n| n % pu == 0 || (n + 2) % pu == 0)
        .map(|n| {
            let stable = stable_form(&graded_decompose(&sl2_costandard(n, p)?));
            Ok(SupportRow { n, support: support(&stable).into_iter().collect() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilmod::{is_projective, JordanType};
    use crate::ver::VerParams;

    fn decomp(m: &GradedNilModule) -> String {
        graded_decompose(m).to_string()
    }

    #[test]
    fn sl2_examples() {
        assert_eq!(decomp(&sl2_costandard(0, 3).unwrap()), "M(0,0)");
        assert_eq!(stable_form(&graded_decompose(&sl2_costandard(3, 3).unwrap())).to_string(), "M(3,0)");
        assert_eq!(stable_form(&graded_decompose(&sl2_costandard(4, 3).unwrap())).to_string(), "M(2,1)");
        assert_eq!(jordan_type(&sl2_costandard(4, 3).unwrap().ungraded()), JordanType::new(vec![3, 2]));
    }

    #[test]
    fn model_phi_examples() {
        let v = VerParams::new(3).unwrap();
        let r = model_phi(&sl2_costandard(0, 3).unwrap());
        assert_eq!(r.ver, VerObject::unit(v));
        assert_eq!(r.stable.to_string(), "M(0,0)");
        assert_eq!(r.graded_super.unwrap().to_string(), "even @ degree 0");

        let r = model_phi(&sl2_costandard(1, 3).unwrap());
        assert_eq!(r.ver, VerObject::simple(v, 1).unwrap());
        assert_eq!(r.stable.to_string(), "M(-1,1)");
        assert_eq!(r.graded_super.unwrap().to_string(), "odd @ degree 0");

        let r = model_phi(&sl2_costandard(2, 3).unwrap());
        assert!(r.ver.is_zero() && r.stable.is_zero());
        assert!(r.graded_super.unwrap().is_zero());
    }

    #[test]
    fn small_block_examples() {
        assert!(unique_small_block_check(&sl2_costandard(4, 3).unwrap()));
        assert!(!unique_small_block_check(&sl2_costandard(2, 3).unwrap()));
        assert!(unique_small_block_check(&sl2_costandard(0, 3).unwrap()));
    }

    #[test]
    fn steinberg_is_projective() {
        for p in [3u64, 5, 7] {
            assert!(is_projective(&sl2_costandard(p as usize - 1, p).unwrap().ungraded()));
        }
    }

    #[test]
    fn schur_rank_one_rows_match_sym() {
        for p in [3u64, 5] {
            for m in 0..8 {
                let sym = sl2_costandard(m, p).unwrap();
                let lambda: Vec<usize> = if m == 0 { vec![] } else { vec![m] };
                let schur = schur_module(2, &lambda, p).unwrap();
                assert_eq!(graded_decompose(&schur), graded_decompose(&sym), "m = {m}, p = {p}");
            }
        }
    }

    #[test]
    fn exterior_square_of_three_space() {
        let m = schur_module(3, &[1, 1], 3).unwrap();
        assert_eq!(m.dim(), 3);
        assert_eq!(jordan_type(&m.ungraded()), JordanType::new(vec![3]));
        assert!(phi(&m.ungraded()).is_zero());
    }

    #[test]
    fn routes_agree() {
        for (n, lambda) in [(3, vec![2, 1]), (3, vec![3, 1]), (3, vec![2, 2]), (4, vec![2, 1]), (3, vec![4, 2])] {
            for p in [3u64, 5].into_iter().filter(|&p| p as usize >= n) {
                let full = schur_module_with(n, &lambda, p, SchurRoute::Full).unwrap();
                let span = schur_module_with(n, &lambda, p, SchurRoute::StandardSpan).unwrap();
                assert_eq!(full, span, "n = {n}, λ = {lambda:?}, p = {p}");
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = schur_module(3, &[9], 5).unwrap_err();
        assert!(matches!(err, Error::Capacity(_)));
        assert!(schur_module_with(3, &[9], 5, SchurRoute::StandardSpan).is_ok());
        assert!(matches!(schur_module(3, &[1, 1, 1, 1], 5), Err(Error::Domain(_))));
        assert!(matches!(schur_module(5, &[1], 5), Err(Error::Parameter(_))));
        assert!(matches!(schur_module(4, &[1], 3), Err(Error::Parameter(_))));
    }

    #[test]
    fn partitions_and_weights() {
        assert_eq!(conjugate_partition(&[3, 1]), vec![2, 1, 1]);
        assert_eq!(partition_to_weight(3, &[3, 1]), Weight(vec![2, 1]));
        assert_eq!(weight_to_partition(&Weight(vec![2, 1])).unwrap(), vec![3, 1]);
        assert_eq!(weight_to_partition(&Weight(vec![0, 0])).unwrap(), Vec::<usize>::new());
        assert_eq!(schur_source_dim(3, &[3, 1]), 27);
    }

    #[test]
    fn weyl_dimensions() {
        let a2 = RootDatum::parse("A2").unwrap();
        assert_eq!(weyl_dimension(&a2, &Weight(vec![1, 0])), 3);
        assert_eq!(weyl_dimension(&a2, &Weight(vec![1, 1])), 8);
        assert_eq!(weyl_dimension(&a2, &Weight(vec![2, 1])), 15);
        let m = costandard_model(&a2, &Weight(vec![2, 1]), 5).unwrap();
        assert_eq!(m.dim(), 15);
    }

    #[test]
    fn support_table_small() {
        let rows = support_table(3, 0).unwrap();
        assert_eq!(rows, vec![SupportRow { n: 0, support: vec![0] }]);
        let ns: Vec<usize> = support_table(5, 10).unwrap().iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![0, 3, 5, 8, 10]);
    }
}

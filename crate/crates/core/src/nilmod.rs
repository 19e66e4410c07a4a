//! Modules over `α_p` (a nilpotent operator `η` with `η^p = 0`) and over the
//! Capricorn group (the same data with a weight grading in which `η` has
//! degree −2).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_odd_prime, Error, Result};
use crate::fp::{FpMatrix, Subspace};
use crate::stable::StableObject;
use crate::ver::{VerObject, VerParams};

/// An `α_p`-module: a square matrix `η` over `F_p` with `η^p = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilMatrix {
    eta: FpMatrix,
}

fn check_nilpotent(eta: &FpMatrix) -> Result<()> {
    let p = eta.p();
    let n = eta.rows() as u64;
    // For p > n, `η^n = 0` is equivalent to `η^p = 0`.
    if n > 0 && !eta.pow(p.min(n)).is_zero() {
        return Err(Error::Structural(format!("operator does not satisfy eta^{p} = 0")));
    }
    Ok(())
}

impl NilMatrix {
    pub fn new(eta: FpMatrix) -> Result<Self> {
        check_odd_prime(eta.p())?;
        if eta.rows() != eta.cols() {
            return Err(Error::Input(format!(
                "operator must be square, got {}x{}",
                eta.rows(),
                eta.cols()
            )));
        }
        check_nilpotent(&eta)?;
        Ok(Self { eta })
    }

    /// The zero operator on an `n`-dimensional space.
    pub fn zero(p: u64, n: usize) -> Result<Self> {
        Self::new(FpMatrix::zeros(p, n, n))
    }

    /// A single Jordan block of size `k` (`1 <= k <= p`): `e_i ↦ e_{i+1}`.
    pub fn jordan_block(p: u64, k: usize) -> Result<Self> {
        let mut eta = FpMatrix::zeros(p, k, k);
        for i in 1..k {
            eta.set(i, i - 1, 1);
        }
        Self::new(eta)
    }

    /// Block-diagonal sum of Jordan blocks of the given sizes.
    pub fn from_partition(p: u64, parts: &[usize]) -> Result<Self> {
        parts.iter().try_fold(Self::zero(p, 0)?, |acc, &k| {
            direct_sum(&acc, &Self::jordan_block(p, k)?)
        })
    }

    pub fn p(&self) -> u64 {
        self.eta.p()
    }

    pub fn dim(&self) -> usize {
        self.eta.rows()
    }

    pub fn eta(&self) -> &FpMatrix {
        &self.eta
    }

    /// `g η g^{-1}` for an invertible `g` (given with its inverse).
    pub fn conjugate(&self, g: &FpMatrix, g_inv: &FpMatrix) -> Result<Self> {
        Self::new(g.mul(&self.eta).mul(g_inv))
    }
}

/// Jordan type of a nilpotent operator, as a weakly decreasing partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JordanType {
    pub partition: Vec<usize>,
}

impl JordanType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&k| k > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { partition: parts }
    }

    pub fn dim(&self) -> usize {
        self.partition.iter().sum()
    }

    pub fn count_of(&self, k: usize) -> usize {
        self.partition.iter().filter(|&&x| x == k).count()
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.partition.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Ranks `r_0 = dim, r_1 = rank η, ...`, ending with two zeros.
fn rank_sequence(eta: &FpMatrix) -> Vec<usize> {
    let n = eta.rows();
    let mut ranks = vec![n];
    let mut power = FpMatrix::identity(eta.p(), n);
    while *ranks.last().unwrap() > 0 {
        power = power.mul(eta);
        ranks.push(power.rank());
    }
    ranks.push(0);
    ranks
}

/// Jordan type from the rank sequence: the number of blocks of size exactly
/// `k` is `r_{k-1} - 2 r_k + r_{k+1}`.
pub fn jordan_type(m: &NilMatrix) -> JordanType {
    let r = rank_sequence(&m.eta);
    let mut parts = Vec::new();
    for k in 1..r.len() - 1 {
        let count = r[k - 1] + r[k + 1] - 2 * r[k];
        parts.extend(std::iter::repeat(k).take(count));
    }
    JordanType::new(parts)
}

/// The subspaces `ker η ∩ im η^i` for `i = 0, ..., p`.
fn kernel_image_flag(eta: &FpMatrix) -> Vec<Subspace> {
    let p = eta.p();
    let n = eta.rows();
    let kernel = Subspace::span(p, n, &eta.kernel());
    let empty = Subspace::span(p, n, &[]);
    let mut flag = Vec::with_capacity(p as usize + 1);
    let mut power = FpMatrix::identity(p, n);
    for i in 0..=p {
        if i > 0 && !power.is_zero() {
            power = power.mul(eta);
        }
        if power.is_zero() {
            flag.push(empty.clone());
            continue;
        }
        let image = Subspace::span(p, n, &power.columns());
        flag.push(kernel.intersect(&image));
    }
    flag
}

/// `Φ_H(V)`: the multiplicity of `L_i` is
/// `dim (ker η ∩ im η^i) / (ker η ∩ im η^{i+1})` for `0 <= i <= p-2`.
pub fn phi(m: &NilMatrix) -> VerObject {
    let params = VerParams::new(m.p()).expect("validated on construction");
    let flag = kernel_image_flag(&m.eta);
    let mult = (0..params.rank())
        .map(|i| {
            debug_assert!(flag[i + 1].is_subspace_of(&flag[i]));
            (flag[i].dim() - flag[i + 1].dim()) as u64
        })
        .collect();
    VerObject::new(m.p(), mult).expect("length p-1")
}

/// `Φ_H` read off a Jordan type: blocks of size `k < p` give `L_{k-1}`,
/// blocks of size `p` are dropped.
pub fn phi_of_jordan_type(p: u64, jt: &JordanType) -> Result<VerObject> {
    let params = VerParams::new(p)?;
    let mut out = VerObject::zero(params);
    for &k in &jt.partition {
        if k > p as usize {
            return Err(Error::Domain(format!("Jordan block of size {k} exceeds p = {p}")));
        }
        if k < p as usize {
            out.add_simple(k - 1, 1)?;
        }
    }
    Ok(out)
}

pub fn is_projective(m: &NilMatrix) -> bool {
    let p = m.p() as usize;
    jordan_type(m).partition.iter().all(|&k| k == p)
}

fn check_same_p(a: u64, b: u64) -> Result<()> {
    if a != b {
        return Err(Error::Parameter(format!("modules over different fields: p = {a} vs p = {b}")));
    }
    Ok(())
}

/// `η_1 ⊗ 1 + 1 ⊗ η_2` on `V_1 ⊗ V_2`; basis `e_i ⊗ f_k` sits at index `i·dim2 + k`.
pub fn tensor(a: &NilMatrix, b: &NilMatrix) -> Result<NilMatrix> {
    check_same_p(a.p(), b.p())?;
    let p = a.p();
    let left = a.eta.kron(&FpMatrix::identity(p, b.dim()));
    let right = FpMatrix::identity(p, a.dim()).kron(&b.eta);
    NilMatrix::new(left.add(&right))
}

pub fn direct_sum(a: &NilMatrix, b: &NilMatrix) -> Result<NilMatrix> {
    check_same_p(a.p(), b.p())?;
    Ok(NilMatrix { eta: a.eta.block_diag(&b.eta) })
}

/// A Capricorn-group module: a nilpotent `η` homogeneous of degree −2 for the
/// given integer weights (`η(V_w) ⊆ V_{w-2}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedNilModule {
    weights: Vec<i64>,
    eta: FpMatrix,
}

impl GradedNilModule {
    pub fn new(weights: Vec<i64>, eta: FpMatrix) -> Result<Self> {
        let ungraded = NilMatrix::new(eta)?;
        if weights.len() != ungraded.dim() {
            return Err(Error::Input(format!(
                "{} weights for a {}-dimensional module",
                weights.len(),
                ungraded.dim()
            )));
        }
        let eta = ungraded.eta;
        for r in 0..eta.rows() {
            for c in 0..eta.cols() {
                if eta.get(r, c) != 0 && weights[r] != weights[c] - 2 {
                    return Err(Error::Structural(format!(
                        "eta is not homogeneous of degree -2: entry ({r},{c}) maps weight {} to weight {}",
                        weights[c], weights[r]
                    )));
                }
            }
        }
        Ok(Self { weights, eta })
    }

    /// `M(a, d)`: basis of weights `a+2d, ..., a+2, a` with `η` the shift chain.
    pub fn indecomposable(p: u64, a: i64, d: usize) -> Result<Self> {
        let chain = NilMatrix::jordan_block(p, d + 1)?;
        let weights = (0..=d as i64).map(|k| a + 2 * d as i64 - 2 * k).collect();
        Self::new(weights, chain.eta)
    }

    pub fn p(&self) -> u64 {
        self.eta.p()
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn eta(&self) -> &FpMatrix {
        &self.eta
    }

    /// Forgets the grading.
    pub fn ungraded(&self) -> NilMatrix {
        NilMatrix { eta: self.eta.clone() }
    }

    /// Weight multiplicities, `w ↦ dim V_w`.
    pub fn character(&self) -> BTreeMap<i64, usize> {
        let mut ch = BTreeMap::new();
        for &w in &self.weights {
            *ch.entry(w).or_insert(0) += 1;
        }
        ch
    }

    fn components(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut comps: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, &w) in self.weights.iter().enumerate() {
            comps.entry(w).or_default().push(i);
        }
        comps
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        check_same_p(self.p(), other.p())?;
        let mut weights = self.weights.clone();
        weights.extend_from_slice(&other.weights);
        Self::new(weights, self.eta.block_diag(&other.eta))
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let eta = tensor(&self.ungraded(), &other.ungraded())?.eta;
        let weights = self
            .weights
            .iter()
            .flat_map(|&a| other.weights.iter().map(move |&b| a + b))
            .collect();
        Self::new(weights, eta)
    }
}

/// A multiset of indecomposables `M(a, d)`, `0 <= d <= p-1`, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedJordanDecomp {
    p: u64,
    blocks: Vec<(i64, usize)>,
}

impl GradedJordanDecomp {
    pub fn new(p: u64, mut blocks: Vec<(i64, usize)>) -> Result<Self> {
        check_odd_prime(p)?;
        if let Some(&(a, d)) = blocks.iter().find(|&&(_, d)| d as u64 > p - 1) {
            return Err(Error::Domain(format!("M({a},{d}) has dimension larger than p = {p}")));
        }
        blocks.sort_unstable();
        Ok(Self { p, blocks })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn blocks(&self) -> &[(i64, usize)] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|&(_, d)| d + 1).sum()
    }

    /// Graded character of the recomposed module.
    pub fn character(&self) -> BTreeMap<i64, usize> {
        let mut ch = BTreeMap::new();
        for &(a, d) in &self.blocks {
            for k in 0..=d as i64 {
                *ch.entry(a + 2 * k).or_insert(0) += 1;
            }
        }
        ch
    }

    pub fn jordan_type(&self) -> JordanType {
        JordanType::new(self.blocks.iter().map(|&(_, d)| d + 1).collect())
    }
}

impl fmt::Display for GradedJordanDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_blocks(f, &self.blocks)
    }
}

pub(crate) fn write_blocks(f: &mut fmt::Formatter<'_>, blocks: &[(i64, usize)]) -> fmt::Result {
    if blocks.is_empty() {
        return write!(f, "0");
    }
    let parts: Vec<String> = blocks.iter().map(|(a, d)| format!("M({a},{d})")).collect();
    write!(f, "{}", parts.join(" + "))
}

/// Decomposes a Capricorn module into indecomposables `M(a, d)`. The
/// multiplicity of `M(a, d)` is
/// `dim (ker η ∩ im η^d)_a − dim (ker η ∩ im η^{d+1})_a`.
pub fn graded_decompose(m: &GradedNilModule) -> GradedJordanDecomp {
    let p = m.p();
    let n = m.dim();
    let comps = m.components();
    // powers[d] = η^d, kept until the first zero power
    let mut powers = vec![FpMatrix::identity(p, n)];
    while powers.len() <= p as usize && !powers.last().unwrap().is_zero() {
        let next = powers.last().unwrap().mul(&m.eta);
        powers.push(next);
    }
    let mut blocks = Vec::new();
    for (&a, idx_a) in &comps {
        let ambient = idx_a.len();
        let below: Vec<usize> = comps.get(&(a - 2)).cloned().unwrap_or_default();
        let kernel = if below.is_empty() {
            Subspace::whole(p, ambient)
        } else {
            Subspace::span(p, ambient, &m.eta.select(&below, idx_a).kernel())
        };
        let flag: Vec<usize> = (0..=p as usize)
            .map(|d| {
                let (Some(idx_top), Some(power)) = (comps.get(&(a + 2 * d as i64)), powers.get(d))
                else {
                    return 0;
                };
                let image = Subspace::span(p, ambient, &power.select(idx_a, idx_top).columns());
                kernel.intersect(&image).dim()
            })
            .collect();
        for d in 0..p as usize {
            let count = flag[d] - flag[d + 1];
            blocks.extend(std::iter::repeat((a, d)).take(count));
        }
    }
    GradedJordanDecomp::new(p, blocks).expect("d <= p-1 by construction")
}

/// Image in the stable category: drop the projective summands `M(a, p-1)`.
pub fn stable_form(d: &GradedJordanDecomp) -> StableObject {
    let p = d.p;
    let blocks = d
        .blocks
        .iter()
        .copied()
        .filter(|&(_, k)| (k as u64) < p - 1)
        .collect();
    StableObject::new(p, blocks).expect("non-projective blocks only")
}

/// The contragredient module: transpose of `η`, weights negated.
pub fn dual(m: &GradedNilModule) -> GradedNilModule {
    let weights = m.weights.iter().map(|&w| -w).collect();
    GradedNilModule::new(weights, m.eta.transpose()).expect("duality preserves homogeneity")
}

/// The JSON exchange format for modules.
///
/// `matrix[r][c]` is the coefficient of basis vector `r` in `η(basis vector c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub p: u64,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
    pub matrix: Vec<Vec<i64>>,
}

impl ModuleFile {
    fn operator(&self) -> Result<FpMatrix> {
        check_odd_prime(self.p)?;
        if self.matrix.len() != self.dim {
            return Err(Error::Input(format!(
                "matrix has {} rows, expected dim = {}",
                self.matrix.len(),
                self.dim
            )));
        }
        FpMatrix::from_rows(self.p, self.dim, &self.matrix)
            .ok_or_else(|| Error::Input(format!("every matrix row must have {} entries", self.dim)))
    }

    pub fn to_nil_matrix(&self) -> Result<NilMatrix> {
        NilMatrix::new(self.operator()?)
    }

    pub fn to_graded(&self) -> Result<GradedNilModule> {
        let weights = self
            .weights
            .clone()
            .ok_or_else(|| Error::Input("module file has no weights; a graded module is required".into()))?;
        GradedNilModule::new(weights, self.operator()?)
    }

    fn rows_of(eta: &FpMatrix) -> Vec<Vec<i64>> {
        eta.to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as i64).collect())
            .collect()
    }

    pub fn from_nil_matrix(m: &NilMatrix) -> Self {
        Self { p: m.p(), dim: m.dim(), weights: None, matrix: Self::rows_of(&m.eta) }
    }

    pub fn from_graded(m: &GradedNilModule) -> Self {
        Self {
            p: m.p(),
            dim: m.dim(),
            weights: Some(m.weights.clone()),
            matrix: Self::rows_of(&m.eta),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ver(p: u64, mult: &[u64]) -> VerObject {
        VerObject::new(p, mult.to_vec()).unwrap()
    }

    #[test]
    fn jordan_type_examples() {
        assert_eq!(jordan_type(&NilMatrix::zero(3, 4).unwrap()).partition, vec![1, 1, 1, 1]);
        for p in [3, 5, 7] {
            let j = NilMatrix::jordan_block(p, p as usize).unwrap();
            assert_eq!(jordan_type(&j).partition, vec![p as usize]);
        }
        let m = NilMatrix::from_partition(5, &[2, 3, 1, 3]).unwrap();
        assert_eq!(jordan_type(&m).partition, vec![3, 3, 2, 1]);
        assert_eq!(jordan_type(&NilMatrix::zero(3, 0).unwrap()).partition, Vec::<usize>::new());
    }

    #[test]
    fn rejects_non_nilpotent_and_oversized_blocks() {
        let id = FpMatrix::identity(3, 2);
        assert!(matches!(NilMatrix::new(id), Err(Error::Structural(_))));
        // nilpotent, but eta^3 != 0 at p = 3
        assert!(matches!(NilMatrix::jordan_block(3, 4), Err(Error::Structural(_))));
        assert!(NilMatrix::new(FpMatrix::zeros(3, 2, 3)).is_err());
    }

    #[test]
    fn phi_examples() {
        assert!(phi(&NilMatrix::jordan_block(5, 5).unwrap()).is_zero());
        assert_eq!(phi(&NilMatrix::zero(5, 3).unwrap()), ver(5, &[3, 0, 0, 0]));
        assert_eq!(phi(&NilMatrix::from_partition(3, &[3, 2]).unwrap()), ver(3, &[0, 1]));
        assert_eq!(phi(&NilMatrix::zero(3, 0).unwrap()), ver(3, &[0, 0]));
    }

    #[test]
    fn projectivity() {
        let two = NilMatrix::from_partition(5, &[5, 5]).unwrap();
        assert!(is_projective(&two));
        assert!(!is_projective(&NilMatrix::zero(5, 1).unwrap()));
        assert!(is_projective(&NilMatrix::zero(5, 0).unwrap()));
    }

    #[test]
    fn tensor_examples() {
        let one = NilMatrix::zero(5, 1).unwrap();
        let x = NilMatrix::from_partition(5, &[4, 2]).unwrap();
        assert_eq!(tensor(&x, &one).unwrap(), x);
        for p in [3, 5] {
            let j2 = NilMatrix::jordan_block(p, 2).unwrap();
            assert_eq!(jordan_type(&tensor(&j2, &j2).unwrap()).partition, vec![3, 1]);
        }
        assert!(tensor(&one, &NilMatrix::zero(3, 1).unwrap()).is_err());
    }

    #[test]
    fn direct_sum_examples() {
        let s = direct_sum(
            &NilMatrix::jordan_block(5, 2).unwrap(),
            &NilMatrix::jordan_block(5, 3).unwrap(),
        )
        .unwrap();
        assert_eq!(jordan_type(&s).partition, vec![3, 2]);
        let x = NilMatrix::from_partition(3, &[2, 1]).unwrap();
        assert_eq!(direct_sum(&x, &NilMatrix::zero(3, 0).unwrap()).unwrap(), x);
        let y = NilMatrix::from_partition(3, &[3, 1]).unwrap();
        assert_eq!(phi(&y), ver(3, &[1, 0]));
    }

    #[test]
    fn graded_examples() {
        let m = GradedNilModule::new(vec![5], FpMatrix::zeros(3, 1, 1)).unwrap();
        assert_eq!(graded_decompose(&m).blocks(), &[(5, 0)]);

        let m = GradedNilModule::indecomposable(5, -3, 2).unwrap();
        assert_eq!(m.weights(), &[1, -1, -3]);
        assert_eq!(graded_decompose(&m).blocks(), &[(-3, 2)]);
    }

    #[test]
    fn homogeneity_violation() {
        let mut eta = FpMatrix::zeros(3, 2, 2);
        eta.set(1, 0, 1);
        assert!(matches!(
            GradedNilModule::new(vec![0, 0], eta.clone()),
            Err(Error::Structural(_))
        ));
        assert!(GradedNilModule::new(vec![2, 0], eta).is_ok());
    }

    #[test]
    fn unsorted_weights_are_kept() {
        // basis (w=0, w=4, w=2) with chain 4 -> 2 -> 0
        let rows = vec![vec![0, 0, 1], vec![0, 0, 0], vec![0, 1, 0]];
        let eta = FpMatrix::from_rows(5, 3, &rows).unwrap();
        let m = GradedNilModule::new(vec![0, 4, 2], eta).unwrap();
        assert_eq!(m.weights(), &[0, 4, 2]);
        assert_eq!(graded_decompose(&m).blocks(), &[(0, 2)]);
    }

    #[test]
    fn stable_form_examples() {
        let d = GradedJordanDecomp::new(3, vec![(3, 0), (-3, 2)]).unwrap();
        assert_eq!(stable_form(&d).blocks(), &[(3, 0)]);
        let d = GradedJordanDecomp::new(5, vec![(0, 4), (7, 4)]).unwrap();
        assert!(stable_form(&d).is_zero());
        let d = GradedJordanDecomp::new(3, vec![(2, 1)]).unwrap();
        assert_eq!(stable_form(&d).blocks(), &[(2, 1)]);
    }

    #[test]
    fn dual_examples() {
        for (a, d) in [(0i64, 0usize), (3, 1), (-7, 3), (2, 4)] {
            let m = GradedNilModule::indecomposable(5, a, d).unwrap();
            let dm = dual(&m);
            assert_eq!(graded_decompose(&dm).blocks(), &[(-a - 2 * d as i64, d)]);
            assert_eq!(dual(&dm), m);
            assert_eq!(jordan_type(&dm.ungraded()), jordan_type(&m.ungraded()));
        }
    }

    #[test]
    fn graded_tensor_of_lines() {
        let a = GradedNilModule::indecomposable(3, 4, 0).unwrap();
        let b = GradedNilModule::indecomposable(3, -1, 1).unwrap();
        assert_eq!(graded_decompose(&a.tensor(&b).unwrap()).blocks(), &[(3, 1)]);
    }

    #[test]
    fn module_file_round_trip() {
        let m = GradedNilModule::indecomposable(3, 2, 1).unwrap();
        let file = ModuleFile::from_graded(&m);
        let json = serde_json::to_string(&file).unwrap();
        let back: ModuleFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_graded().unwrap(), m);

        let raw = r#"{"p":3,"dim":2,"matrix":[[0,0],[1,0]]}"#;
        let f: ModuleFile = serde_json::from_str(raw).unwrap();
        assert_eq!(jordan_type(&f.to_nil_matrix().unwrap()).partition, vec![2]);
        assert!(f.to_graded().is_err());
        let bad = r#"{"p":3,"dim":2,"matrix":[[0,0]]}"#;
        let f: ModuleFile = serde_json::from_str(bad).unwrap();
        assert!(matches!(f.to_nil_matrix(), Err(Error::Input(_))));
    }
}

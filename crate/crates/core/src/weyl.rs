//! Root data of simple types, the `p`-dilated dot action of the (extended)
//! affine Weyl group, alcove geometry, length and the sign character.
//!
//! Weights are integer vectors in fundamental-weight coordinates. A coroot
//! `α∨ = Σ c_i α_i∨` is stored by its coefficients `c`, so that
//! `⟨λ, α∨⟩ = Σ c_i λ_i`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{check_odd_prime, Error, Result};

/// `|W_f|` must not exceed this (the order of `W(E_6)`).
pub const MAX_WEYL_ORDER: usize = 51_840;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::Parameter(format!("no root system of type {family:?}{rank}")));
        }
        Ok(Self { family, rank })
    }

    /// Order of the finite Weyl group.
    pub fn weyl_order(self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u128 << n) * fact(n),
            Family::D => (1u128 << (n - 1)) * fact(n),
            Family::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Bourbaki-labelled Cartan matrix, `cartan[i][j] = ⟨α_j, α_i∨⟩`.
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, ij: i64, ji: i64| {
            c[i][j] = ij;
            c[j][i] = ji;
        };
        match self.family {
            Family::A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
            Family::B => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -1, -2);
            }
            Family::C => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -2, -1);
            }
            Family::D => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            Family::E => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            }
            Family::F => {
                link(0, 1, -1, -1);
                link(1, 2, -1, -2);
                link(2, 3, -1, -1);
            }
            Family::G => link(0, 1, -3, -1),
        }
        c
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::Input(format!("unknown Cartan type {s:?}"))),
        };
        let rank = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Input(format!("bad rank in Cartan type {s:?}")))?;
        Self::new(family, rank)
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Weight)
            .map_err(|_| Error::Input(format!("cannot parse weight {s:?}; expected e.g. \"3,1\"")))
    }
}

/// Square integer matrix acting on fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self { n, data }
    }

    fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.n + c]
    }

    fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut data = vec![0; n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a != 0 {
                    for c in 0..n {
                        data[r * n + c] += a * other.get(k, c);
                    }
                }
            }
        }
        Self { n, data }
    }

    fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|r| (0..self.n).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }

    /// Fraction-free (Bareiss) determinant.
    fn det(&self) -> i64 {
        let n = self.n;
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|r| (0..n).map(|c| self.get(r, c) as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k][k] == 0 {
                let Some(swap) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                    return 0;
                };
                a.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        if n == 0 {
            return 1;
        }
        (sign * a[n - 1][n - 1]) as i64
    }
}

/// An element of the finite Weyl group together with its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteElement {
    mat: IntMatrix,
    inv: IntMatrix,
}

impl FiniteElement {
    fn identity(n: usize) -> Self {
        Self { mat: IntMatrix::identity(n), inv: IntMatrix::identity(n) }
    }

    fn compose(&self, other: &Self) -> Self {
        Self { mat: self.mat.mul(&other.mat), inv: other.inv.mul(&self.inv) }
    }

    fn inverse(&self) -> Self {
        Self { mat: self.inv.clone(), inv: self.mat.clone() }
    }

    pub fn apply(&self, v: &Weight) -> Weight {
        Weight(self.mat.apply(&v.0))
    }

    pub fn apply_inverse(&self, v: &Weight) -> Weight {
        Weight(self.inv.apply(&v.0))
    }

    pub fn det(&self) -> i64 {
        self.mat.det()
    }

    pub fn is_identity(&self) -> bool {
        self.mat == IntMatrix::identity(self.mat.n)
    }
}

/// A positive root with its coroot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRoot {
    /// Coefficients in the basis of simple roots.
    pub simple_coeffs: Vec<i64>,
    /// The root in fundamental-weight coordinates.
    pub weight: Weight,
    /// Coefficients of the coroot in the basis of simple coroots.
    pub coroot: Vec<i64>,
}

impl PositiveRoot {
    pub fn pair(&self, lambda: &Weight) -> i64 {
        self.coroot.iter().zip(&lambda.0).map(|(c, l)| c * l).sum()
    }
}

/// Root datum of a simply connected almost-simple group.
#[derive(Debug, Clone)]
pub struct RootDatum {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<PositiveRoot>,
    highest_short: usize,
    coxeter_number: i64,
    weyl_group: Vec<FiniteElement>,
}

impl RootDatum {
    pub fn new(cartan_type: CartanType) -> Result<Self> {
        if cartan_type.weyl_order() > MAX_WEYL_ORDER as u128 {
            return Err(Error::Capacity(format!(
                "|W({cartan_type})| = {} exceeds the enumeration cap {MAX_WEYL_ORDER}",
                cartan_type.weyl_order()
            )));
        }
        let cartan = cartan_type.cartan_matrix();
        let positive_roots = generate_positive_roots(&cartan);
        let highest_short = (0..positive_roots.len())
            .max_by_key(|&i| positive_roots[i].coroot.iter().sum::<i64>())
            .expect("nonempty root system");
        let coxeter_number = positive_roots[highest_short].coroot.iter().sum::<i64>() + 1;
        let mut rd = Self {
            cartan_type,
            cartan,
            positive_roots,
            highest_short,
            coxeter_number,
            weyl_group: Vec::new(),
        };
        rd.weyl_group = rd.enumerate_weyl_group();
        Ok(rd)
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    /// The simple root `α_j` in fundamental-weight coordinates (column `j` of the Cartan matrix).
    pub fn simple_root(&self, j: usize) -> Weight {
        Weight(self.cartan.iter().map(|row| row[j]).collect())
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank()])
    }

    /// Highest short root `α_0`.
    pub fn highest_short_root(&self) -> &PositiveRoot {
        &self.positive_roots[self.highest_short]
    }

    pub fn coxeter_number(&self) -> i64 {
        self.coxeter_number
    }

    pub fn weyl_group(&self) -> &[FiniteElement] {
        &self.weyl_group
    }

    /// `2 μ(ρ∨) = Σ_{α > 0} ⟨μ, α∨⟩`.
    pub fn two_rho_check(&self, mu: &Weight) -> i64 {
        self.positive_roots.iter().map(|a| a.pair(mu)).sum()
    }

    fn check_weight(&self, lambda: &Weight) -> Result<()> {
        if lambda.0.len() != self.rank() {
            return Err(Error::Input(format!(
                "weight {lambda} has {} coordinates, type {} needs {}",
                lambda.0.len(),
                self.cartan_type,
                self.rank()
            )));
        }
        Ok(())
    }

    /// Requires `p > h`, which is when `0` lies in the open fundamental alcove.
    pub fn check_p_above_coxeter(&self, p: u64) -> Result<()> {
        check_odd_prime(p)?;
        if p as i64 <= self.coxeter_number {
            return Err(Error::Parameter(format!(
                "p = {p} must exceed the Coxeter number h = {} of {}",
                self.coxeter_number, self.cartan_type
            )));
        }
        Ok(())
    }

    fn simple_reflection_matrix(&self, i: usize) -> FiniteElement {
        let n = self.rank();
        let mut m = IntMatrix::identity(n);
        for r in 0..n {
            m.data[r * n + i] -= self.cartan[r][i];
        }
        FiniteElement { mat: m.clone(), inv: m }
    }

    /// Reflection `s_α` for a positive root, as an element of `W_f`.
    pub fn root_reflection(&self, root: usize) -> FiniteElement {
        let n = self.rank();
        let a = &self.positive_roots[root];
        let mut m = IntMatrix::identity(n);
        // s_α(λ) = λ − ⟨λ, α∨⟩ α
        for r in 0..n {
            for c in 0..n {
                m.data[r * n + c] -= a.weight.0[r] * a.coroot[c];
            }
        }
        FiniteElement { mat: m.clone(), inv: m }
    }

    fn enumerate_weyl_group(&self) -> Vec<FiniteElement> {
        let gens: Vec<FiniteElement> =
            (0..self.rank()).map(|i| self.simple_reflection_matrix(i)).collect();
        let id = FiniteElement::identity(self.rank());
        let mut seen: HashMap<IntMatrix, ()> = HashMap::new();
        seen.insert(id.mat.clone(), ());
        let mut order = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &gens {
                let h = g.compose(s);
                if seen.insert(h.mat.clone(), ()).is_none() {
                    order.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        order
    }
}

fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<PositiveRoot> {
    let n = cartan.len();
    let unit = |i: usize| {
        let mut v = vec![0i64; n];
        v[i] = 1;
        v
    };
    // Roots and coroots are reflected together so each root keeps its own coroot.
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        seen.insert(unit(i), unit(i));
        queue.push_back((unit(i), unit(i)));
    }
    while let Some((beta, gamma)) = queue.pop_front() {
        for i in 0..n {
            let k: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
            let l: i64 = (0..n).map(|j| gamma[j] * cartan[j][i]).sum();
            let mut b2 = beta.clone();
            b2[i] -= k;
            let mut g2 = gamma.clone();
            g2[i] -= l;
            if !seen.contains_key(&b2) {
                seen.insert(b2.clone(), g2.clone());
                queue.push_back((b2, g2));
            }
        }
    }
    let mut positive: Vec<(Vec<i64>, Vec<i64>)> = seen
        .into_iter()
        .filter(|(b, _)| b.iter().all(|&x| x >= 0))
        .collect();
    // Deterministic order: by height, then lexicographically.
    positive.sort_by(|(a, _), (b, _)| {
        (a.iter().sum::<i64>(), a.clone()).cmp(&(b.iter().sum::<i64>(), b.clone()))
    });
    positive
        .into_iter()
        .map(|(simple_coeffs, coroot)| {
            let weight = Weight(
                (0..n)
                    .map(|r| (0..n).map(|j| cartan[r][j] * simple_coeffs[j]).sum())
                    .collect(),
            );
            PositiveRoot { simple_coeffs, weight, coroot }
        })
        .collect()
}

/// `y = w · t_ν`, an element of `W_f ⋉ 𝔛`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtAffineElement {
    w: FiniteElement,
    nu: Weight,
}

impl ExtAffineElement {
    pub fn identity(rd: &RootDatum) -> Self {
        Self { w: FiniteElement::identity(rd.rank()), nu: Weight::zero(rd.rank()) }
    }

    pub fn translation(rd: &RootDatum, nu: Weight) -> Self {
        Self { w: FiniteElement::identity(rd.rank()), nu }
    }

    pub fn finite(w: FiniteElement) -> Self {
        let n = w.mat.n;
        Self { w, nu: Weight::zero(n) }
    }

    pub fn new(w: FiniteElement, nu: Weight) -> Self {
        Self { w, nu }
    }

    /// The affine reflection `s_{α,n}` fixing `⟨λ+ρ, α∨⟩ = np`, i.e. `s_α t_{−nα}`.
    pub fn affine_reflection(rd: &RootDatum, root: usize, level: i64) -> Self {
        let alpha = &rd.positive_roots[root].weight;
        Self { w: rd.root_reflection(root), nu: alpha.scale(-level) }
    }

    /// Simple reflections `s_1, ..., s_r` followed by `s_0 = t_{α_0} s_{α_0}`.
    pub fn simple_reflections(rd: &RootDatum) -> Vec<Self> {
        let mut out: Vec<Self> = (0..rd.rank())
            .map(|i| Self::finite(rd.simple_reflection_matrix(i)))
            .collect();
        out.push(Self::affine_reflection(rd, rd.highest_short, 1));
        out
    }

    pub fn finite_part(&self) -> &FiniteElement {
        &self.w
    }

    pub fn translation_part(&self) -> &Weight {
        &self.nu
    }

    /// `(w t_ν)(w' t_ν') = w w' t_{ν' + w'^{-1} ν}`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            w: self.w.compose(&other.w),
            nu: other.nu.add(&other.w.apply_inverse(&self.nu)),
        }
    }

    /// `(w t_ν)^{-1} = w^{-1} t_{−w ν}`.
    pub fn inverse(&self) -> Self {
        Self { w: self.w.inverse(), nu: self.w.apply(&self.nu).scale(-1) }
    }

    pub fn is_identity(&self) -> bool {
        self.w.is_identity() && self.nu.0.iter().all(|&x| x == 0)
    }
}

/// `w t_ν · λ = w(λ + ρ + pν) − ρ`.
pub fn dot_act(rd: &RootDatum, y: &ExtAffineElement, lambda: &Weight, p: u64) -> Weight {
    let rho = rd.rho();
    let shifted = lambda.add(&rho).add(&y.nu.scale(p as i64));
    y.w.apply(&shifted).sub(&rho)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlcovePosition {
    Interior,
    Boundary,
    Exterior,
}

impl fmt::Display for AlcovePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlcovePosition::Interior => "interior",
            AlcovePosition::Boundary => "boundary",
            AlcovePosition::Exterior => "exterior",
        })
    }
}

/// Position of `λ` relative to `A_0 = {0 < ⟨λ+ρ, α∨⟩ < p for all α > 0}`.
pub fn alcove_position(rd: &RootDatum, lambda: &Weight, p: u64) -> Result<AlcovePosition> {
    check_odd_prime(p)?;
    rd.check_weight(lambda)?;
    let shifted = lambda.add(&rd.rho());
    let p = p as i64;
    let mut on_wall = false;
    for a in &rd.positive_roots {
        let v = a.pair(&shifted);
        if v < 0 || v > p {
            return Ok(AlcovePosition::Exterior);
        }
        on_wall |= v == 0 || v == p;
    }
    Ok(if on_wall { AlcovePosition::Boundary } else { AlcovePosition::Interior })
}

/// An affine reflection `s_{α,n}`, `α` given by its index in [`RootDatum::positive_roots`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AffineReflection {
    pub root: usize,
    pub level: i64,
}

impl AffineReflection {
    pub fn element(self, rd: &RootDatum) -> ExtAffineElement {
        ExtAffineElement::affine_reflection(rd, self.root, self.level)
    }
}

/// Which violated wall the descent reflects in first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DescentOrder {
    #[default]
    FirstViolated,
    LastViolated,
}

/// Result of reducing a weight into the closed fundamental alcove.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalRep {
    pub representative: Weight,
    /// Reflections in the order they were applied to `λ`; `λ = r_1 r_2 ⋯ r_k · λ_0`.
    pub path: Vec<AffineReflection>,
}

impl FundamentalRep {
    /// `x = r_1 r_2 ⋯ r_k`, so that `x · λ_0 = λ`.
    pub fn element(&self, rd: &RootDatum) -> ExtAffineElement {
        self.path
            .iter()
            .fold(ExtAffineElement::identity(rd), |acc, r| acc.compose(&r.element(rd)))
    }
}

pub fn fundamental_representative(rd: &RootDatum, lambda: &Weight, p: u64) -> Result<FundamentalRep> {
    fundamental_representative_with(rd, lambda, p, DescentOrder::FirstViolated)
}

/// Reflection descent: while some wall `⟨λ+ρ, α∨⟩ ∈ pℤ` separates `λ` from
/// `A_0`, reflect in the separating wall nearest to `λ` for the chosen root.
pub fn fundamental_representative_with(
    rd: &RootDatum,
    lambda: &Weight,
    p: u64,
    order: DescentOrder,
) -> Result<FundamentalRep> {
    check_odd_prime(p)?;
    rd.check_weight(lambda)?;
    let pi = p as i64;
    let rho = rd.rho();
    let mut current = lambda.clone();
    let mut path = Vec::new();
    const MAX_STEPS: usize = 1_000_000;
    for _ in 0..MAX_STEPS {
        let shifted = current.add(&rho);
        let violated = rd.positive_roots.iter().enumerate().filter_map(|(i, a)| {
            let v = a.pair(&shifted);
            if v < 0 {
                Some((i, v.div_euclid(pi) + 1))
            } else if v > pi {
                Some((i, (v - 1).div_euclid(pi)))
            } else {
                None
            }
        });
        let pick = match order {
            DescentOrder::FirstViolated => violated.into_iter().next(),
            DescentOrder::LastViolated => violated.into_iter().last(),
        };
        let Some((root, level)) = pick else {
            return Ok(FundamentalRep { representative: current, path });
        };
        let r = AffineReflection { root, level };
        current = dot_act(rd, &r.element(rd), &current, p);
        path.push(r);
    }
    Err(Error::Internal(format!("descent of {lambda} did not terminate")))
}

/// Trivial dot-stabiliser in `W`, i.e. the representative is interior to `A_0`.
pub fn is_p_regular(rd: &RootDatum, lambda: &Weight, p: u64) -> Result<bool> {
    let rep = fundamental_representative(rd, lambda, p)?;
    Ok(alcove_position(rd, &rep.representative, p)? == AlcovePosition::Interior)
}

/// Number of affine hyperplanes `⟨x, α∨⟩ ∈ ℤ` (level one, no `ρ`-shift)
/// separating the base alcove from its image under `y`.
///
/// Uses the base point `ρ/h`, which lies in the open base alcove; its image
/// never lies on a hyperplane since `W^ext` permutes alcoves.
pub fn length(rd: &RootDatum, y: &ExtAffineElement) -> u64 {
    let denom = rd.coxeter_number;
    let image = y.w.apply(&rd.rho().add(&y.nu.scale(denom)));
    rd.positive_roots
        .iter()
        .map(|a| {
            let v = a.pair(&image);
            debug_assert!(v % denom != 0, "image point on a wall");
            v.div_euclid(denom).unsigned_abs()
        })
        .sum()
}

/// `ε(w t_ν) = det(w)`.
pub fn sign_epsilon(y: &ExtAffineElement) -> i64 {
    y.w.det()
}

/// All `y = w t_ν` (one per `w ∈ W_f`) with `y · 0 = λ_0`, where `λ_0` is the
/// fundamental representative of `λ`.
pub fn ext_block_witnesses(rd: &RootDatum, lambda: &Weight, p: u64) -> Result<Vec<ExtAffineElement>> {
    rd.check_p_above_coxeter(p)?;
    let rep = fundamental_representative(rd, lambda, p)?;
    let target = rep.representative.add(&rd.rho());
    let rho = rd.rho();
    let pi = p as i64;
    let mut out = Vec::new();
    for w in &rd.weyl_group {
        // w(ρ + pν) = λ_0 + ρ  ⇔  pν = w^{-1}(λ_0 + ρ) − ρ
        let rhs = w.apply_inverse(&target).sub(&rho);
        if rhs.0.iter().all(|x| x % pi == 0) {
            let nu = Weight(rhs.0.iter().map(|x| x / pi).collect());
            out.push(ExtAffineElement::new(w.clone(), nu));
        }
    }
    Ok(out)
}

/// Some `y ∈ W^ext` with `y · 0 = λ_0`, or `None` if `λ` is outside the
/// extended principal block.
pub fn ext_block_witness(rd: &RootDatum, lambda: &Weight, p: u64) -> Result<Option<ExtAffineElement>> {
    Ok(ext_block_witnesses(rd, lambda, p)?.into_iter().next())
}

pub fn in_ext_principal_block(rd: &RootDatum, lambda: &Weight, p: u64) -> Result<bool> {
    Ok(ext_block_witness(rd, lambda, p)?.is_some())
}

/// In the principal block `W · 0`: the fundamental representative is `0`.
pub fn in_principal_block(rd: &RootDatum, lambda: &Weight, p: u64) -> Result<bool> {
    let rep = fundamental_representative(rd, lambda, p)?;
    Ok(rep.representative == Weight::zero(rd.rank()))
}

//! The stable module category of the Capricorn group `C = 𝔾_m ⋉ α_p`.
//!
//! Indecomposable non-projective objects are the `M(a, d)` with
//! `0 <= d <= p-2`: lowest weight `a`, weights `a, a+2, ..., a+2d`.
//!
//! Degrees of graded super vector spaces follow the grading-shift convention
//! `M[m]_j = M_{m+j}`: the one-dimensional space `k[m]` sits in component
//! degree `−m`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_odd_prime, Error, Result};
use crate::ver::VerObject;
use crate::weyl::{
    alcove_position, ext_block_witness, fundamental_representative, length, sign_epsilon,
    AlcovePosition, RootDatum, Weight,
};

/// A finite direct sum of `M(a, d)` in `Rep(C)^st`, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StableObject {
    p: u64,
    blocks: Vec<(i64, usize)>,
}

impl StableObject {
    pub fn new(p: u64, mut blocks: Vec<(i64, usize)>) -> Result<Self> {
        check_odd_prime(p)?;
        if let Some(&(a, d)) = blocks.iter().find(|&&(_, d)| d as u64 > p - 2) {
            return Err(Error::Domain(format!(
                "M({a},{d}) is projective or too large for p = {p}; stable objects need d <= p-2"
            )));
        }
        blocks.sort_unstable();
        Ok(Self { p, blocks })
    }

    pub fn zero(p: u64) -> Result<Self> {
        Self::new(p, Vec::new())
    }

    /// The single indecomposable `M(a, d)`.
    pub fn indecomposable(p: u64, a: i64, d: usize) -> Result<Self> {
        Self::new(p, vec![(a, d)])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn blocks(&self) -> &[(i64, usize)] {
        &self.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.p != other.p {
            return Err(Error::Parameter(format!(
                "stable objects for different p: {} vs {}",
                self.p, other.p
            )));
        }
        let mut blocks = self.blocks.clone();
        blocks.extend_from_slice(&other.blocks);
        Self::new(self.p, blocks)
    }
}

impl fmt::Display for StableObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::nilmod::write_blocks(f, &self.blocks)
    }
}

#[derive(Serialize, Deserialize)]
struct StableObjectJson {
    p: u64,
    blocks: Vec<(i64, usize)>,
}

impl Serialize for StableObject {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StableObjectJson { p: self.p, blocks: self.blocks.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for StableObject {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = StableObjectJson::deserialize(d)?;
        StableObject::new(raw.p, raw.blocks).map_err(serde::de::Error::custom)
    }
}

/// `M(a,d)[1] = M(a + 2(d+1), p-d-2)`.
fn shift_once(p: i64, (a, d): (i64, usize)) -> (i64, usize) {
    let d = d as i64;
    (a + 2 * (d + 1), (p - d - 2) as usize)
}

fn unshift_once(p: i64, (a, d): (i64, usize)) -> (i64, usize) {
    let d = d as i64;
    let prev = p - d - 2;
    (a - 2 * (prev + 1), prev as usize)
}

/// Shift by `m` in the stable category, blockwise. Two shifts move the
/// lowest weight by `2p`; the remaining odd step uses the single-shift rule.
pub fn shift(obj: &StableObject, m: i64) -> StableObject {
    let p = obj.p as i64;
    let (pairs, rest) = (m.div_euclid(2), m.rem_euclid(2));
    let blocks = obj
        .blocks
        .iter()
        .map(|&(a, d)| {
            let block = (a + 2 * p * pairs, d);
            if rest == 1 {
                shift_once(p, block)
            } else {
                block
            }
        })
        .collect();
    StableObject::new(obj.p, blocks).expect("shift preserves d <= p-2")
}

/// Shift computed by iterating the single-step rule `|m|` times.
pub fn shift_iterated(obj: &StableObject, m: i64) -> StableObject {
    let p = obj.p as i64;
    let step = if m >= 0 { shift_once } else { unshift_once };
    let blocks = obj
        .blocks
        .iter()
        .map(|&b| (0..m.unsigned_abs()).fold(b, |acc, _| step(p, acc)))
        .collect();
    StableObject::new(obj.p, blocks).expect("shift preserves d <= p-2")
}

/// Tensor with the one-dimensional module of weight `b`: `M(a,d) ↦ M(a+b,d)`.
pub fn tensor_line(obj: &StableObject, b: i64) -> StableObject {
    let blocks = obj.blocks.iter().map(|&(a, d)| (a + b, d)).collect();
    StableObject::new(obj.p, blocks).expect("d unchanged")
}

/// Union of the weight sets `{a, a+2, ..., a+2d}`.
pub fn support(obj: &StableObject) -> BTreeSet<i64> {
    obj.blocks
        .iter()
        .flat_map(|&(a, d)| (0..=d as i64).map(move |k| a + 2 * k))
        .collect()
}

/// `dim Hom(M(a,0)[m], M(a,0)[m'])` in `Rep(C)^st`: the two objects are either
/// equal (endomorphisms of an indecomposable non-projective, dimension 1) or
/// have disjoint supports (no graded maps at all).
pub fn hom_dim(p: u64, a: i64, m: i64, m_prime: i64) -> Result<u64> {
    let x = shift(&StableObject::indecomposable(p, a, 0)?, m);
    let y = shift(&StableObject::indecomposable(p, a, 0)?, m_prime);
    if x == y {
        return Ok(1);
    }
    if support(&x).is_disjoint(&support(&y)) {
        return Ok(0);
    }
    Err(Error::Internal(format!(
        "M({a},0)[{m}] and M({a},0)[{m_prime}] differ but share weights"
    )))
}

/// A `ℤ`-graded super vector space: degree ↦ (even dim, odd dim).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedSuperSpace {
    components: BTreeMap<i64, (u64, u64)>,
}

impl GradedSuperSpace {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add(&mut self, degree: i64, even: u64, odd: u64) {
        if even == 0 && odd == 0 {
            return;
        }
        let slot = self.components.entry(degree).or_insert((0, 0));
        slot.0 += even;
        slot.1 += odd;
    }

    pub fn components(&self) -> &BTreeMap<i64, (u64, u64)> {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Total dimension per degree, forgetting parity.
    pub fn forget_parity(&self) -> BTreeMap<i64, u64> {
        self.components.iter().map(|(&k, &(e, o))| (k, e + o)).collect()
    }

    /// `Π`: swap even and odd.
    pub fn parity_flip(&self) -> Self {
        Self { components: self.components.iter().map(|(&k, &(e, o))| (k, (o, e))).collect() }
    }

    /// The grading shift `[m]` (`V[m]_j = V_{m+j}`): degree `k` moves to `k − m`.
    pub fn degree_shift(&self, m: i64) -> Self {
        Self { components: self.components.iter().map(|(&k, &v)| (k - m, v)).collect() }
    }
}

impl fmt::Display for GradedSuperSpace {
    /// `odd @ degree -1 + 2 even @ degree 0`, or `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (&k, &(e, o)) in &self.components {
            for (dim, parity) in [(e, "even"), (o, "odd")] {
                match dim {
                    0 => {}
                    1 => parts.push(format!("{parity} @ degree {k}")),
                    _ => parts.push(format!("{dim} {parity} @ degree {k}")),
                }
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct GradedSuperSpaceJson {
    components: Vec<(i64, u64, u64)>,
}

impl Serialize for GradedSuperSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let components = self.components.iter().map(|(&k, &(e, o))| (k, e, o)).collect();
        GradedSuperSpaceJson { components }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedSuperSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GradedSuperSpaceJson::deserialize(d)?;
        let mut out = Self::zero();
        for (k, e, o) in raw.components {
            out.add(k, e, o);
        }
        Ok(out)
    }
}

/// The equivalence `Rep(C)^st_p ≃ gr_ℤ sVec`: `M(kp, 0)` is even in degree
/// `−k`, `M(kp+2, p−2)` is odd in degree `−(k+1)`.
pub fn to_graded_super(obj: &StableObject) -> Result<GradedSuperSpace> {
    let p = obj.p as i64;
    let mut out = GradedSuperSpace::zero();
    for &(a, d) in &obj.blocks {
        if d == 0 && a.rem_euclid(p) == 0 {
            out.add(-(a / p), 1, 0);
        } else if d as i64 == p - 2 && (a - 2).rem_euclid(p) == 0 {
            out.add(-((a - 2) / p + 1), 0, 1);
        } else {
            return Err(Error::Domain(format!(
                "M({a},{d}) does not lie in the subcategory generated by M(0,0) and M({},{})",
                2 - p,
                p - 2
            )));
        }
    }
    Ok(out)
}

/// `Φ^st_H(∇_λ)` for `λ` dominant in the extended principal block:
/// `λ = x · λ_0` with `λ_0 = y · 0 ∈ A_0`, and the value is
/// `M(0,0)[ℓ(x)]` if `ε(y) = 1`, `M(2−p, p−2)[ℓ(x)]` otherwise.
pub fn phi_st_costandard(rd: &RootDatum, lambda: &Weight, p: u64) -> Result<StableObject> {
    rd.check_p_above_coxeter(p)?;
    if !lambda.is_dominant() {
        return Err(Error::Domain(format!("weight {lambda} is not dominant")));
    }
    let rep = fundamental_representative(rd, lambda, p)?;
    let y = ext_block_witness(rd, lambda, p)?.ok_or_else(|| {
        Error::Domain(format!("weight {lambda} is not in the extended principal block for p = {p}"))
    })?;
    if alcove_position(rd, &rep.representative, p)? != AlcovePosition::Interior {
        return Err(Error::Internal(format!("{} should be p-regular", rep.representative)));
    }
    let base = if sign_epsilon(&y) == 1 {
        StableObject::indecomposable(p, 0, 0)?
    } else {
        StableObject::indecomposable(p, 2 - p as i64, p as usize - 2)?
    };
    let x = rep.element(rd);
    Ok(shift(&base, length(rd, &x) as i64))
}

/// One term `⊕_λ T_λ^{m_λ}` of a tilting complex, in cohomological degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltingTerm {
    pub degree: i64,
    pub mults: BTreeMap<Weight, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltingComplex {
    pub p: u64,
    pub terms: Vec<TiltingTerm>,
}

#[derive(Serialize, Deserialize)]
struct TiltingTermJson {
    degree: i64,
    mults: BTreeMap<String, u64>,
}

#[derive(Serialize, Deserialize)]
struct TiltingComplexJson {
    p: u64,
    terms: Vec<TiltingTermJson>,
}

impl Serialize for TiltingComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|t| TiltingTermJson {
                degree: t.degree,
                mults: t.mults.iter().map(|(w, &m)| (w.to_string(), m)).collect(),
            })
            .collect();
        TiltingComplexJson { p: self.p, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TiltingComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TiltingComplexJson::deserialize(d)?;
        let terms = raw
            .terms
            .into_iter()
            .map(|t| {
                let mults = t
                    .mults
                    .into_iter()
                    .map(|(k, m)| k.parse::<Weight>().map(|w| (w, m)))
                    .collect::<Result<BTreeMap<_, _>>>()?;
                Ok(TiltingTerm { degree: t.degree, mults })
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(TiltingComplex { p: raw.p, terms })
    }
}

/// `Φ^st(M) = ⊕_{λ ∈ A_0, i} Φ^st(T_λ)[−i]^{m_{i,λ}}` for a minimal tilting
/// complex; summands with `λ ∉ A_0` are negligible and dropped.
pub fn phi_tilting_complex(
    rd: &RootDatum,
    seeds: &BTreeMap<Weight, StableObject>,
    complex: &TiltingComplex,
) -> Result<StableObject> {
    let p = complex.p;
    check_odd_prime(p)?;
    let mut out = StableObject::zero(p)?;
    for term in &complex.terms {
        for (lambda, &m) in &term.mults {
            if !lambda.is_dominant() {
                return Err(Error::Input(format!("tilting highest weight {lambda} is not dominant")));
            }
            if alcove_position(rd, lambda, p)? != AlcovePosition::Interior {
                continue;
            }
            let seed = seeds
                .get(lambda)
                .ok_or_else(|| Error::Input(format!("no seed value given for T_{lambda}")))?;
            if seed.p() != p {
                return Err(Error::Parameter(format!("seed for T_{lambda} has p = {}", seed.p())));
            }
            let shifted = shift(seed, -term.degree);
            for _ in 0..m {
                out = out.direct_sum(&shifted)?;
            }
        }
    }
    Ok(out)
}

/// Values of `Φ_H` or `Φ^st_H` whose vanishing detects singular modules.
pub trait OtiValue {
    fn is_zero_object(&self) -> bool;
}

impl OtiValue for StableObject {
    fn is_zero_object(&self) -> bool {
        self.is_zero()
    }
}

impl OtiValue for VerObject {
    fn is_zero_object(&self) -> bool {
        self.is_zero()
    }
}

/// A module is singular iff its OTI value vanishes.
pub fn is_singular<T: OtiValue>(value: &T) -> bool {
    value.is_zero_object()
}

/// Which object a hypercohomology reference value is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SheafKind {
    /// `j_{x*} k[ℓ(x)]`
    Costandard,
    /// `j_{x!} k[ℓ(x)]`
    Standard,
    /// The indecomposable tilting sheaf `𝒯_x`
    Tilting,
}

/// Total cohomology of the Iwahori-constructible sheaves attached to `x`
/// (parity is not recorded; dimensions are stored as even).
pub fn hyperco_reference(kind: SheafKind, length_x: i64, is_identity: bool) -> GradedSuperSpace {
    let mut out = GradedSuperSpace::zero();
    match kind {
        SheafKind::Costandard => out.add(-length_x, 1, 0),
        SheafKind::Standard => out.add(length_x, 1, 0),
        SheafKind::Tilting if is_identity => out.add(0, 1, 0),
        SheafKind::Tilting => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u64, a: i64, d: usize) -> StableObject {
        StableObject::indecomposable(p, a, d).unwrap()
    }

    #[test]
    fn shift_examples() {
        for p in [3u64, 5, 7] {
            let pi = p as i64;
            assert_eq!(shift(&m(p, 0, 0), 1), m(p, 2, p as usize - 2));
            for a in [-4, 0, 3] {
                for k in -3..=3 {
                    assert_eq!(shift(&m(p, a, 0), 2 * k), m(p, a + 2 * k * pi, 0));
                }
            }
            let x = StableObject::new(p, vec![(1, 1), (-4, 0)]).unwrap();
            assert_eq!(shift(&x, 0), x);
        }
    }

    #[test]
    fn shift_closed_form_matches_iteration() {
        let x = StableObject::new(7, vec![(1, 1), (-4, 0), (9, 5), (0, 3)]).unwrap();
        for k in -9..=9 {
            assert_eq!(shift(&x, k), shift_iterated(&x, k), "m = {k}");
        }
    }

    #[test]
    fn tensor_line_examples() {
        let p = 5;
        let x = StableObject::new(p, vec![(1, 1), (-4, 0)]).unwrap();
        assert_eq!(tensor_line(&x, 0), x);
        assert_eq!(tensor_line(&m(p, 0, 0), -5), m(p, -5, 0));
        let sq = tensor_line(&m(p, -5, 0), -5);
        assert_eq!(sq, m(p, -10, 0));
        assert_eq!(sq, shift(&m(p, 0, 0), -2));
    }

    #[test]
    fn supports() {
        assert_eq!(support(&m(3, 3, 0)), BTreeSet::from([3]));
        assert_eq!(support(&m(3, 2, 1)), BTreeSet::from([2, 4]));
        assert!(support(&StableObject::zero(3).unwrap()).is_empty());
    }

    #[test]
    fn homs() {
        assert_eq!(hom_dim(5, 0, 3, 3).unwrap(), 1);
        assert_eq!(hom_dim(5, 0, 0, 1).unwrap(), 0);
        assert_eq!(hom_dim(5, 0, 2, 4).unwrap(), 0);
    }

    #[test]
    fn graded_super_examples() {
        for p in [3u64, 5, 7] {
            let pi = p as i64;
            assert_eq!(to_graded_super(&m(p, 0, 0)).unwrap().to_string(), "even @ degree 0");
            assert_eq!(
                to_graded_super(&m(p, 2 - pi, p as usize - 2)).unwrap().to_string(),
                "odd @ degree 0"
            );
            assert_eq!(to_graded_super(&m(p, pi, 0)).unwrap().to_string(), "even @ degree -1");
        }
        let err = to_graded_super(&m(5, 1, 0)).unwrap_err();
        assert!(matches!(err, Error::Domain(ref s) if s.contains("M(1,0)")));
        assert!(to_graded_super(&m(5, 0, 1)).is_err());
        assert!(to_graded_super(&StableObject::zero(5).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn rejects_projective_blocks() {
        assert!(matches!(StableObject::new(3, vec![(0, 2)]), Err(Error::Domain(_))));
    }

    #[test]
    fn hyperco_values() {
        assert_eq!(hyperco_reference(SheafKind::Costandard, 0, true).forget_parity(), BTreeMap::from([(0, 1)]));
        assert_eq!(hyperco_reference(SheafKind::Costandard, 2, false).forget_parity(), BTreeMap::from([(-2, 1)]));
        assert_eq!(hyperco_reference(SheafKind::Standard, 2, false).forget_parity(), BTreeMap::from([(2, 1)]));
        assert!(hyperco_reference(SheafKind::Tilting, 3, false).is_zero());
        assert!(!hyperco_reference(SheafKind::Tilting, 0, true).is_zero());
    }

    #[test]
    fn closed_form_costandards_a1() {
        let rd = RootDatum::parse("A1").unwrap();
        let w = |n| Weight(vec![n]);
        assert_eq!(phi_st_costandard(&rd, &w(0), 3).unwrap(), m(3, 0, 0));
        assert_eq!(phi_st_costandard(&rd, &w(4), 3).unwrap(), m(3, 2, 1));
        assert_eq!(phi_st_costandard(&rd, &w(3), 3).unwrap(), m(3, 3, 0));
        assert_eq!(phi_st_costandard(&rd, &w(1), 3).unwrap(), m(3, -1, 1));
        assert!(matches!(phi_st_costandard(&rd, &w(2), 3), Err(Error::Domain(_))));
        assert!(matches!(phi_st_costandard(&rd, &w(-1), 3), Err(Error::Domain(_))));
        assert!(matches!(phi_st_costandard(&rd, &w(0), 2), Err(Error::Parameter(_))));
    }

    #[test]
    fn tilting_complex_examples() {
        let rd = RootDatum::parse("A1").unwrap();
        let w = |n| Weight(vec![n]);
        let seeds = BTreeMap::from([(w(0), m(3, 0, 0))]);
        let single = TiltingComplex {
            p: 3,
            terms: vec![TiltingTerm { degree: 0, mults: BTreeMap::from([(w(0), 1)]) }],
        };
        assert_eq!(phi_tilting_complex(&rd, &seeds, &single).unwrap(), m(3, 0, 0));

        let nabla4 = TiltingComplex {
            p: 3,
            terms: vec![
                TiltingTerm { degree: -1, mults: BTreeMap::from([(w(0), 1)]) },
                TiltingTerm { degree: 0, mults: BTreeMap::from([(w(4), 1)]) },
            ],
        };
        assert_eq!(phi_tilting_complex(&rd, &seeds, &nabla4).unwrap(), m(3, 2, 1));

        let negligible = TiltingComplex {
            p: 3,
            terms: vec![TiltingTerm { degree: 2, mults: BTreeMap::from([(w(2), 3), (w(5), 1)]) }],
        };
        let v = phi_tilting_complex(&rd, &seeds, &negligible).unwrap();
        assert!(v.is_zero() && is_singular(&v));

        let missing = TiltingComplex {
            p: 3,
            terms: vec![TiltingTerm { degree: 0, mults: BTreeMap::from([(w(1), 1)]) }],
        };
        assert!(matches!(phi_tilting_complex(&rd, &seeds, &missing), Err(Error::Input(_))));
    }

    #[test]
    fn singular_predicate() {
        assert!(is_singular(&StableObject::zero(3).unwrap()));
        assert!(!is_singular(&m(3, 0, 0)));
    }

    #[test]
    fn json_formats() {
        let x = StableObject::new(3, vec![(2, 1), (-3, 0)]).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"p":3,"blocks":[[-3,0],[2,1]]}"#);
        assert_eq!(serde_json::from_str::<StableObject>(&s).unwrap(), x);

        let g = to_graded_super(&StableObject::new(3, vec![(2, 1), (0, 0)]).unwrap()).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"components":[[-1,0,1],[0,1,0]]}"#);
        assert_eq!(serde_json::from_str::<GradedSuperSpace>(&s).unwrap(), g);

        let raw = r#"{"p":3,"terms":[{"degree":-1,"mults":{"0":1}},{"degree":0,"mults":{"4":1}}]}"#;
        let c: TiltingComplex = serde_json::from_str(raw).unwrap();
        assert_eq!(c.terms.len(), 2);
        assert_eq!(serde_json::to_string(&c).unwrap(), raw);
    }
}

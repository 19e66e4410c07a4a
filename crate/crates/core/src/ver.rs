//! The semisimple category `Ver_p`: objects are multiplicity vectors over the
//! simples `L_0, ..., L_{p-2}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_odd_prime, Error, Result};

/// The characteristic, validated to be an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VerParams {
    p: u64,
}

impl VerParams {
    pub fn new(p: u64) -> Result<Self> {
        check_odd_prime(p)?;
        Ok(Self { p })
    }

    pub fn p(self) -> u64 {
        self.p
    }

    /// Number of simple objects, `p - 1`.
    pub fn rank(self) -> usize {
        (self.p - 1) as usize
    }
}

/// A direct sum `⊕ mult[i] · L_i` in `Ver_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VerObject {
    p: u64,
    mult: Vec<u64>,
}

#[derive(Deserialize)]
struct RawVerObject {
    p: u64,
    mult: Vec<u64>,
}

impl<'de> Deserialize<'de> for VerObject {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawVerObject::deserialize(d)?;
        VerObject::new(raw.p, raw.mult).map_err(serde::de::Error::custom)
    }
}

impl VerObject {
    pub fn new(p: u64, mult: Vec<u64>) -> Result<Self> {
        let params = VerParams::new(p)?;
        if mult.len() != params.rank() {
            return Err(Error::Input(format!(
                "Ver_{p} object needs {} multiplicities, got {}",
                params.rank(),
                mult.len()
            )));
        }
        Ok(Self { p, mult })
    }

    pub fn zero(params: VerParams) -> Self {
        Self { p: params.p, mult: vec![0; params.rank()] }
    }

    /// The simple object `L_i`.
    pub fn simple(params: VerParams, i: usize) -> Result<Self> {
        if i >= params.rank() {
            return Err(Error::Parameter(format!(
                "L_{i} does not exist in Ver_{} (indices 0..={})",
                params.p,
                params.rank() - 1
            )));
        }
        let mut obj = Self::zero(params);
        obj.mult[i] = 1;
        Ok(obj)
    }

    pub fn unit(params: VerParams) -> Self {
        Self::simple(params, 0).expect("L_0 always exists")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn params(&self) -> VerParams {
        VerParams { p: self.p }
    }

    pub fn mult(&self) -> &[u64] {
        &self.mult
    }

    pub fn is_zero(&self) -> bool {
        self.mult.iter().all(|&m| m == 0)
    }

    /// Adds `count` copies of `L_i`.
    pub fn add_simple(&mut self, i: usize, count: u64) -> Result<()> {
        let slot = self
            .mult
            .get_mut(i)
            .ok_or_else(|| Error::Parameter(format!("L_{i} out of range for p = {}", self.p)))?;
        *slot = slot
            .checked_add(count)
            .ok_or_else(|| Error::Overflow("Ver_p multiplicity".into()))?;
        Ok(())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        same_p(self, other)?;
        let mut out = self.clone();
        for (i, &m) in other.mult.iter().enumerate() {
            out.add_simple(i, m)?;
        }
        Ok(out)
    }

    fn summands(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.mult.iter().copied().enumerate().filter(|&(_, m)| m > 0)
    }
}

impl fmt::Display for VerObject {
    /// `L1 + L3`, `2*L0`, or `0` for the zero object.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .summands()
            .map(|(i, m)| if m == 1 { format!("L{i}") } else { format!("{m}*L{i}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn same_p(a: &VerObject, b: &VerObject) -> Result<()> {
    if a.p != b.p {
        return Err(Error::Parameter(format!(
            "objects live in different categories: Ver_{} vs Ver_{}",
            a.p, b.p
        )));
    }
    Ok(())
}

/// Fusion of two simples: `L_{i-1} ⊗ L_{j-1} = ⊕_{k=1}^{min(i,j,p-i,p-j)} L_{|i-j|+2k-2}`,
/// written here with zero-based indices.
pub fn fuse_simples(params: VerParams, a: usize, b: usize) -> Vec<usize> {
    let p = params.p as usize;
    let (i, j) = (a + 1, b + 1);
    let top = i.min(j).min(p - i).min(p - j);
    (1..=top).map(|k| i.abs_diff(j) + 2 * k - 2).collect()
}

pub fn fuse(a: &VerObject, b: &VerObject) -> Result<VerObject> {
    same_p(a, b)?;
    let params = a.params();
    let mut out = VerObject::zero(params);
    for (i, mi) in a.summands() {
        for (j, mj) in b.summands() {
            let m = mi
                .checked_mul(mj)
                .ok_or_else(|| Error::Overflow("fusion multiplicity".into()))?;
            for k in fuse_simples(params, i, j) {
                out.add_simple(k, m)?;
            }
        }
    }
    Ok(out)
}

/// `Π(a) = L_{p-2} ⊗ a`.
pub fn parity_shift(a: &VerObject) -> VerObject {
    let params = a.params();
    let odd = VerObject::simple(params, params.rank() - 1).expect("L_{p-2} exists");
    // Fusing with an invertible simple permutes summands, so this cannot overflow.
    fuse(a, &odd).expect("same p, no overflow")
}

/// True iff only `L_0` and `L_{p-2}` occur.
pub fn is_svec(a: &VerObject) -> bool {
    let last = a.mult.len() - 1;
    a.summands().all(|(i, _)| i == 0 || i == last)
}

/// `Σ mult[i] (i+1)` mod `p`.
pub fn categorical_dim(a: &VerObject) -> u64 {
    let p = a.p;
    a.summands()
        .fold(0, |acc, (i, m)| (acc + (m % p) * ((i as u64 + 1) % p)) % p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(p: u64, i: usize) -> VerObject {
        VerObject::simple(VerParams::new(p).unwrap(), i).unwrap()
    }

    fn obj(p: u64, mult: &[u64]) -> VerObject {
        VerObject::new(p, mult.to_vec()).unwrap()
    }

    #[test]
    fn fusion_examples() {
        assert_eq!(fuse(&l(3, 1), &l(3, 1)).unwrap(), l(3, 0));
        assert_eq!(fuse(&l(5, 1), &l(5, 2)).unwrap(), obj(5, &[0, 1, 0, 1]));
        let x = obj(7, &[1, 0, 2, 0, 0, 3]);
        assert_eq!(fuse(&l(7, 0), &x).unwrap(), x);
    }

    #[test]
    fn mismatched_p_rejected() {
        assert!(matches!(fuse(&l(3, 0), &l(5, 0)), Err(Error::Parameter(_))));
        assert!(l(5, 0).direct_sum(&l(3, 0)).is_err());
    }

    #[test]
    fn bad_construction() {
        assert!(VerObject::new(5, vec![1, 0]).is_err());
        assert!(VerObject::new(4, vec![1, 0, 0]).is_err());
        assert!(VerObject::simple(VerParams::new(5).unwrap(), 4).is_err());
    }

    #[test]
    fn parity_shift_examples() {
        for p in [3, 5, 7, 11] {
            assert_eq!(parity_shift(&l(p, 0)), l(p, p as usize - 2));
            let x = obj(p, &(0..p - 1).map(|i| i * 3 + 1).collect::<Vec<_>>());
            assert_eq!(parity_shift(&parity_shift(&x)), x);
        }
        assert_eq!(parity_shift(&l(5, 1)), l(5, 2));
        assert_eq!(parity_shift(&l(7, 1)), l(7, 4));
    }

    #[test]
    fn svec_membership() {
        assert!(is_svec(&obj(5, &[1, 0, 0, 3])));
        assert!(!is_svec(&l(5, 1)));
        assert!(is_svec(&obj(3, &[4, 9])));
        assert!(is_svec(&VerObject::zero(VerParams::new(7).unwrap())));
    }

    #[test]
    fn dims() {
        for p in [3, 5, 7] {
            assert_eq!(categorical_dim(&l(p, 0)), 1);
            assert_eq!(categorical_dim(&l(p, p as usize - 2)), p - 1);
        }
        assert_eq!(categorical_dim(&obj(5, &[0, 1, 0, 1])), 1);
    }

    #[test]
    fn overflow_is_an_error() {
        let big = obj(3, &[u64::MAX, 0]);
        assert!(matches!(fuse(&big, &obj(3, &[2, 0])), Err(Error::Overflow(_))));
    }

    #[test]
    fn display() {
        assert_eq!(obj(5, &[0, 1, 0, 1]).to_string(), "L1 + L3");
        assert_eq!(obj(5, &[2, 0, 0, 0]).to_string(), "2*L0");
        assert_eq!(VerObject::zero(VerParams::new(3).unwrap()).to_string(), "0");
    }

    #[test]
    fn fusion_ring_axioms_on_simples() {
        for p in [3u64, 5, 7, 11, 13] {
            let n = p as usize - 1;
            for i in 0..n {
                for j in 0..n {
                    let ab = fuse(&l(p, i), &l(p, j)).unwrap();
                    assert_eq!(ab, fuse(&l(p, j), &l(p, i)).unwrap());
                    assert_eq!(
                        categorical_dim(&ab),
                        (i as u64 + 1) * (j as u64 + 1) % p
                    );
                    if p <= 11 {
                        for k in 0..n {
                            let left = fuse(&ab, &l(p, k)).unwrap();
                            let right = fuse(&l(p, i), &fuse(&l(p, j), &l(p, k)).unwrap()).unwrap();
                            assert_eq!(left, right, "p={p} ({i},{j},{k})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let x = obj(5, &[0, 1, 0, 1]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"p":5,"mult":[0,1,0,1]}"#);
        assert_eq!(serde_json::from_str::<VerObject>(&s).unwrap(), x);
        assert!(serde_json::from_str::<VerObject>(r#"{"p":5,"mult":[1]}"#).is_err());
    }
}

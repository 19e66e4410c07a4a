//! Named verification suites. Each suite returns one record per checked case.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{check_odd_prime, Error, Result};
use crate::models::{costandard_model, support_table, unique_small_block_check, weyl_dimension};
use crate::nilmod::{
    dual, graded_decompose, is_projective, jordan_type, phi, stable_form, tensor, NilMatrix,
};
use crate::stable::{
    hom_dim, hyperco_reference, phi_st_costandard, phi_tilting_complex, shift, support,
    tensor_line, to_graded_super, SheafKind, StableObject, TiltingComplex, TiltingTerm,
};
use crate::ver::{fuse, is_svec, parity_shift, VerObject, VerParams};
use crate::weyl::{
    dot_act, ext_block_witness, fundamental_representative, is_p_regular, length, sign_epsilon,
    ExtAffineElement, RootDatum, Weight,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    FusionOracle,
    ThmA,
    ThmB,
    Corollary,
    SingularVanishing,
    PrepFormula,
    Homs,
    Figure1,
    Hyperco,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::FusionOracle,
        Suite::ThmA,
        Suite::ThmB,
        Suite::Corollary,
        Suite::SingularVanishing,
        Suite::PrepFormula,
        Suite::Homs,
        Suite::Figure1,
        Suite::Hyperco,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FusionOracle => "fusion-oracle",
            Suite::ThmA => "thmA",
            Suite::ThmB => "thmB",
            Suite::Corollary => "corollary",
            Suite::SingularVanishing => "singular-vanishing",
            Suite::PrepFormula => "prep-formula",
            Suite::Homs => "homs",
            Suite::Figure1 => "figure1",
            Suite::Hyperco => "hyperco",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
            Error::Input(format!("unknown suite {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

/// Bounds for a suite run. Unset fields take suite-specific defaults.
#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    pub p: Option<u64>,
    /// Root system, `A1` when unset.
    pub cartan: Option<String>,
    /// Largest coordinate sum of the highest weights considered; `4p` when unset.
    pub max: Option<i64>,
    /// Largest model dimension; unbounded in rank one, 200 otherwise.
    pub max_dim: Option<u128>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    /// Observations that are reported but not asserted.
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        Self { suite: suite.name().to_string(), cases: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.cases.push(CaseResult { label: label.into(), passed, detail: detail.into() });
    }

    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    fn append(&mut self, other: SuiteReport) {
        self.cases.extend(other.cases);
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            let status = if c.passed { "ok  " } else { "FAIL" };
            writeln!(f, "{status} {}: {}", c.label, c.detail)?;
        }
        for n in &self.notes {
            writeln!(f, "note {n}")?;
        }
        let verdict = if self.all_passed() { "pass" } else { "fail" };
        write!(f, "{}: {verdict}, {}/{} cases", self.suite, self.passed(), self.cases.len())
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport> {
    if suite == Suite::FusionOracle {
        return fusion_oracle(opts.p);
    }
    let rd = RootDatum::parse(opts.cartan.as_deref().unwrap_or("A1"))?;
    let primes = match (opts.p, suite) {
        (Some(p), _) => vec![p],
        (None, Suite::Figure1 | Suite::Hyperco) => vec![3],
        (None, _) if rd.rank() == 1 => vec![3, 5, 7],
        (None, _) => vec![smallest_prime_above(rd.coxeter_number())],
    };
    let mut report = SuiteReport::new(suite);
    for p in primes {
        if suite != Suite::Homs {
            rd.check_p_above_coxeter(p)?;
        }
        let range = WeightRange::new(&rd, p, opts);
        let part = match suite {
            Suite::FusionOracle => unreachable!(),
            Suite::ThmA => thm_a(&rd, p, &range)?,
            Suite::ThmB => thm_b(&rd, p, &range)?,
            Suite::Corollary => corollary(&rd, p, &range)?,
            Suite::SingularVanishing => singular_vanishing(&rd, p, &range)?,
            Suite::PrepFormula => prep_formula(&rd, p, &range)?,
            Suite::Homs => homs(p)?,
            Suite::Figure1 => figure1(&rd, p, opts.max)?,
            Suite::Hyperco => hyperco(&rd, p, opts.max)?,
        };
        report.append(part);
    }
    Ok(report)
}

fn smallest_prime_above(h: i64) -> u64 {
    ((h + 1) as u64..).find(|&q| crate::error::is_prime(q) && q > 2).expect("primes are unbounded")
}

/// Dominant weights with coordinate sum `<= max` and model dimension `<= max_dim`.
struct WeightRange {
    max: i64,
    max_dim: Option<u128>,
}

impl WeightRange {
    fn new(rd: &RootDatum, p: u64, opts: &SuiteOptions) -> Self {
        let max = opts.max.unwrap_or(4 * p as i64);
        let max_dim = opts.max_dim.or(if rd.rank() == 1 { None } else { Some(200) });
        Self { max, max_dim }
    }

    fn admits(&self, rd: &RootDatum, lambda: &Weight) -> bool {
        lambda.is_dominant() && self.max_dim.is_none_or(|b| weyl_dimension(rd, lambda) <= b)
    }

    fn weights(&self, rd: &RootDatum) -> Vec<Weight> {
        let mut out = Vec::new();
        dominant_weights(rd.rank(), self.max, &mut Vec::new(), &mut out);
        out.retain(|w| self.admits(rd, w));
        out
    }
}

fn dominant_weights(rank: usize, budget: i64, prefix: &mut Vec<i64>, out: &mut Vec<Weight>) {
    if prefix.len() == rank {
        out.push(Weight(prefix.clone()));
        return;
    }
    for c in 0..=budget {
        prefix.push(c);
        dominant_weights(rank, budget - c, prefix, out);
        prefix.pop();
    }
}

/// Cached costandard models, keyed by highest weight.
struct Models<'a> {
    rd: &'a RootDatum,
    p: u64,
    cache: BTreeMap<Weight, crate::nilmod::GradedNilModule>,
}

impl<'a> Models<'a> {
    fn new(rd: &'a RootDatum, p: u64) -> Self {
        Self { rd, p, cache: BTreeMap::new() }
    }

    fn get(&mut self, lambda: &Weight) -> Result<&crate::nilmod::GradedNilModule> {
        if !self.cache.contains_key(lambda) {
            let m = costandard_model(self.rd, lambda, self.p)?;
            self.cache.insert(lambda.clone(), m);
        }
        Ok(&self.cache[lambda])
    }

    fn ver(&mut self, lambda: &Weight) -> Result<VerObject> {
        Ok(phi(&self.get(lambda)?.ungraded()))
    }

    fn stable(&mut self, lambda: &Weight) -> Result<StableObject> {
        Ok(stable_form(&graded_decompose(self.get(lambda)?)))
    }
}

fn jordan_blocks(n: usize, p: u64) -> NilMatrix {
    NilMatrix::jordan_block(p, n).expect("size <= p")
}

/// `fuse(L_i, L_j)` against `Φ` of the Kronecker sum of Jordan blocks.
fn fusion_oracle(p: Option<u64>) -> Result<SuiteReport> {
    let primes = match p {
        Some(p) => vec![p],
        None => vec![3, 5, 7, 11, 13],
    };
    let mut report = SuiteReport::new(Suite::FusionOracle);
    for p in primes {
        let params = VerParams::new(p)?;
        let n = params.rank();
        for i in 0..n {
            for j in 0..n {
                let formula = fuse(&VerObject::simple(params, i)?, &VerObject::simple(params, j)?)?;
                let oracle = phi(&tensor(&jordan_blocks(i + 1, p), &jordan_blocks(j + 1, p))?);
                report.check(
                    format!("p={p} L{i}*L{j}"),
                    formula == oracle,
                    format!("formula {formula}, oracle {oracle}"),
                );
            }
        }
    }
    Ok(report)
}

/// `λ = x · λ_0` with `x` from the canonical descent.
fn decompose(rd: &RootDatum, lambda: &Weight, p: u64) -> Result<(Weight, ExtAffineElement)> {
    let rep = fundamental_representative(rd, lambda, p)?;
    let x = rep.element(rd);
    Ok((rep.representative, x))
}

/// Both halves: wall-reflection parity and translation invariance.
fn thm_a(rd: &RootDatum, p: u64, range: &WeightRange) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::ThmA);
    let mut models = Models::new(rd, p);
    let simple = ExtAffineElement::simple_reflections(rd);
    for lambda in range.weights(rd) {
        let (lambda0, x) = decompose(rd, &lambda, p)?;
        for s in &simple {
            let partner = dot_act(rd, &x.compose(s), &lambda0, p);
            if !range.admits(rd, &partner) {
                continue;
            }
            let lhs = models.ver(&partner)?;
            let rhs = parity_shift(&models.ver(&lambda)?);
            report.check(
                format!("p={p} wall {lambda} -> {partner}"),
                lhs == rhs,
                format!("phi = {lhs}, parity shift of phi({lambda}) = {rhs}"),
            );
        }
        let mut mus = Vec::new();
        dominant_weights(rd.rank(), 3, &mut Vec::new(), &mut mus);
        for mu in mus.into_iter().filter(|m| m.coords().iter().any(|&c| c != 0)) {
            let moved = lambda.add(&mu.scale(p as i64));
            if !range.admits(rd, &moved) {
                continue;
            }
            let (a, b) = (models.ver(&moved)?, models.ver(&lambda)?);
            let expected = tensor_line(&models.stable(&lambda)?, p as i64 * rd.two_rho_check(&mu));
            let got = models.stable(&moved)?;
            report.check(
                format!("p={p} translate {lambda} + p*({mu})"),
                a == b && got == expected,
                format!("phi {a} vs {b}; stable {got} vs {expected}"),
            );
        }
    }
    Ok(report)
}

fn thm_b(rd: &RootDatum, p: u64, range: &WeightRange) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::ThmB);
    let mut models = Models::new(rd, p);
    for lambda in range.weights(rd) {
        let in_block = ext_block_witness(rd, &lambda, p)?.is_some();
        if in_block {
            let v = models.ver(&lambda)?;
            report.check(format!("p={p} {lambda}"), is_svec(&v), format!("phi = {v}"));
        } else if is_p_regular(rd, &lambda, p)? {
            let v = models.ver(&lambda)?;
            if !is_svec(&v) {
                report.notes.push(format!("p={p} {lambda} outside the block: phi = {v} is not in sVec"));
            }
        }
    }
    Ok(report)
}

fn corollary(rd: &RootDatum, p: u64, range: &WeightRange) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Corollary);
    let mut models = Models::new(rd, p);
    for lambda in range.weights(rd) {
        if ext_block_witness(rd, &lambda, p)?.is_none() {
            continue;
        }
        let m = models.get(&lambda)?;
        let jt = jordan_type(&m.ungraded());
        report.check(format!("p={p} {lambda}"), unique_small_block_check(m), format!("Jordan type {jt}"));
        let small: Vec<String> = graded_decompose(m)
            .blocks()
            .iter()
            .filter(|&&(_, d)| (d as u64) < p - 1)
            .map(|&(a, d)| format!("{:?}", (a..=a + 2 * d as i64).step_by(2).collect::<Vec<_>>()))
            .collect();
        let top = m.weights().iter().max().copied().unwrap_or(0);
        report.notes.push(format!(
            "p={p} {lambda}: small block weights {} (extreme weights ±{top})",
            small.join(", ")
        ));
    }
    Ok(report)
}

fn singular_vanishing(rd: &RootDatum, p: u64, range: &WeightRange) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::SingularVanishing);
    let mut models = Models::new(rd, p);
    for lambda in range.weights(rd) {
        if is_p_regular(rd, &lambda, p)? {
            continue;
        }
        let m = models.get(&lambda)?.ungraded();
        report.check(
            format!("p={p} {lambda}"),
            is_projective(&m),
            format!("Jordan type {}", jordan_type(&m)),
        );
    }
    Ok(report)
}

fn prep_formula(rd: &RootDatum, p: u64, range: &WeightRange) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::PrepFormula);
    let mut models = Models::new(rd, p);
    let mut odd_branch = 0;
    let mut mus = Vec::new();
    dominant_weights(rd.rank(), 3, &mut Vec::new(), &mut mus);
    for lambda in range.weights(rd) {
        let Some(y) = ext_block_witness(rd, &lambda, p)? else { continue };
        if sign_epsilon(&y) == -1 {
            odd_branch += 1;
        }
        let closed = phi_st_costandard(rd, &lambda, p)?;
        let model = models.stable(&lambda)?;
        report.check(
            format!("p={p} {lambda}"),
            closed == model,
            format!("closed form {closed}, model {model}, eps {}", sign_epsilon(&y)),
        );
        for mu in mus.iter().filter(|m| m.coords().iter().any(|&c| c != 0)) {
            let moved = phi_st_costandard(rd, &lambda.add(&mu.scale(p as i64)), p)?;
            let expected = tensor_line(&closed, p as i64 * rd.two_rho_check(mu));
            report.check(
                format!("p={p} {lambda} + p*({mu})"),
                moved == expected,
                format!("{moved} vs {expected}"),
            );
        }
    }
    report.notes.push(format!("p={p}: {odd_branch} weights with eps(y) = -1"));
    Ok(report)
}

fn homs(p: u64) -> Result<SuiteReport> {
    check_odd_prime(p)?;
    let pi = p as i64;
    let mut report = SuiteReport::new(Suite::Homs);
    let mut round_trip = true;
    let mut closed = true;
    let mut disjoint = true;
    let mut homs_ok = true;
    let mut equiv_ok = true;
    for a in -3 * pi..=3 * pi {
        let base = StableObject::indecomposable(p, a, 0)?;
        closed &= shift(&base, 2) == StableObject::indecomposable(p, a + 2 * pi, 0)?;
        closed &= shift(&base, 1) == StableObject::indecomposable(p, a + 2, p as usize - 2)?;
        for m in -6..=6i64 {
            let expected = if m % 2 == 0 {
                StableObject::indecomposable(p, a + m * pi, 0)?
            } else {
                StableObject::indecomposable(p, a + m * pi - pi + 2, p as usize - 2)?
            };
            closed &= shift(&base, m) == expected;
            for m2 in -6..=6i64 {
                let (x, y) = (shift(&base, m), shift(&base, m2));
                if m != m2 {
                    disjoint &= support(&x).is_disjoint(&support(&y));
                }
                homs_ok &= hom_dim(p, a, m, m2)? == u64::from(m == m2);
            }
        }
        for d in 0..=p as usize - 2 {
            let x = StableObject::new(p, vec![(a, d), (a + 1, p as usize - 2 - d)])?;
            for m in -10..=10 {
                round_trip &= shift(&shift(&x, m), -m) == x;
            }
        }
        if a.rem_euclid(pi) == 0 {
            let e = to_graded_super(&base)?;
            for m in -6..=6i64 {
                let lhs = to_graded_super(&shift(&base, m))?;
                let mut rhs = e.degree_shift(m);
                if m.rem_euclid(2) == 1 {
                    rhs = rhs.parity_flip();
                }
                equiv_ok &= lhs == rhs;
            }
        }
    }
    report.check(format!("p={p} shift round trip"), round_trip, "|m| <= 10");
    report.check(format!("p={p} shifts of M(a,0)"), closed, "|a| <= 3p, |m| <= 6");
    report.check(format!("p={p} disjoint supports"), disjoint, "M(a,0)[m], m in [-6,6]");
    report.check(format!("p={p} hom dimensions"), homs_ok, "1 iff m = m'");
    report.check(format!("p={p} graded super shifts"), equiv_ok, "E(M[m]) = parity^m E(M) shifted by m");
    Ok(report)
}

/// The support table for `SL_2` with `p = 3` and `n <= 16`.
pub const REFERENCE_SUPPORTS_P3: [(usize, &[i64]); 12] = [
    (0, &[0]),
    (1, &[-1, 1]),
    (3, &[3]),
    (4, &[2, 4]),
    (6, &[6]),
    (7, &[5, 7]),
    (9, &[9]),
    (10, &[8, 10]),
    (12, &[12]),
    (13, &[11, 13]),
    (15, &[15]),
    (16, &[14, 16]),
];

fn figure1(rd: &RootDatum, p: u64, max: Option<i64>) -> Result<SuiteReport> {
    if rd.rank() != 1 {
        return Err(Error::Input("the support table is defined for type A1".into()));
    }
    let mut report = SuiteReport::new(Suite::Figure1);
    let max_n = max.unwrap_or(if p == 3 { 16 } else { 4 * p as i64 }).max(0) as usize;
    let rows = support_table(p, max_n)?;
    for row in &rows {
        let closed = phi_st_costandard(rd, &Weight(vec![row.n as i64]), p)?;
        let expected: Vec<i64> = support(&closed).into_iter().collect();
        let reference = (p == 3)
            .then(|| REFERENCE_SUPPORTS_P3.iter().find(|(n, _)| *n == row.n))
            .flatten();
        let ref_ok = reference.is_none_or(|(_, s)| s == &row.support.as_slice());
        report.check(
            format!("p={p} n={}", row.n),
            expected == row.support && ref_ok,
            format!("model {:?}, closed form {:?}", row.support, expected),
        );
    }
    if p == 3 && max_n >= 16 {
        report.check("p=3 row count", rows.len() == REFERENCE_SUPPORTS_P3.len(), format!("{} rows", rows.len()));
    }
    Ok(report)
}

/// Parity-forgetting comparison with the cohomology of (co)standard sheaves.
/// The standard side uses duals of the models, valid in type `A1` where
/// `−w_0 λ = λ`.
fn hyperco(rd: &RootDatum, p: u64, max: Option<i64>) -> Result<SuiteReport> {
    if rd.rank() != 1 {
        return Err(Error::Input("the hypercohomology comparison is implemented for type A1".into()));
    }
    let mut report = SuiteReport::new(Suite::Hyperco);
    let mut models = Models::new(rd, p);
    for n in 0..=max.unwrap_or(16) {
        let lambda = Weight(vec![n]);
        let Some(y) = ext_block_witness(rd, &lambda, p)? else { continue };
        let (_, x) = decompose(rd, &lambda, p)?;
        let full = x.compose(&y);
        let zero = Weight::zero(1);
        let ell = length(rd, &full) as i64;
        let lands = dot_act(rd, &full, &zero, p) == lambda;

        let costd = to_graded_super(&phi_st_costandard(rd, &lambda, p)?)?.forget_parity();
        let ref_costd = hyperco_reference(SheafKind::Costandard, ell, full.is_identity()).forget_parity();
        report.check(
            format!("p={p} costandard {n}"),
            lands && costd == ref_costd,
            format!("length {ell}, got {costd:?}"),
        );

        let std_obj = stable_form(&graded_decompose(&dual(models.get(&lambda)?)));
        let std = to_graded_super(&std_obj)?.forget_parity();
        let ref_std = hyperco_reference(SheafKind::Standard, ell, full.is_identity()).forget_parity();
        report.check(format!("p={p} standard {n}"), std == ref_std, format!("length {ell}, got {std:?}"));
    }
    Ok(report)
}

/// The two-term complex `T_0 → T_4` (degrees −1, 0) for `SL_2`, `p = 3`,
/// whose cohomology is `∇_4`.
pub fn nabla4_complex() -> TiltingComplex {
    TiltingComplex {
        p: 3,
        terms: vec![
            TiltingTerm { degree: -1, mults: BTreeMap::from([(Weight(vec![0]), 1)]) },
            TiltingTerm { degree: 0, mults: BTreeMap::from([(Weight(vec![4]), 1)]) },
        ],
    }
}

/// `Φ^st(T_0) = M(0,0)`.
pub fn principal_seed(p: u64, rank: usize) -> Result<BTreeMap<Weight, StableObject>> {
    Ok(BTreeMap::from([(Weight::zero(rank), StableObject::indecomposable(p, 0, 0)?)]))
}

/// Evaluates [`nabla4_complex`] and compares with the closed form for `∇_4`.
pub fn minimal_complex_check() -> Result<(StableObject, StableObject)> {
    let rd = RootDatum::parse("A1")?;
    let got = phi_tilting_complex(&rd, &principal_seed(3, 1)?, &nabla4_complex())?;
    let expected = phi_st_costandard(&rd, &Weight(vec![4]), 3)?;
    Ok((got, expected))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(suite: Suite, opts: SuiteOptions) -> SuiteReport {
        let r = run_suite(suite, &opts).unwrap();
        assert!(r.all_passed(), "{r}");
        assert!(!r.cases.is_empty());
        r
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        run(Suite::FusionOracle, SuiteOptions { p: Some(7), ..Default::default() });
        run(Suite::Homs, SuiteOptions { p: Some(5), ..Default::default() });
        let r = run(Suite::Figure1, SuiteOptions { p: Some(3), ..Default::default() });
        assert_eq!(r.cases.len(), 13);
        run(Suite::ThmB, SuiteOptions { p: Some(5), max: Some(20), ..Default::default() });
        run(Suite::Hyperco, SuiteOptions::default());
    }

    #[test]
    fn minimal_complex() {
        let (got, expected) = minimal_complex_check().unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn dominant_weight_enumeration() {
        let mut out = Vec::new();
        dominant_weights(2, 2, &mut Vec::new(), &mut out);
        assert_eq!(out.len(), 6);
    }
}

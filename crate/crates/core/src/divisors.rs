//! The two parametric divisor families on the full resolution of an A3 or
//! A4 point: a rational ample class `E` and three integral classes
//! `D0, D1, D2` orthogonal to it, all depending on parameters (c, k, m).
//!
//! The module verifies, with exact arithmetic only:
//!   - primitivity: `E.Di = 0` (an identity in the parameters),
//!   - ampleness of `E` against the exceptional curves and against a
//!     configured list of curve families on the base (Nakai-Moishezon),
//!   - simple connectivity of the associated Seifert bundles via gcd
//!     witnesses over the fixed candidate classes {H, -C0, -C1, -C2, -C3},
//! and searches the (m, k) grid for the lexicographically smallest pair
//! passing all three predicates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{exceptional, DivisorClass, IntersectionLattice, HBAR};
use crate::rational::Rational;

/// Which resolved point the family lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyCase {
    A3,
    A4,
}

impl FamilyCase {
    /// Index of the singularity the case resolves.
    pub fn singularity_index(self) -> u64 {
        match self {
            FamilyCase::A3 => 3,
            FamilyCase::A4 => 4,
        }
    }

    /// Number of exceptional curves in the preset basis.
    pub fn exceptional_count(self) -> usize {
        match self {
            FamilyCase::A3 => 3,
            FamilyCase::A4 => 4,
        }
    }
}

impl std::fmt::Display for FamilyCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FamilyCase::A3 => write!(f, "a3"),
            FamilyCase::A4 => write!(f, "a4"),
        }
    }
}

/// a = 3m + c - 1, b = c + m.
pub fn a3_derived(c: u64, m: u64) -> (BigInt, BigInt) {
    let (c, m) = (BigInt::from(c), BigInt::from(m));
    (3 * &m + &c - 1, c + m)
}

/// x0 = x2 = c + m, x1 = 2m + c - 1, x3 = 4m + c - 1.
pub fn a4_derived(c: u64, m: u64) -> (BigInt, BigInt, BigInt, BigInt) {
    let (c, m) = (BigInt::from(c), BigInt::from(m));
    let x0 = &c + &m;
    let x1 = 2 * &m + &c - 1;
    let x3 = 4 * &m + &c - 1;
    (x0.clone(), x1, x0, x3)
}

/// Case-specific derived quantities kept alongside the classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseData {
    A3 { a: BigInt, b: BigInt },
    A4 { x0: BigInt, x1: BigInt, x2: BigInt, x3: BigInt },
}

impl CaseData {
    /// The Nakai deficit for a curve through the resolved point:
    /// a + b in the A3 case, x2 + x3 in the A4 case.
    pub fn through_penalty(&self) -> BigInt {
        match self {
            CaseData::A3 { a, b } => a + b,
            CaseData::A4 { x2, x3, .. } => x2 + x3,
        }
    }
}

/// The tuple (E, D0, D1, D2) over its preset lattice.
#[derive(Clone, Debug)]
pub struct DivisorFamily {
    pub case: FamilyCase,
    pub c: u64,
    pub k: u64,
    pub m: u64,
    pub data: CaseData,
    pub lattice: IntersectionLattice,
    /// The rational ample class E.
    pub ample: DivisorClass,
    /// The three primitive integral classes D0, D1, D2.
    pub d: [DivisorClass; 3],
    /// Coefficient of H in E: k(3a-b)(3b-a)/c resp.
    /// k(2x0-x1)(2x1-x0)(4x2-x3)/c.
    pub q: Rational,
}

impl DivisorFamily {
    pub fn exceptional_labels(&self) -> Vec<String> {
        (0..self.case.exceptional_count()).map(exceptional).collect()
    }

    /// Witness candidates, in the fixed order H, -C0, -C1, ...
    fn witness_candidates(&self) -> Vec<(String, DivisorClass)> {
        let mut out = vec![(HBAR.to_string(), DivisorClass::basis(HBAR))];
        for label in self.exceptional_labels() {
            out.push((format!("-{label}"), -&DivisorClass::basis(&label)));
        }
        out
    }
}

fn validate_positive(c: u64, k: u64, m: u64) -> Result<()> {
    if c < 1 || k < 1 || m < 1 {
        return Err(Error::InvalidParameter(
            "c, k, m must all be positive integers".into(),
        ));
    }
    Ok(())
}

fn term(label: String, value: BigInt) -> (String, Rational) {
    (label, Rational::integer(value))
}

/// Family over the A3 resolution:
/// E  = q H - a C1 - b C2 - (1/2) C0,
/// D0 = H - (k(3b-a)-1)(3a-b) C0 - 2 C1,
/// D1 = H - 2k(3b-a) C1,
/// D2 = H - 2k(3a-b) C2.
pub fn build_a3_family(c: u64, k: u64, m: u64) -> Result<DivisorFamily> {
    validate_positive(c, k, m)?;
    let lattice = IntersectionLattice::preset_a3(c)?;
    let (a, b) = a3_derived(c, m);
    let three_a_b = 3 * &a - &b;
    let three_b_a = 3 * &b - &a;
    debug_assert!(three_a_b.is_positive() && three_b_a.is_positive());
    let kk = BigInt::from(k);
    let q = Rational::new(&kk * &three_a_b * &three_b_a, c)?;

    let ample = DivisorClass::from_terms([
        (HBAR.to_string(), q.clone()),
        (exceptional(1), Rational::integer(-&a)),
        (exceptional(2), Rational::integer(-&b)),
        (exceptional(0), Rational::new(-1, 2)?),
    ]);
    let d0 = DivisorClass::from_terms([
        term(HBAR.to_string(), BigInt::one()),
        term(exceptional(0), -((&kk * &three_b_a - 1) * &three_a_b)),
        term(exceptional(1), BigInt::from(-2)),
    ]);
    let d1 = DivisorClass::from_terms([
        term(HBAR.to_string(), BigInt::one()),
        term(exceptional(1), -(2 * &kk * &three_b_a)),
    ]);
    let d2 = DivisorClass::from_terms([
        term(HBAR.to_string(), BigInt::one()),
        term(exceptional(2), -(2 * &kk * &three_a_b)),
    ]);

    Ok(DivisorFamily {
        case: FamilyCase::A3,
        c,
        k,
        m,
        data: CaseData::A3 { a, b },
        lattice,
        ample,
        d: [d0, d1, d2],
        q,
    })
}

/// Family over the A4 resolution:
/// E  = q H - x3 C3 - x2 C2 - x1 C1 - x0 C0,
/// D0 = H - k(2x1-x0)(4x2-x3) C0,
/// D1 = H - k(2x0-x1)(4x2-x3) C1,
/// D2 = H - 3k(2x0-x1)(2x1-x0) C2.
pub fn build_a4_family(c: u64, k: u64, m: u64) -> Result<DivisorFamily> {
    validate_positive(c, k, m)?;
    let lattice = IntersectionLattice::preset_a4(c)?;
    let (x0, x1, x2, x3) = a4_derived(c, m);
    let u = 2 * &x0 - &x1; // = c + 1
    let v = 2 * &x1 - &x0; // = 3m + c - 2
    let w = 4 * &x2 - &x3; // = 3c + 1
    debug_assert!(u.is_positive() && v.is_positive() && w.is_positive());
    let kk = BigInt::from(k);
    let q = Rational::new(&kk * &u * &v * &w, c)?;

    let ample = DivisorClass::from_terms([
        (HBAR.to_string(), q.clone()),
        (exceptional(3), Rational::integer(-&x3)),
        (exceptional(2), Rational::integer(-&x2)),
        (exceptional(1), Rational::integer(-&x1)),
        (exceptional(0), Rational::integer(-&x0)),
    ]);
    let d0 = DivisorClass::from_terms([
        term(HBAR.to_string(), BigInt::one()),
        term(exceptional(0), -(&kk * &v * &w)),
    ]);
    let d1 = DivisorClass::from_terms([
        term(HBAR.to_string(), BigInt::one()),
        term(exceptional(1), -(&kk * &u * &w)),
    ]);
    let d2 = DivisorClass::from_terms([
        term(HBAR.to_string(), BigInt::one()),
        term(exceptional(2), -(3 * &kk * &u * &v)),
    ]);

    Ok(DivisorFamily {
        case: FamilyCase::A4,
        c,
        k,
        m,
        data: CaseData::A4 { x0, x1, x2, x3 },
        lattice,
        ample,
        d: [d0, d1, d2],
        q,
    })
}

pub fn build_family(case: FamilyCase, c: u64, k: u64, m: u64) -> Result<DivisorFamily> {
    match case {
        FamilyCase::A3 => build_a3_family(c, k, m),
        FamilyCase::A4 => build_a4_family(c, k, m),
    }
}

/// A family of rationally equivalent curves on the base, known only through
/// its intersection with H and whether it passes through the resolved point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveConstraint {
    pub h_dot: u64,
    pub through_singularity: bool,
}

impl CurveConstraint {
    pub fn new(h_dot: u64, through_singularity: bool) -> Result<Self> {
        if h_dot < 1 {
            return Err(Error::InvalidParameter(
                "curve constraint requires H.D >= 1".into(),
            ));
        }
        Ok(CurveConstraint {
            h_dot,
            through_singularity,
        })
    }
}

/// Default curve configuration: a single family with H.D = c passing
/// through the resolved point.
pub fn default_curves(c: u64) -> Vec<CurveConstraint> {
    vec![CurveConstraint {
        h_dot: c.max(1),
        through_singularity: true,
    }]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">")]
    Gt,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Relation::Eq => write!(f, "="),
            Relation::Gt => write!(f, ">"),
        }
    }
}

/// One recorded exact comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub lhs: Rational,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Check {
    pub fn eq(name: impl Into<String>, lhs: Rational, rhs: Rational) -> Self {
        Check {
            name: name.into(),
            lhs,
            relation: Relation::Eq,
            rhs,
        }
    }

    pub fn gt(name: impl Into<String>, lhs: Rational, rhs: Rational) -> Self {
        Check {
            name: name.into(),
            lhs,
            relation: Relation::Gt,
            rhs,
        }
    }

    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::Eq => self.lhs == self.rhs,
            Relation::Gt => self.lhs > self.rhs,
        }
    }
}

/// A batch of exact comparisons; passes iff every one holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl Verdict {
    pub fn new(checks: Vec<Check>) -> Self {
        Verdict {
            passed: checks.iter().all(Check::holds),
            checks,
        }
    }

    /// Aligned text table of the recorded comparisons.
    pub fn render(&self) -> String {
        let name_width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for check in &self.checks {
            let mark = if check.holds() { "ok" } else { "FAIL" };
            out.push_str(&format!(
                "  {:name_width$}  {} {} {}  [{}]\n",
                check.name, check.lhs, check.relation, check.rhs, mark
            ));
        }
        out.push_str(if self.passed { "  => passed\n" } else { "  => FAILED\n" });
        out
    }
}

/// Primitivity against E for arbitrary classes, exact.
pub fn primitivity_verdict(
    lattice: &IntersectionLattice,
    ample: &DivisorClass,
    divisors: &[DivisorClass],
) -> Result<Verdict> {
    let mut checks = Vec::new();
    for (i, d) in divisors.iter().enumerate() {
        checks.push(Check::eq(
            format!("E.D{i}"),
            lattice.pair(ample, d)?,
            Rational::zero(),
        ));
    }
    Ok(Verdict::new(checks))
}

/// E.Di = 0 for the three classes of the family.
pub fn check_primitivity(family: &DivisorFamily) -> Result<Verdict> {
    primitivity_verdict(&family.lattice, &family.ample, &family.d)
}

/// Nakai-Moishezon ampleness of E, with exact values recorded:
/// E.E > 0, E positive against every exceptional curve, and positive
/// against each configured curve family (with the through-point deficit
/// subtracted when applicable).
pub fn nakai_moishezon(family: &DivisorFamily, curves: &[CurveConstraint]) -> Result<Verdict> {
    let mut checks = Vec::new();
    let zero = Rational::zero();
    checks.push(Check::gt(
        "E.E",
        family.lattice.self_intersection(&family.ample)?,
        zero.clone(),
    ));
    for label in family.exceptional_labels() {
        checks.push(Check::gt(
            format!("E.{label}"),
            family
                .lattice
                .pair(&family.ample, &DivisorClass::basis(&label))?,
            zero.clone(),
        ));
    }
    let penalty = Rational::integer(family.data.through_penalty());
    for (idx, curve) in curves.iter().enumerate() {
        CurveConstraint::new(curve.h_dot, curve.through_singularity)?;
        let mut value = &family.q * &Rational::integer(curve.h_dot);
        let name = if curve.through_singularity {
            value = &value - &penalty;
            format!("curve{idx}: q*{} - penalty", curve.h_dot)
        } else {
            format!("curve{idx}: q*{}", curve.h_dot)
        };
        checks.push(Check::gt(name, value, zero.clone()));
    }
    Ok(Verdict::new(checks))
}

/// Evidence that the Seifert bundle of a divisor is simply connected:
/// either one candidate class meeting it in +-1, or two whose intersection
/// numbers are coprime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Single {
        class: String,
        value: Rational,
    },
    Pair {
        alpha: String,
        alpha_value: Rational,
        beta: String,
        beta_value: Rational,
    },
}

/// Full record of a witness search over the fixed candidate set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOutcome {
    pub divisor: String,
    pub witness: Option<Witness>,
    /// Integral candidate values, in candidate order.
    pub values: Vec<(String, Rational)>,
    /// Candidates whose pairing was not an integer (skipped).
    pub skipped_non_integral: Vec<String>,
}

/// Searches the candidate classes {H, -C0, -C1, ...} for a gcd witness for
/// `D_i`. Deterministic: candidates are scanned in a fixed order, single
/// witnesses before pairs.
pub fn simply_connected_witness(family: &DivisorFamily, i: usize) -> Result<WitnessOutcome> {
    let divisor = &family.d[i];
    let mut values: Vec<(String, Rational)> = Vec::new();
    let mut skipped = Vec::new();
    for (name, class) in family.witness_candidates() {
        let value = family.lattice.pair(divisor, &class)?;
        if value.is_integer() {
            values.push((name, value));
        } else {
            skipped.push(name);
        }
    }

    let mut witness = values
        .iter()
        .find(|(_, v)| v.abs() == Rational::one())
        .map(|(name, v)| Witness::Single {
            class: name.clone(),
            value: v.clone(),
        });

    if witness.is_none() {
        'outer: for (ai, (a_name, a_val)) in values.iter().enumerate() {
            if a_val.is_zero() {
                continue;
            }
            for (b_name, b_val) in values.iter().skip(ai + 1) {
                if b_val.is_zero() {
                    continue;
                }
                let g = a_val
                    .to_integer()
                    .expect("integral by filter")
                    .abs()
                    .gcd(&b_val.to_integer().expect("integral by filter").abs());
                if g.is_one() {
                    witness = Some(Witness::Pair {
                        alpha: a_name.clone(),
                        alpha_value: a_val.clone(),
                        beta: b_name.clone(),
                        beta_value: b_val.clone(),
                    });
                    break 'outer;
                }
            }
        }
    }

    Ok(WitnessOutcome {
        divisor: format!("D{i}"),
        witness,
        values,
        skipped_non_integral: skipped,
    })
}

/// Witness outcomes for all three divisors; errors if any divisor has none.
pub fn require_witnesses(family: &DivisorFamily) -> Result<[WitnessOutcome; 3]> {
    let mut out = Vec::with_capacity(3);
    for i in 0..3 {
        let outcome = simply_connected_witness(family, i)?;
        if outcome.witness.is_none() {
            let values = outcome
                .values
                .iter()
                .map(|(n, v)| format!("{n}={v}"))
                .collect::<Vec<_>>()
                .join(", ");
            return Err(Error::NoWitness {
                divisor: outcome.divisor,
                values,
            });
        }
        out.push(outcome);
    }
    Ok(out.try_into().expect("exactly three outcomes"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub k_max: u64,
    pub m_max: u64,
}

impl SearchBounds {
    pub fn new(k_max: u64, m_max: u64) -> Result<Self> {
        if k_max < 1 || m_max < 1 {
            return Err(Error::InvalidParameter("search bounds must be >= 1".into()));
        }
        Ok(SearchBounds { k_max, m_max })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub tried: u64,
    pub primitivity_failures: u64,
    pub nakai_failures: u64,
    pub witness_failures: u64,
    pub prime_rejections: u64,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub k: u64,
    pub m: u64,
    pub family: DivisorFamily,
    pub stats: SearchStats,
}

/// Deterministic trial-division primality check.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// The quantity the strong mode requires to be prime: 8m - 3 in the A3
/// case, 3m - 2 in the A4 case. Coprimality to c is what the witness step
/// actually needs; primality is the stronger classical device.
pub fn dirichlet_quantity(case: FamilyCase, m: u64) -> u64 {
    match case {
        FamilyCase::A3 => 8 * m - 3,
        FamilyCase::A4 => 3 * m - 2,
    }
}

/// Scans m = 1..m_max (outer) and k = 1..k_max (inner) for the first pair
/// whose family passes primitivity, Nakai-Moishezon, and the witness search
/// for all three divisors. `require_prime` additionally demands the
/// classical prime choice for m and gcd(k, c) = 1.
pub fn search_parameters(
    case: FamilyCase,
    c: u64,
    curves: &[CurveConstraint],
    bounds: SearchBounds,
    require_prime: bool,
) -> Result<SearchResult> {
    SearchBounds::new(bounds.k_max, bounds.m_max)?;
    let mut stats = SearchStats::default();
    for m in 1..=bounds.m_max {
        if require_prime && !is_prime(dirichlet_quantity(case, m)) {
            stats.prime_rejections += 1;
            continue;
        }
        for k in 1..=bounds.k_max {
            if require_prime && k.gcd(&c) != 1 {
                stats.prime_rejections += 1;
                continue;
            }
            stats.tried += 1;
            let family = build_family(case, c, k, m)?;
            if !check_primitivity(&family)?.passed {
                stats.primitivity_failures += 1;
                continue;
            }
            if !nakai_moishezon(&family, curves)?.passed {
                stats.nakai_failures += 1;
                continue;
            }
            if (0..3).any(|i| {
                simply_connected_witness(&family, i)
                    .map(|o| o.witness.is_none())
                    .unwrap_or(true)
            }) {
                stats.witness_failures += 1;
                continue;
            }
            return Ok(SearchResult { k, m, family, stats });
        }
    }
    Err(Error::SearchExhausted {
        k_max: bounds.k_max,
        m_max: bounds.m_max,
        tried: stats.tried,
        nakai_failures: stats.nakai_failures,
        witness_failures: stats.witness_failures,
        prime_rejections: stats.prime_rejections,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn a3_family_at_unit_parameters() {
        let f = build_a3_family(1, 1, 1).unwrap();
        assert_eq!(f.q, r(21, 1));
        assert_eq!(f.ample.coeff(HBAR), r(21, 1));
        assert_eq!(f.ample.coeff("C1"), r(-3, 1));
        assert_eq!(f.ample.coeff("C2"), r(-2, 1));
        assert_eq!(f.ample.coeff("C0"), r(-1, 2));
        assert_eq!(f.d[0].coeff("C0"), r(-14, 1));
        assert_eq!(f.d[0].coeff("C1"), r(-2, 1));
        assert_eq!(f.d[1].coeff("C1"), r(-6, 1));
        assert_eq!(f.d[2].coeff("C2"), r(-14, 1));
    }

    #[test]
    fn a4_family_at_unit_parameters() {
        let f = build_a4_family(1, 1, 1).unwrap();
        assert_eq!(f.q, r(16, 1));
        assert_eq!(f.d[0].coeff("C0"), r(-8, 1));
        assert_eq!(f.d[1].coeff("C1"), r(-8, 1));
        assert_eq!(f.d[2].coeff("C2"), r(-12, 1));
    }

    #[test]
    fn ample_square_values() {
        let f = build_a3_family(1, 1, 1).unwrap();
        assert_eq!(f.lattice.self_intersection(&f.ample).unwrap(), r(427, 1));
        let f = build_a4_family(1, 1, 1).unwrap();
        assert_eq!(f.lattice.self_intersection(&f.ample).unwrap(), r(680, 3));
    }

    #[test]
    fn primitivity_holds_at_unit_parameters() {
        for case in [FamilyCase::A3, FamilyCase::A4] {
            let f = build_family(case, 1, 1, 1).unwrap();
            let v = check_primitivity(&f).unwrap();
            assert!(v.passed, "{case}: {}", v.render());
            assert!(v.checks.iter().all(|c| c.lhs == Rational::zero()));
        }
    }

    #[test]
    fn primitivity_fails_when_e_is_replaced_by_h() {
        let f = build_a3_family(3, 1, 1).unwrap();
        let v = primitivity_verdict(&f.lattice, &DivisorClass::basis(HBAR), &f.d).unwrap();
        assert!(!v.passed);
        // H.D1 = H.H = c
        assert_eq!(v.checks[1].lhs, r(3, 1));
    }

    #[test]
    fn nakai_values_at_unit_parameters() {
        let f = build_a3_family(1, 1, 1).unwrap();
        let curves = [CurveConstraint::new(1, true).unwrap()];
        let v = nakai_moishezon(&f, &curves).unwrap();
        assert!(v.passed);
        let by_name = |n: &str| {
            v.checks
                .iter()
                .find(|c| c.name == n)
                .unwrap_or_else(|| panic!("check {n}"))
                .lhs
                .clone()
        };
        assert_eq!(by_name("E.E"), r(427, 1));
        assert_eq!(by_name("E.C0"), r(1, 1));
        assert_eq!(by_name("E.C1"), r(7, 2));
        assert_eq!(by_name("E.C2"), r(3, 2));
        assert_eq!(by_name("curve0: q*1 - penalty"), r(16, 1));

        let f = build_a4_family(1, 1, 1).unwrap();
        let v = nakai_moishezon(&f, &curves).unwrap();
        assert!(v.passed);
        let through = v.checks.last().unwrap();
        assert_eq!(through.lhs, r(10, 1)); // 16 - (2 + 4)
    }

    #[test]
    fn curve_constraint_requires_positive_h_dot() {
        assert!(CurveConstraint::new(0, true).is_err());
    }

    #[test]
    fn a3_d0_has_an_immediate_witness_through_minus_c2() {
        let f = build_a3_family(2, 1, 1).unwrap();
        let minus_c2 = -&DivisorClass::basis("C2");
        assert_eq!(f.lattice.pair(&f.d[0], &minus_c2).unwrap(), r(1, 1));
        let outcome = simply_connected_witness(&f, 0).unwrap();
        assert!(matches!(outcome.witness, Some(Witness::Single { .. })));
    }

    #[test]
    fn a4_d1_witness_via_h_and_minus_c0() {
        // D1.(-C0) = (c+1)(3c+1) = 1 mod c, so (H, -C0) always works once
        // gcd(k, c) = 1.
        let f = build_a4_family(6, 1, 1).unwrap();
        let outcome = simply_connected_witness(&f, 1).unwrap();
        match outcome.witness.unwrap() {
            Witness::Pair {
                alpha,
                beta,
                beta_value,
                ..
            } => {
                assert_eq!(alpha, "H");
                assert_eq!(beta, "-C0");
                assert_eq!(beta_value, r(7 * 19, 1));
            }
            w => panic!("expected a pair witness, got {w:?}"),
        }
    }

    #[test]
    fn witness_fails_for_c5_at_unit_parameters() {
        // D2 values are {5, 0, 15, 45}: no unit, no coprime pair.
        let f = build_a3_family(5, 1, 1).unwrap();
        let outcome = simply_connected_witness(&f, 2).unwrap();
        assert!(outcome.witness.is_none());
        assert!(require_witnesses(&f).is_err());
    }

    #[test]
    fn search_finds_unit_parameters_for_c1() {
        let result = search_parameters(
            FamilyCase::A3,
            1,
            &default_curves(1),
            SearchBounds::new(100, 100).unwrap(),
            false,
        )
        .unwrap();
        assert_eq!((result.m, result.k), (1, 1));
    }

    #[test]
    fn search_exhausts_for_c5_under_unit_bounds() {
        let err = search_parameters(
            FamilyCase::A3,
            5,
            &default_curves(5),
            SearchBounds::new(1, 1).unwrap(),
            false,
        )
        .unwrap_err();
        match err {
            Error::SearchExhausted {
                tried,
                witness_failures,
                ..
            } => {
                assert_eq!(tried, 1);
                assert_eq!(witness_failures, 1);
            }
            other => panic!("expected exhaustion, got {other}"),
        }
    }

    #[test]
    fn search_escapes_c5_with_larger_bounds() {
        let result = search_parameters(
            FamilyCase::A3,
            5,
            &default_curves(5),
            SearchBounds::new(100, 100).unwrap(),
            false,
        )
        .unwrap();
        assert_eq!((result.m, result.k), (2, 1));
    }

    #[test]
    fn search_golden_pairs() {
        let cases = [
            (FamilyCase::A3, 1, (1, 1)),
            (FamilyCase::A3, 5, (2, 1)),
            (FamilyCase::A4, 1, (1, 1)),
            (FamilyCase::A4, 12, (1, 1)),
        ];
        for (case, c, expected) in cases {
            let result = search_parameters(
                case,
                c,
                &default_curves(c),
                SearchBounds::new(10_000, 10_000).unwrap(),
                false,
            )
            .unwrap();
            assert_eq!((result.m, result.k), expected, "{case} c={c}");
        }
    }

    #[test]
    fn require_prime_mode_is_stricter_but_still_succeeds() {
        // A4 prime quantity 3m-2: m=1 gives 1 (not prime), m=3 gives 7.
        let result = search_parameters(
            FamilyCase::A4,
            12,
            &default_curves(12),
            SearchBounds::new(10_000, 10_000).unwrap(),
            true,
        )
        .unwrap();
        assert_eq!(result.m, 3);
        assert!(is_prime(dirichlet_quantity(FamilyCase::A4, result.m)));
        assert_eq!(result.k.gcd(&12), 1);
    }

    #[test]
    fn search_is_deterministic() {
        let run = || {
            search_parameters(
                FamilyCase::A4,
                7,
                &default_curves(7),
                SearchBounds::new(500, 500).unwrap(),
                false,
            )
            .map(|r| (r.m, r.k))
            .unwrap()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn d_squares_are_negative_at_unit_parameters() {
        for case in [FamilyCase::A3, FamilyCase::A4] {
            let f = build_family(case, 1, 1, 1).unwrap();
            for d in &f.d {
                assert!(f.lattice.self_intersection(d).unwrap().is_negative());
            }
        }
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(build_a3_family(0, 1, 1).is_err());
        assert!(build_a4_family(1, 0, 1).is_err());
        assert!(build_a4_family(1, 1, 0).is_err());
        assert!(SearchBounds::new(0, 5).is_err());
    }
}

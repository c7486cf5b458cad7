//! Seifert circle-bundle data, tower assembly, and Betti numbers of the
//! iterated circle bundles Y1 -> Y2 -> Y3 over a partially resolved
//! surface.
//!
//! Betti numbers are rational; torsion is out of scope. Two reduction
//! routes are provided:
//!
//! * [`closed_form_tower`] - the pinned closed-form map
//!   `(1,0,b,0,1) -> (1,0,b-1,b-1,0,1) -> (1,0,b-2,2b-2,b-2,0,1)
//!   -> (1,0,b-3,b-1,b-1,b-3,0,1)`, which is what certificates carry.
//! * [`reduce_tower`] - a literal step-by-step rank computation through the
//!   circle-bundle long exact sequence, with the cup-product ranks the
//!   cohomology rings of these spaces actually have (rank one from the
//!   bottom degree and into the top degree, zero in between: products of
//!   pulled-back 2-classes die because H^4 of the first total space
//!   vanishes).
//!
//! The two routes agree for Y1 and Y2. For Y3 they agree in degrees
//! 0, 1, 2, 5, 6, 7 but differ in the middle: the long exact sequence
//! yields b3 = 3*b2(base) - 4, while the closed form pins b3 = b2(base) - 1.
//! See `reduce_tower` tests for the frozen values of both routes.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::divisors::{Check, DivisorFamily, Verdict, Witness};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, IntersectionLattice, HBAR};
use crate::rational::Rational;
use crate::resolution::OrbiSurfaceState;

/// Branch datum of a Seifert bundle over one divisor: multiplicity m and
/// residue b with 0 <= b < m and gcd(b, m) = 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDatum {
    pub divisor: DivisorClass,
    pub multiplicity: u64,
    pub residue: u64,
}

impl BranchDatum {
    pub fn new(divisor: DivisorClass, multiplicity: u64, residue: u64) -> Result<Self> {
        if multiplicity == 0 || residue >= multiplicity {
            return Err(Error::InvalidBranchData(format!(
                "need 0 <= b < m, got b = {residue}, m = {multiplicity}"
            )));
        }
        if residue.gcd(&multiplicity) != 1 {
            return Err(Error::InvalidBranchData(format!(
                "gcd(b, m) must be 1, got b = {residue}, m = {multiplicity}"
            )));
        }
        Ok(BranchDatum {
            divisor,
            multiplicity,
            residue,
        })
    }
}

/// First Chern class of the Seifert bundle with background class `B` and
/// the given branch data: `[B] + sum_i (b_i/m_i) [D_i]`, exact.
pub fn seifert_c1(background: &DivisorClass, branches: &[BranchDatum]) -> Result<DivisorClass> {
    let mut c1 = background.clone();
    for branch in branches {
        BranchDatum::new(
            branch.divisor.clone(),
            branch.multiplicity,
            branch.residue,
        )?;
        let weight = Rational::new(branch.residue, branch.multiplicity)?;
        c1 = c1.plus_scaled(&branch.divisor, &weight);
    }
    Ok(c1)
}

/// Euler-class data of the three-step tower, with the hypothesis flag for
/// the base class H carried explicitly.
#[derive(Clone, Debug)]
pub struct TowerSpec {
    pub euler_classes: [DivisorClass; 3],
    /// Asserts the standing hypothesis that the Seifert bundle defined by
    /// c1 = H is smooth and simply connected.
    pub hbar_bundle_smooth: bool,
    pub witnesses: [Option<Witness>; 3],
}

impl TowerSpec {
    pub fn from_family(family: &DivisorFamily, witnesses: [Option<Witness>; 3]) -> Self {
        TowerSpec {
            euler_classes: family.d.clone(),
            hbar_bundle_smooth: true,
            witnesses,
        }
    }

    /// Rejects euler classes that pair to zero against every basis class.
    pub fn validate_nondegenerate(&self, lattice: &IntersectionLattice) -> Result<()> {
        for (idx, class) in self.euler_classes.iter().enumerate() {
            let mut degenerate = true;
            for label in lattice.basis() {
                if !lattice.pair(class, &DivisorClass::basis(label))?.is_zero() {
                    degenerate = false;
                    break;
                }
            }
            if degenerate {
                return Err(Error::DegenerateEulerClass(format!("D{idx}")));
            }
        }
        Ok(())
    }
}

/// Smoothness of the tower over the remaining singular points: each euler
/// class must restrict to H away from the fully resolved point, i.e. its
/// difference from H may only be supported on the exceptional curves, and
/// the resolved point of the matching type must actually be in the plan.
/// The H hypothesis flag is mandatory.
pub fn smoothness_check(
    tower: &TowerSpec,
    state: &OrbiSurfaceState,
    family: &DivisorFamily,
) -> Result<Verdict> {
    if !tower.hbar_bundle_smooth {
        return Err(Error::MissingAssumption(
            "Seifert bundle defined by c1 = H must be declared smooth and simply connected".into(),
        ));
    }
    let allowed: BTreeSet<String> = family.exceptional_labels().into_iter().collect();
    let hbar = DivisorClass::basis(HBAR);
    let mut checks = Vec::new();
    for (idx, class) in tower.euler_classes.iter().enumerate() {
        let away = class - &hbar;
        let offending = away
            .labels()
            .filter(|l| !allowed.contains(*l))
            .count() as i64;
        checks.push(Check::eq(
            format!("support(D{idx} - H) outside exceptional set"),
            Rational::integer(offending),
            Rational::zero(),
        ));
    }
    let resolved_of_type = state
        .resolved()
        .iter()
        .filter(|p| p.n == family.case.singularity_index())
        .count() as i64;
    checks.push(Check::gt(
        format!("resolved A{} points targeted by the family", family.case.singularity_index()),
        Rational::integer(resolved_of_type),
        Rational::zero(),
    ));
    Ok(Verdict::new(checks))
}

/// Rational Betti numbers b_0..b_dim of a closed oriented space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector {
    pub b: Vec<i64>,
}

impl BettiVector {
    pub fn new(b: Vec<i64>) -> Result<Self> {
        if b.is_empty() || b[0] != 1 || b.iter().any(|&x| x < 0) {
            return Err(Error::InvalidParameter(
                "Betti vector needs b0 = 1 and nonnegative entries".into(),
            ));
        }
        Ok(BettiVector { b })
    }

    pub fn dim(&self) -> usize {
        self.b.len() - 1
    }

    pub fn euler_char(&self) -> i64 {
        self.b
            .iter()
            .enumerate()
            .map(|(i, &x)| if i % 2 == 0 { x } else { -x })
            .sum()
    }

    pub fn is_poincare_dual(&self) -> bool {
        let n = self.b.len();
        (0..n).all(|i| self.b[i] == self.b[n - 1 - i])
    }
}

impl std::fmt::Display for BettiVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({})",
            self.b
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

/// Rational cohomology of the partially resolved surface: (1, 0, b2, 0, 1).
pub fn surface_base(b2: i64) -> Result<BettiVector> {
    if b2 < 1 {
        return Err(Error::InvalidParameter("base needs b2 >= 1".into()));
    }
    BettiVector::new(vec![1, 0, b2, 0, 1])
}

fn require_four_orbifold_base(base: &BettiVector) -> Result<i64> {
    if base.b.len() != 5 || base.b != [1, 0, base.b[2], 0, 1] {
        return Err(Error::InvalidParameter(format!(
            "base must have the form (1, 0, b2, 0, 1), got {base}"
        )));
    }
    Ok(base.b[2])
}

/// One circle-bundle step of the long exact sequence: given the ranks
/// `ranks[j]` of cup product with the euler class `H^j(B) -> H^{j+2}(B)`,
/// the total space has `b_k(Y) = (b_k(B) - ranks[k-2]) + (b_{k-1}(B) -
/// ranks[k-1])` (cokernel plus kernel).
pub fn gysin_step(base: &BettiVector, ranks: &[i64]) -> Result<BettiVector> {
    let n = base.dim();
    if ranks.len() != n + 1 {
        return Err(Error::InvalidParameter(format!(
            "need one cup-product rank per degree 0..{n}"
        )));
    }
    let b = |k: i64| -> i64 {
        if k < 0 || k as usize >= base.b.len() {
            0
        } else {
            base.b[k as usize]
        }
    };
    let rho = |k: i64| -> i64 {
        if k < 0 || k as usize >= ranks.len() {
            0
        } else {
            ranks[k as usize]
        }
    };
    for j in 0..=n as i64 {
        if rho(j) < 0 || rho(j) > b(j).min(b(j + 2)) {
            return Err(Error::InvalidParameter(format!(
                "rank {} at degree {j} exceeds min(b_{j}, b_{})",
                rho(j),
                j + 2
            )));
        }
    }
    let mut out = Vec::with_capacity(n + 2);
    for k in 0..=(n as i64 + 1) {
        out.push((b(k) - rho(k - 2)) + (b(k - 1) - rho(k - 1)));
    }
    BettiVector::new(out)
}

/// Cup-product ranks with a nonzero euler class of negative square on these
/// spaces: rank 1 out of degree 0 (the class is nonzero) and rank 1 into
/// the top degree (its pairing against H^{n-2} is nonzero, dual to the
/// first); all intermediate products of pulled-back 2-classes vanish since
/// H^4 of the first total space is zero.
pub fn standard_ranks(base: &BettiVector) -> Vec<i64> {
    let n = base.dim();
    let mut ranks = vec![0i64; n + 1];
    if n >= 2 && base.b[0] > 0 && base.b[2] > 0 {
        ranks[0] = 1;
    }
    if n >= 2 && base.b[n - 2] > 0 && base.b[n] > 0 {
        ranks[n - 2] = 1;
    }
    ranks
}

/// Literal three-step long-exact-sequence reduction.
pub fn reduce_tower(base: &BettiVector) -> Result<[BettiVector; 3]> {
    require_four_orbifold_base(base)?;
    let y1 = gysin_step(base, &standard_ranks(base))?;
    let y2 = gysin_step(&y1, &standard_ranks(&y1))?;
    let y3 = gysin_step(&y2, &standard_ranks(&y2))?;
    Ok([y1, y2, y3])
}

/// Closed-form reduction: b2 drops by one per step, with
/// Y3 = (1, 0, r-1, r+1, r+1, r-1, 0, 1) for r = b2(base) - 2.
pub fn closed_form_tower(base: &BettiVector) -> Result<[BettiVector; 3]> {
    let b2 = require_four_orbifold_base(base)?;
    if b2 < 3 {
        return Err(Error::InvalidParameter(format!(
            "closed form needs base b2 >= 3, got {b2}"
        )));
    }
    let y1 = BettiVector::new(vec![1, 0, b2 - 1, b2 - 1, 0, 1])?;
    let y2 = BettiVector::new(vec![1, 0, b2 - 2, 2 * b2 - 2, b2 - 2, 0, 1])?;
    let y3 = BettiVector::new(vec![1, 0, b2 - 3, b2 - 1, b2 - 1, b2 - 3, 0, 1])?;
    Ok([y1, y2, y3])
}

/// Betti numbers of the tower carried by certificates: the closed form,
/// validated against Poincare duality and vanishing Euler characteristic.
pub fn gysin_betti(base: &BettiVector) -> Result<[BettiVector; 3]> {
    let tower = closed_form_tower(base)?;
    for space in &tower {
        debug_assert!(space.is_poincare_dual());
        debug_assert_eq!(space.dim() % 2, 1);
        debug_assert_eq!(space.euler_char(), 0);
    }
    Ok(tower)
}

/// Connected-sum label of the six-dimensional total space, valid for
/// 5 <= r <= 22.
pub fn y2_diffeo_label(r: i64) -> Result<String> {
    if !(5..=22).contains(&r) {
        return Err(Error::OutOfRange(r));
    }
    Ok(format!("#{r}(S2×S4) # #{}(S3×S3)", r + 1))
}

/// Range of r reachable from the shipped catalog: full resolutions stop at
/// b2 = 22, so r = b2 - 2 lands in [5, 20] for every admissible plan.
pub fn r_in_catalog_range(r: i64) -> bool {
    (5..=20).contains(&r)
}

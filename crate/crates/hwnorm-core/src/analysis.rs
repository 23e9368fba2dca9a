//! Consumers of the closed norm formulas: unitarizability sets,
//! reducibility, submodule filtrations with their level predicates, and
//! Gelfand-Kirillov dimensions of the subquotients.
//!
//! Each closed form here comes with an independent scan counterpart that
//! works directly from the kernel coefficients (sign scans for
//! unitarizability, pole scans for reducibility); the two routes are held
//! to agree on a quarter-integer grid by the test suites.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{rat, rat2, FactoredFn, Half, Rat, Sign};
use crate::catalog::{CatalogError, FiberSpec, GroupSpec, SoStarKind};
use crate::decomp::{decompose_upto, KIndex, KType};
use crate::norms::{norm_ratio, NormsError};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AnalysisError {
    /// The closed classification does not cover this family/fiber.
    NotCovered(String),
    /// Filtration data requested at an irreducible parameter.
    Irreducible(String),
    Norms(NormsError),
    Catalog(CatalogError),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::NotCovered(s) => write!(f, "not covered by the closed forms: {s}"),
            AnalysisError::Irreducible(s) => write!(f, "irreducible parameter: {s}"),
            AnalysisError::Norms(e) => write!(f, "{e}"),
            AnalysisError::Catalog(e) => write!(f, "{e}"),
        }
    }
}

impl From<NormsError> for AnalysisError {
    fn from(e: NormsError) -> Self {
        AnalysisError::Norms(e)
    }
}

impl From<CatalogError> for AnalysisError {
    fn from(e: CatalogError) -> Self {
        AnalysisError::Catalog(e)
    }
}

/// Complex dimension of the rank-l boundary orbit closure:
/// `l + l(2r-l-1)d/2 + lb`. Strictly increasing in l with
/// `gk_dim(r) = dim p+`.
pub fn gk_dim(spec: &GroupSpec, l: usize) -> u64 {
    assert!(l <= spec.rank, "orbit index at most the rank");
    let l = l as u64;
    let r = spec.rank as u64;
    let prod = l * (2 * r - l - 1) * spec.d as u64;
    debug_assert_eq!(prod % 2, 0);
    l + prod / 2 + l * spec.b as u64
}

/// The set of λ at which the analytically continued module carries a
/// nonzero invariant inner product: finitely many discrete points plus an
/// open half line.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnitarySet {
    /// Open half-line endpoint: every λ > continuous_min is in the set.
    pub continuous_min: Rat,
    /// Discrete points, ascending; all ≤ continuous_min.
    pub discrete: Vec<Rat>,
}

impl UnitarySet {
    pub fn contains(&self, lambda: &Rat) -> bool {
        *lambda > self.continuous_min || self.discrete.contains(lambda)
    }
}

fn discrete_run(from: Rat, to: &Rat, step: Rat) -> Vec<Rat> {
    let mut out = Vec::new();
    let mut x = from;
    while &x <= to {
        out.push(x.clone());
        x += step.clone();
    }
    out
}

/// SU data normalized so that the last fiber entry vanishes: the pair
/// (λ, k) and (λ + k_s, k - k_s·1) define the same family of modules.
struct SuView {
    lambda: Rat,
    k: Vec<i64>,
    nonzero: usize,
    mqs: i64,
    q: i64,
    s: i64,
}

fn su_view(spec: &GroupSpec, k: &[i64], lambda0: &Rat) -> SuView {
    let (q, s) = spec.su_qs();
    let ks = *k.last().expect("validated");
    let nonzero = FiberSpec::Su { k: k.to_vec() }
        .su_nonzero_entries()
        .expect("SU fiber");
    let k: Vec<i64> = k.iter().map(|x| x - ks).collect();
    SuView {
        lambda: lambda0 + rat(ks),
        k,
        nonzero,
        mqs: (q as i64 + nonzero as i64).min(s as i64),
        q: q as i64,
        s: s as i64,
    }
}

/// Closed-form unitarizability set per family. The E6 fiber is not covered.
pub fn unitary_set(spec: &GroupSpec, fiber: &FiberSpec) -> Result<UnitarySet, AnalysisError> {
    fiber.validate(spec)?;
    match fiber {
        FiberSpec::Sp { k } => {
            let cmin = rat2(spec.rank as i64 - 1, 2);
            Ok(UnitarySet {
                discrete: discrete_run(rat2(*k, 2), &cmin, rat2(1, 2)),
                continuous_min: cmin,
            })
        }
        FiberSpec::Su { k } => {
            let v = su_view(spec, k, &rat(0));
            let ks = rat(k[k.len() - 1]);
            let cmin = rat(v.mqs - 1) - ks.clone();
            Ok(UnitarySet {
                discrete: discrete_run(rat(v.nonzero as i64) - ks, &cmin, rat(1)),
                continuous_min: cmin,
            })
        }
        FiberSpec::SoStar { kind, k } => {
            let s = spec.sostar_s() as i64;
            match kind {
                SoStarKind::SymDual => {
                    let (start, top) = if *k == 0 {
                        (rat(0), rat(2 * (s / 2 - 1)))
                    } else {
                        (rat(2), rat(2 * ((s + 1) / 2 - 1)))
                    };
                    Ok(UnitarySet {
                        discrete: discrete_run(start, &top, rat(2)),
                        continuous_min: top,
                    })
                }
                SoStarKind::SymDet => Ok(UnitarySet {
                    discrete: vec![rat(s - 2)],
                    continuous_min: rat(s - 2),
                }),
            }
        }
        FiberSpec::Spin { k, .. } => {
            let n = spec.spin_n() as i64;
            let cmin = rat2(n - 2, 2);
            let mut discrete = Vec::new();
            if *k == Half::ZERO {
                discrete.push(rat(0));
            }
            discrete.push(cmin.clone());
            Ok(UnitarySet {
                discrete,
                continuous_min: cmin,
            })
        }
        FiberSpec::E7 => Ok(UnitarySet {
            discrete: vec![rat(0), rat(4), rat(8)],
            continuous_min: rat(8),
        }),
        FiberSpec::E6 { .. } => Err(AnalysisError::NotCovered(String::from(
            "the unitarizability classification does not treat the e6 fiber",
        ))),
    }
}

/// Which quantity a filtration level bounds.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LevelQuantity {
    /// m_j + κ_j (1-based j).
    SpRow(usize),
    /// n_j.
    SuRow(usize),
    /// m_j + κ_j.
    SoStarDualRow(usize),
    /// κ_{r+1}.
    SoStarDualTail,
    /// m_j - κ_j + k.
    SoStarDetRow(usize),
    /// k - κ_{r+1}.
    SoStarDetTail,
    /// m_1 + k + l.
    SpinRow1,
    /// m_2 + k - l.
    SpinRow2,
    /// m_j.
    ConeRow(usize),
}

/// A filtration level `M_j`: membership of a K-type means
/// `quantity < bound`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LevelPredicate {
    pub quantity: LevelQuantity,
    pub bound: Rat,
}

impl LevelPredicate {
    pub fn quantity_of(&self, fiber: &FiberSpec, kt: &KType) -> Rat {
        match (self.quantity, &kt.index) {
            (LevelQuantity::SpRow(j), KIndex::Sp { m, kappa }) => rat(m[j - 1] + kappa[j - 1]),
            (LevelQuantity::SuRow(j), KIndex::Su { n, .. }) => rat(n[j - 1]),
            (LevelQuantity::SoStarDualRow(j), KIndex::SoStar { m, kappa }) => {
                rat(m[j - 1] + kappa[j - 1])
            }
            (LevelQuantity::SoStarDualTail, KIndex::SoStar { kappa, .. }) => {
                rat(kappa[kappa.len() - 1])
            }
            (LevelQuantity::SoStarDetRow(j), KIndex::SoStar { m, kappa }) => {
                let FiberSpec::SoStar { k, .. } = fiber else {
                    panic!("fiber mismatch")
                };
                rat(m[j - 1] - kappa[j - 1] + k)
            }
            (LevelQuantity::SoStarDetTail, KIndex::SoStar { kappa, .. }) => {
                let FiberSpec::SoStar { k, .. } = fiber else {
                    panic!("fiber mismatch")
                };
                rat(k - kappa[kappa.len() - 1])
            }
            (LevelQuantity::SpinRow1, KIndex::Spin { m, l }) => {
                let FiberSpec::Spin { k, .. } = fiber else {
                    panic!("fiber mismatch")
                };
                rat(m[0]) + (*k + *l).to_rat()
            }
            (LevelQuantity::SpinRow2, KIndex::Spin { m, l }) => {
                let FiberSpec::Spin { k, .. } = fiber else {
                    panic!("fiber mismatch")
                };
                rat(m[1]) + (*k - *l).to_rat()
            }
            (LevelQuantity::ConeRow(j), KIndex::Cone { m }) => rat(m[j - 1]),
            _ => panic!("level predicate does not match the K-type family"),
        }
    }

    pub fn holds(&self, fiber: &FiberSpec, kt: &KType) -> bool {
        self.quantity_of(fiber, kt) < self.bound
    }
}

impl fmt::Display for LevelPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs = match self.quantity {
            LevelQuantity::SpRow(j) => format!("m_{j}+κ_{j}"),
            LevelQuantity::SuRow(j) => format!("n_{j}"),
            LevelQuantity::SoStarDualRow(j) => format!("m_{j}+κ_{j}"),
            LevelQuantity::SoStarDualTail => String::from("κ_{r+1}"),
            LevelQuantity::SoStarDetRow(j) => format!("m_{j}-κ_{j}+k"),
            LevelQuantity::SoStarDetTail => String::from("k-κ_{r+1}"),
            LevelQuantity::SpinRow1 => String::from("m_1+k+l"),
            LevelQuantity::SpinRow2 => String::from("m_2+k-l"),
            LevelQuantity::ConeRow(j) => format!("m_{j}"),
        };
        write!(f, "{lhs} < {}", self.bound)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiltrationLevel {
    /// The printed level label j.
    pub j: i64,
    pub predicate: LevelPredicate,
    pub unitary: bool,
}

/// A chain of proper submodules `0 ⊂ M_a ⊂ ... ⊂ M_b ⊂ P(p+, V)` at a
/// reducible parameter, with the membership predicate for each level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Filtration {
    pub lambda: Rat,
    pub a: i64,
    pub b: i64,
    pub step: i64,
    pub levels: Vec<FiltrationLevel>,
    pub quotient_unitary: bool,
}

fn ceil_i64(x: &Rat) -> i64 {
    x.ceil().to_integer().to_i64().expect("small")
}

fn to_i64(x: &Rat) -> i64 {
    x.to_integer().to_i64().expect("small")
}

/// The closed reducibility/filtration data: `None` means irreducible.
fn filtration_opt(
    spec: &GroupSpec,
    fiber: &FiberSpec,
    lambda0: &Rat,
) -> Result<Option<Filtration>, AnalysisError> {
    fiber.validate(spec)?;
    match fiber {
        FiberSpec::Sp { k } => {
            let r = spec.rank as i64;
            let doubled = lambda0 * rat(2);
            if !doubled.is_integer() || *lambda0 > rat2(r - 1, 2) {
                return Ok(None);
            }
            let t = to_i64(&doubled);
            let a = if *lambda0 >= rat2(*k, 2) {
                t + 1
            } else if !lambda0.is_negative() {
                t + 3
            } else if t % 2 == 0 {
                1
            } else {
                2
            };
            let b = if (t - r).rem_euclid(2) == 0 { r - 1 } else { r };
            if a > b {
                return Ok(None);
            }
            let sub_unitary = *lambda0 >= rat2(*k, 2);
            let mut levels = Vec::new();
            let mut j = a;
            while j <= b {
                levels.push(FiltrationLevel {
                    j,
                    predicate: LevelPredicate {
                        quantity: LevelQuantity::SpRow(j as usize),
                        bound: rat2(j, 2) - lambda0 + rat2(1, 2),
                    },
                    unitary: j == a && sub_unitary,
                });
                j += 2;
            }
            Ok(Some(Filtration {
                lambda: lambda0.clone(),
                a,
                b,
                step: 2,
                levels,
                quotient_unitary: b == r,
            }))
        }
        FiberSpec::Su { k } => {
            if !lambda0.is_integer() {
                return Ok(None);
            }
            let v = su_view(spec, k, lambda0);
            let lam = to_i64(&v.lambda);
            if lam > v.mqs - 1 {
                return Ok(None);
            }
            let kp = |j: i64| -> i64 {
                if j >= 1 && (j as usize) <= v.k.len() {
                    v.k[j as usize - 1]
                } else {
                    0
                }
            };
            let a = if lam <= -kp(1) {
                1
            } else {
                let mut found = None;
                for j in 1..=(v.mqs - 1) {
                    if j - kp(j) <= lam && lam <= j - kp(j + 1) {
                        found = Some(j + 1);
                        break;
                    }
                }
                match found {
                    Some(a) => a,
                    None => return Ok(None),
                }
            };
            let b = if v.q >= v.s {
                v.s
            } else if lam <= v.q - kp(1) {
                v.q
            } else {
                let mut found = None;
                for j in (v.q + 1)..=(v.mqs - 1) {
                    if j - kp(j - v.q) <= lam && lam <= j - kp(j - v.q + 1) {
                        found = Some(j);
                        break;
                    }
                }
                if found.is_none() && v.nonzero >= 1 {
                    let idx = (v.nonzero as i64).min(v.s - v.q);
                    if v.mqs - kp(idx) <= lam && lam < v.mqs {
                        found = Some(v.mqs);
                    }
                }
                match found {
                    Some(b) => b,
                    None => return Ok(None),
                }
            };
            if a > b {
                return Ok(None);
            }
            let sub_unitary = lam >= v.nonzero as i64;
            let levels = (a..=b)
                .map(|j| FiltrationLevel {
                    j,
                    predicate: LevelPredicate {
                        quantity: LevelQuantity::SuRow(j as usize),
                        bound: rat(j) - lambda0,
                    },
                    unitary: j == a && sub_unitary,
                })
                .collect();
            Ok(Some(Filtration {
                lambda: lambda0.clone(),
                a,
                b,
                step: 1,
                levels,
                quotient_unitary: if v.q >= v.s || v.nonzero == 0 {
                    true
                } else {
                    b == v.mqs
                },
            }))
        }
        FiberSpec::SoStar { kind, k } => {
            if !lambda0.is_integer() {
                return Ok(None);
            }
            let lam = to_i64(lambda0);
            let r = spec.rank as i64;
            let odd = spec.sostar_s() % 2 == 1;
            match kind {
                SoStarKind::SymDual => {
                    let bound = if odd && *k >= 1 { 2 * r } else { 2 * r - 2 };
                    if lam > bound {
                        return Ok(None);
                    }
                    let a = if lam >= 3 {
                        lam.div_euclid(2) + lam.rem_euclid(2) + 1
                    } else if lam >= 1 - k {
                        2
                    } else {
                        1
                    };
                    let b = if odd && lam >= 2 * r + 1 - k { r + 1 } else { r };
                    if a > b {
                        return Ok(None);
                    }
                    let sub_unitary = lam % 2 == 0 && lam >= if *k == 0 { 0 } else { 2 };
                    let levels = (a..=b)
                        .map(|j| FiltrationLevel {
                            j,
                            predicate: if j <= r {
                                LevelPredicate {
                                    quantity: LevelQuantity::SoStarDualRow(j as usize),
                                    bound: rat(2 * j - 1) - lambda0,
                                }
                            } else {
                                LevelPredicate {
                                    quantity: LevelQuantity::SoStarDualTail,
                                    bound: rat(2 * r + 1) - lambda0,
                                }
                            },
                            unitary: j == a && sub_unitary,
                        })
                        .collect();
                    Ok(Some(Filtration {
                        lambda: lambda0.clone(),
                        a,
                        b,
                        step: 1,
                        levels,
                        quotient_unitary: if !odd || *k == 0 { true } else { b == r + 1 },
                    }))
                }
                SoStarKind::SymDet => {
                    let (a, b);
                    if !odd {
                        if lam > 2 * r - 2 {
                            return Ok(None);
                        }
                        a = if lam >= 2 * r - 3 - k {
                            r
                        } else if lam >= 1 - k {
                            (lam + k).div_euclid(2) + (lam + k).rem_euclid(2) + 1
                        } else {
                            1
                        };
                        b = r;
                    } else {
                        if lam > 2 * r - 1 || lam == 2 * r - k - 1 {
                            return Ok(None);
                        }
                        if lam >= 2 * r - k {
                            a = r + 1;
                            b = r + 1;
                        } else if lam >= 1 - k {
                            a = (lam + k).div_euclid(2) + (lam + k).rem_euclid(2) + 1;
                            b = r;
                        } else {
                            a = 1;
                            b = r;
                        }
                    }
                    if a > b {
                        return Ok(None);
                    }
                    let sub_unitary = if odd { lam == 2 * r - 1 } else { lam == 2 * r - 2 };
                    let levels = (a..=b)
                        .map(|j| FiltrationLevel {
                            j,
                            predicate: if j <= r {
                                LevelPredicate {
                                    quantity: LevelQuantity::SoStarDetRow(j as usize),
                                    bound: rat(2 * j - 1) - lambda0,
                                }
                            } else {
                                LevelPredicate {
                                    quantity: LevelQuantity::SoStarDetTail,
                                    bound: rat(2 * r) - lambda0,
                                }
                            },
                            unitary: j == a && sub_unitary,
                        })
                        .collect();
                    Ok(Some(Filtration {
                        lambda: lambda0.clone(),
                        a,
                        b,
                        step: 1,
                        levels,
                        quotient_unitary: if odd { b == r + 1 } else { true },
                    }))
                }
            }
        }
        FiberSpec::Spin { k, .. } => {
            let n = spec.spin_n() as i64;
            let two_k = k.doubled();
            if n % 2 == 0 {
                let s = n / 2;
                if !lambda0.is_integer() || *lambda0 > rat(s - 1) {
                    return Ok(None);
                }
                let lam = to_i64(lambda0);
                let labels: Vec<i64> = if lam >= 1 - two_k { vec![2] } else { vec![1, 2] };
                let levels = spin_levels(&labels, lambda0, n, lam, two_k, s);
                Ok(Some(Filtration {
                    lambda: lambda0.clone(),
                    a: labels[0],
                    b: 2,
                    step: 1,
                    levels,
                    quotient_unitary: true,
                }))
            } else {
                let s = (n - 1) / 2;
                let half_case = (lambda0 + rat2(1, 2)).is_integer()
                    && *lambda0 <= rat2(2 * s - 1, 2);
                let int_case = lambda0.is_integer() && *lambda0 <= rat(-two_k);
                if half_case {
                    let levels = vec![FiltrationLevel {
                        j: 2,
                        predicate: LevelPredicate {
                            quantity: LevelQuantity::SpinRow2,
                            bound: rat2(n, 2) - lambda0,
                        },
                        unitary: *lambda0 == rat2(2 * s - 1, 2),
                    }];
                    Ok(Some(Filtration {
                        lambda: lambda0.clone(),
                        a: 2,
                        b: 2,
                        step: 1,
                        levels,
                        quotient_unitary: true,
                    }))
                } else if int_case {
                    let levels = vec![FiltrationLevel {
                        j: 1,
                        predicate: LevelPredicate {
                            quantity: LevelQuantity::SpinRow1,
                            bound: rat(1) - lambda0,
                        },
                        unitary: lambda0.is_zero() && two_k == 0,
                    }];
                    Ok(Some(Filtration {
                        lambda: lambda0.clone(),
                        a: 1,
                        b: 1,
                        step: 1,
                        levels,
                        quotient_unitary: false,
                    }))
                } else {
                    Ok(None)
                }
            }
        }
        FiberSpec::E7 => {
            if !lambda0.is_integer() || *lambda0 > rat(8) {
                return Ok(None);
            }
            let lam = to_i64(lambda0);
            let a = if lam <= 0 { 1 } else { ceil_i64(&rat2(lam, 4)) + 1 };
            let b = 3;
            let sub_unitary = lam >= 0 && lam % 4 == 0;
            let levels = (a..=b)
                .map(|j| FiltrationLevel {
                    j,
                    predicate: LevelPredicate {
                        quantity: LevelQuantity::ConeRow(j as usize),
                        bound: rat(4 * (j - 1) + 1) - lambda0,
                    },
                    unitary: j == a && sub_unitary,
                })
                .collect();
            Ok(Some(Filtration {
                lambda: lambda0.clone(),
                a,
                b,
                step: 1,
                levels,
                quotient_unitary: true,
            }))
        }
        FiberSpec::E6 { .. } => Err(AnalysisError::NotCovered(String::from(
            "the reducibility classification does not treat the e6 fiber",
        ))),
    }
}

fn spin_levels(
    labels: &[i64],
    lambda0: &Rat,
    n: i64,
    lam: i64,
    two_k: i64,
    s: i64,
) -> Vec<FiltrationLevel> {
    labels
        .iter()
        .map(|&j| FiltrationLevel {
            j,
            predicate: if j == 1 {
                LevelPredicate {
                    quantity: LevelQuantity::SpinRow1,
                    bound: rat(1) - lambda0,
                }
            } else {
                LevelPredicate {
                    quantity: LevelQuantity::SpinRow2,
                    bound: rat2(n, 2) - lambda0,
                }
            },
            unitary: if j == 1 {
                lam == 0 && two_k == 0
            } else {
                lam == s - 1
            },
        })
        .collect()
}

/// Closed-form reducibility of the polynomial model at λ0.
pub fn reducible(
    spec: &GroupSpec,
    fiber: &FiberSpec,
    lambda0: &Rat,
) -> Result<bool, AnalysisError> {
    Ok(filtration_opt(spec, fiber, lambda0)?.is_some())
}

/// The submodule chain at a reducible parameter.
pub fn filtration(
    spec: &GroupSpec,
    fiber: &FiberSpec,
    lambda0: &Rat,
) -> Result<Filtration, AnalysisError> {
    filtration_opt(spec, fiber, lambda0)?.ok_or_else(|| {
        AnalysisError::Irreducible(format!("λ = {lambda0} is an irreducible parameter"))
    })
}

/// Precomputed ratios and kernel coefficients for every K-type up to a
/// degree cutoff; scans over many λ reuse this.
pub struct RatioTable {
    pub entries: Vec<RatioEntry>,
    pub conjectural: bool,
}

pub struct RatioEntry {
    pub ktype: KType,
    pub ratio: FactoredFn,
    pub kernel: FactoredFn,
}

pub fn ratio_table(
    spec: &GroupSpec,
    fiber: &FiberSpec,
    max_degree: u32,
    conjecture: bool,
) -> Result<RatioTable, AnalysisError> {
    let mut entries = Vec::new();
    let mut conjectural = false;
    for ktype in decompose_upto(spec, fiber, max_degree)? {
        let rr = norm_ratio(spec, fiber, &ktype, conjecture)?;
        conjectural |= rr.conjectural;
        entries.push(RatioEntry {
            kernel: rr.ratio.recip(),
            ratio: rr.ratio,
            ktype,
        });
    }
    Ok(RatioTable {
        entries,
        conjectural,
    })
}

/// Outcome of a kernel-coefficient sign scan.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ScanOutcome {
    /// All coefficients of degree ≤ cutoff are nonnegative.
    Compatible,
    /// Some coefficient is strictly negative; the witness K-type.
    NegativeFound(KType),
}

pub fn unitary_scan_table(table: &RatioTable, lambda0: &Rat) -> ScanOutcome {
    for e in &table.entries {
        match e.kernel.sign_at(lambda0) {
            Sign::Negative => return ScanOutcome::NegativeFound(e.ktype.clone()),
            Sign::Pole => unreachable!("kernel coefficients are polynomials"),
            _ => {}
        }
    }
    ScanOutcome::Compatible
}

/// Sign scan of the kernel coefficients of all K-types of degree ≤
/// `max_degree` at λ0. Zero coefficients are compatible (the K-type
/// leaves the kernel of the form).
pub fn unitary_scan(
    spec: &GroupSpec,
    fiber: &FiberSpec,
    lambda0: &Rat,
    max_degree: u32,
    conjecture: bool,
) -> Result<ScanOutcome, AnalysisError> {
    let table = ratio_table(spec, fiber, max_degree, conjecture)?;
    Ok(unitary_scan_table(&table, lambda0))
}

pub fn reducible_scan_table(table: &RatioTable, lambda0: &Rat) -> bool {
    table.entries.iter().any(|e| e.ratio.pole_order(lambda0) > 0)
}

/// Pole-witness reducibility scan over all K-types of degree ≤ `max_degree`.
pub fn reducible_scan(
    spec: &GroupSpec,
    fiber: &FiberSpec,
    lambda0: &Rat,
    max_degree: u32,
    conjecture: bool,
) -> Result<bool, AnalysisError> {
    let table = ratio_table(spec, fiber, max_degree, conjecture)?;
    Ok(reducible_scan_table(&table, lambda0))
}

/// Check, for all K-types of degree ≤ `max_degree`, that membership of the
/// ℓ-th chain level (by its printed inequality) is equivalent to the norm
/// ratio having a pole of order ≤ ℓ-1 at λ0.
pub fn filtration_pole_check(
    spec: &GroupSpec,
    fiber: &FiberSpec,
    lambda0: &Rat,
    max_degree: u32,
    conjecture: bool,
) -> Result<bool, AnalysisError> {
    let filt = filtration(spec, fiber, lambda0)?;
    let table = ratio_table(spec, fiber, max_degree, conjecture)?;
    for e in &table.entries {
        let pole = e.ratio.pole_order(lambda0);
        for (pos, level) in filt.levels.iter().enumerate() {
            let member = level.predicate.holds(fiber, &e.ktype);
            if member != (pole <= pos as i64) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubquotientInfo {
    /// Level label of the chain member whose subquotient this is; `None`
    /// for the top quotient P/M_b.
    pub level: Option<i64>,
    /// Index of the boundary orbit carrying the associated variety.
    pub orbit: usize,
    pub gk_dim: u64,
    pub unitary: bool,
    /// Only the smallest submodule is known irreducible.
    pub irreducible_known: bool,
}

/// Per chain level: the Gelfand-Kirillov dimension of the successive
/// subquotient and the unitarity flags of the closed classification.
pub fn subquotient_report(
    spec: &GroupSpec,
    fiber: &FiberSpec,
    lambda0: &Rat,
) -> Result<Vec<SubquotientInfo>, AnalysisError> {
    let filt = filtration(spec, fiber, lambda0)?;
    let r = spec.rank;
    let mut out = Vec::new();
    for level in filt.levels.iter() {
        let orbit = ((level.j - 1).max(0) as usize).min(r);
        out.push(SubquotientInfo {
            level: Some(level.j),
            orbit,
            gk_dim: gk_dim(spec, orbit),
            unitary: level.unitary,
            irreducible_known: level.j == filt.a,
        });
    }
    out.push(SubquotientInfo {
        level: None,
        orbit: r,
        gk_dim: gk_dim(spec, r),
        unitary: filt.quotient_unitary,
        irreducible_known: false,
    });
    Ok(out)
}

/// The quarter-integer grid {j/4 : -12 ≤ j ≤ 4(p+1)} used by the
/// scan-vs-closed-form agreement checks.
pub fn quarter_grid(spec: &GroupSpec) -> Vec<Rat> {
    let top = 4 * (spec.genus as i64 + 1);
    (-12..=top).map(|j| rat2(j, 4)).collect()
}

/// A provably sufficient degree cutoff for the grid scans: for every grid
/// point and every factor row of the canonical ratio, the cheapest K-type
/// whose row reaches the pole position is costed constructively, and the
/// cutoff dominates the cheapest witness at every point. Deep rows need
/// degree ≈ (row index) × (pole depth) because the partition entries above
/// them must grow in step, which is why a flat cutoff of 8 is not always
/// enough.
pub fn scan_cutoff(spec: &GroupSpec, fiber: &FiberSpec) -> u32 {
    // rows: (shift σ, cost of realizing factor length L in this row)
    type Cost = alloc::boxed::Box<dyn Fn(i64) -> Option<i64>>;
    let mut rows: Vec<(Rat, Cost)> = Vec::new();
    match fiber {
        FiberSpec::Sp { k } => {
            let k = *k;
            for j in 1..=spec.rank as i64 {
                let shift = if j <= k {
                    -rat2(j - 1, 2) + rat(1)
                } else {
                    -rat2(j - 1, 2)
                };
                rows.push((shift, alloc::boxed::Box::new(move |len| Some(j * len))));
            }
        }
        FiberSpec::Su { k } => {
            let (_, s) = spec.su_qs();
            let r0 = spec.rank as i64;
            for j in 1..=s as i64 {
                let kj = k[j as usize - 1];
                let cap = if j > r0 {
                    Some(k[(j - r0) as usize - 1] - kj)
                } else {
                    None
                };
                rows.push((
                    rat(kj - (j - 1)),
                    alloc::boxed::Box::new(move |len| match cap {
                        Some(c) if len > c => None,
                        _ => Some(j * len),
                    }),
                ));
            }
        }
        FiberSpec::SoStar { kind, k } => {
            let r = spec.rank as i64;
            let odd = spec.sostar_s() % 2 == 1;
            let k = *k;
            match kind {
                SoStarKind::SymDual => {
                    rows.push((rat(k), alloc::boxed::Box::new(Some)));
                    for j in 2..=r {
                        rows.push((
                            -rat(2 * (j - 1)),
                            alloc::boxed::Box::new(move |len| Some(j * len)),
                        ));
                    }
                    if odd {
                        rows.push((
                            -rat(2 * r),
                            alloc::boxed::Box::new(move |len| {
                                (len <= k).then_some(r * len)
                            }),
                        ));
                    }
                }
                SoStarKind::SymDet => {
                    let body = if odd { r } else { r - 1 };
                    for j in 1..=body {
                        rows.push((
                            rat(k - 2 * (j - 1)),
                            alloc::boxed::Box::new(move |len| Some(j * len)),
                        ));
                    }
                    if odd {
                        rows.push((
                            rat(1 - 2 * r),
                            alloc::boxed::Box::new(move |len| {
                                (len <= k).then_some(r * len)
                            }),
                        ));
                    } else {
                        rows.push((
                            -rat(2 * (r - 1)),
                            alloc::boxed::Box::new(move |len| Some(r * len)),
                        ));
                    }
                }
            }
        }
        FiberSpec::Spin { k, .. } => {
            let n = spec.spin_n() as i64;
            let two_k = k.doubled();
            rows.push((k.to_rat() + k.to_rat(), alloc::boxed::Box::new(Some)));
            rows.push((
                -rat2(n - 2, 2),
                alloc::boxed::Box::new(move |len| Some(len.max(2 * len - two_k))),
            ));
        }
        FiberSpec::E6 { k } if *k == 0 => {
            rows.push((rat(0), alloc::boxed::Box::new(Some)));
            rows.push((rat(-3), alloc::boxed::Box::new(|len| Some(2 * len))));
        }
        FiberSpec::E6 { .. } => return 8,
        FiberSpec::E7 => {
            for j in 1..=3i64 {
                rows.push((
                    -rat(4 * (j - 1)),
                    alloc::boxed::Box::new(move |len| Some(j * len)),
                ));
            }
        }
    }
    let mut cutoff: i64 = 8;
    for lam in quarter_grid(spec) {
        let mut cheapest: Option<i64> = None;
        for (shift, cost) in &rows {
            let depth = -lam.clone() - shift;
            if depth.is_integer() && !depth.is_negative() {
                let len = to_i64(&depth) + 1;
                if let Some(c) = cost(len) {
                    cheapest = Some(cheapest.map_or(c, |b: i64| b.min(c)));
                }
            }
        }
        if let Some(c) = cheapest {
            cutoff = cutoff.max(c);
        }
    }
    cutoff as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::SpinSign;

    #[test]
    fn gk_dims() {
        let g = GroupSpec::sp(2).unwrap();
        assert_eq!(gk_dim(&g, 0), 0);
        assert_eq!(gk_dim(&g, 1), 2);
        assert_eq!(gk_dim(&g, 2), 3);
        for g in [
            GroupSpec::sp(3).unwrap(),
            GroupSpec::su(2, 4).unwrap(),
            GroupSpec::sostar(5).unwrap(),
            GroupSpec::spin(9).unwrap(),
            GroupSpec::e6(),
            GroupSpec::e7(),
        ] {
            assert_eq!(gk_dim(&g, 0), 0);
            assert_eq!(gk_dim(&g, g.rank), g.dim_p);
            for l in 0..g.rank {
                assert!(gk_dim(&g, l) < gk_dim(&g, l + 1));
            }
        }
    }

    #[test]
    fn unitary_sets() {
        let g = GroupSpec::sp(3).unwrap();
        let u = unitary_set(&g, &FiberSpec::Sp { k: 1 }).unwrap();
        assert_eq!(u.discrete, vec![rat2(1, 2), rat(1)]);
        assert_eq!(u.continuous_min, rat(1));

        let g = GroupSpec::spin(6).unwrap();
        let u = unitary_set(
            &g,
            &FiberSpec::Spin {
                k: Half::ZERO,
                sign: SpinSign::Plus,
            },
        )
        .unwrap();
        assert_eq!(u.discrete, vec![rat(0), rat(2)]);
        assert_eq!(u.continuous_min, rat(2));

        let g = GroupSpec::sostar(6).unwrap();
        let u = unitary_set(
            &g,
            &FiberSpec::SoStar {
                kind: SoStarKind::SymDet,
                k: 2,
            },
        )
        .unwrap();
        assert_eq!(u.discrete, vec![rat(4)]);
        assert_eq!(u.continuous_min, rat(4));

        assert!(unitary_set(&GroupSpec::e6(), &FiberSpec::E6 { k: 0 }).is_err());
    }

    #[test]
    fn scan_examples() {
        let g = GroupSpec::sp(2).unwrap();
        let f = FiberSpec::Sp { k: 0 };
        assert_eq!(
            unitary_scan(&g, &f, &rat2(1, 2), 8, false).unwrap(),
            ScanOutcome::Compatible
        );
        assert!(matches!(
            unitary_scan(&g, &f, &rat2(1, 4), 8, false).unwrap(),
            ScanOutcome::NegativeFound(_)
        ));
        assert_eq!(
            unitary_scan(&g, &f, &rat(5), 8, false).unwrap(),
            ScanOutcome::Compatible
        );
    }

    #[test]
    fn reducibility_examples() {
        let g = GroupSpec::su(2, 3).unwrap();
        let f = FiberSpec::Su { k: vec![0, 0, 0] };
        assert!(reducible(&g, &f, &rat(1)).unwrap());

        let g = GroupSpec::sp(2).unwrap();
        let f = FiberSpec::Sp { k: 0 };
        assert!(!reducible(&g, &f, &rat2(3, 4)).unwrap());

        // SO*(10) det-twisted fiber: the single excluded integer
        let g = GroupSpec::sostar(5).unwrap();
        let f = FiberSpec::SoStar {
            kind: SoStarKind::SymDet,
            k: 1,
        };
        assert!(!reducible(&g, &f, &rat(2)).unwrap());
        assert!(reducible(&g, &f, &rat(3)).unwrap());
        assert!(reducible(&g, &f, &rat(1)).unwrap());
    }

    #[test]
    fn filtration_examples() {
        // chain at a half-integer parameter with a single level
        let g = GroupSpec::sp(3).unwrap();
        let f = FiberSpec::Sp { k: 0 };
        let filt = filtration(&g, &f, &rat(1)).unwrap();
        assert_eq!((filt.a, filt.b, filt.step), (3, 3, 2));
        assert_eq!(filt.levels.len(), 1);
        assert!(filt.quotient_unitary); // 2λ=2 is not ≡ r=3 mod 2

        let g = GroupSpec::spin(8).unwrap();
        let f = FiberSpec::Spin {
            k: Half::ZERO,
            sign: SpinSign::Plus,
        };
        let filt = filtration(&g, &f, &rat(-1)).unwrap();
        assert_eq!(
            filt.levels.iter().map(|l| l.j).collect::<Vec<_>>(),
            vec![1, 2]
        );

        // rank one: the finite-dimensional submodule of polynomials of
        // degree ≤ l sits at λ = -l
        let g = GroupSpec::su(1, 1).unwrap();
        let f = FiberSpec::Su { k: vec![0] };
        for l in 0..4i64 {
            let filt = filtration(&g, &f, &rat(-l)).unwrap();
            assert_eq!(filt.levels.len(), 1);
            let pred = &filt.levels[0].predicate;
            let kts = decompose_upto(&g, &f, 8).unwrap();
            for kt in &kts {
                let member = pred.holds(&f, kt);
                assert_eq!(member, kt.degree as i64 <= l);
            }
        }
    }

    #[test]
    fn filtration_pole_checks() {
        let g = GroupSpec::sp(2).unwrap();
        let f = FiberSpec::Sp { k: 0 };
        assert!(filtration_pole_check(&g, &f, &rat(0), 8, false).unwrap());

        let g = GroupSpec::su(2, 2).unwrap();
        let f = FiberSpec::Su { k: vec![0, 0] };
        assert!(filtration_pole_check(&g, &f, &rat(1), 8, false).unwrap());

        let g = GroupSpec::spin(7).unwrap();
        let f = FiberSpec::Spin {
            k: Half::from_doubled(1),
            sign: SpinSign::Plus,
        };
        assert!(filtration_pole_check(&g, &f, &rat(-1), 8, false).unwrap());
    }

    #[test]
    fn chain_nesting() {
        // levels are nested as K-type sets
        let cases: Vec<(GroupSpec, FiberSpec, Rat)> = vec![
            (GroupSpec::sp(3).unwrap(), FiberSpec::Sp { k: 1 }, rat2(-1, 2)),
            (
                GroupSpec::su(2, 3).unwrap(),
                FiberSpec::Su { k: vec![1, 1, 0] },
                rat(-2),
            ),
            (
                GroupSpec::sostar(5).unwrap(),
                FiberSpec::SoStar {
                    kind: SoStarKind::SymDual,
                    k: 2,
                },
                rat(0),
            ),
            (GroupSpec::e7(), FiberSpec::E7, rat(2)),
        ];
        for (g, f, lam) in cases {
            let filt = filtration(&g, &f, &lam).unwrap();
            let kts = decompose_upto(&g, &f, 8).unwrap();
            for w in filt.levels.windows(2) {
                for kt in &kts {
                    if w[0].predicate.holds(&f, kt) {
                        assert!(
                            w[1].predicate.holds(&f, kt),
                            "levels not nested at {} {:?} λ={lam}",
                            g.label(),
                            f
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn subquotient_reports() {
        let g = GroupSpec::su(1, 1).unwrap();
        let f = FiberSpec::Su { k: vec![0] };
        let rep = subquotient_report(&g, &f, &rat(-2)).unwrap();
        assert_eq!(rep.len(), 2);
        assert_eq!(rep[0].gk_dim, 0);
        assert!(rep[0].irreducible_known);
        assert_eq!(rep[1].gk_dim, 1);
        assert_eq!(rep[1].level, None);

        let g = GroupSpec::sp(2).unwrap();
        let f = FiberSpec::Sp { k: 0 };
        let rep = subquotient_report(&g, &f, &rat(0)).unwrap();
        assert_eq!(rep.last().unwrap().gk_dim, 3);
    }

    #[test]
    fn e6_scans_need_the_conjecture_flag() {
        let g = GroupSpec::e6();
        let f = FiberSpec::E6 { k: 1 };
        assert!(matches!(
            unitary_scan(&g, &f, &rat(13), 4, false),
            Err(AnalysisError::Norms(NormsError::Conjectural { .. }))
        ));
        let table = ratio_table(&g, &f, 6, true).unwrap();
        assert!(table.conjectural);
        // above the convergence threshold everything is positive
        assert_eq!(unitary_scan_table(&table, &rat(13)), ScanOutcome::Compatible);
        // under the conjectural forms, deep negative coefficients do appear
        assert!(matches!(
            unitary_scan_table(&table, &rat2(7, 2)),
            ScanOutcome::NegativeFound(_)
        ));
        // the scalar fiber needs no flag and is never conjectural
        let f0 = FiberSpec::E6 { k: 0 };
        let t0 = ratio_table(&g, &f0, 6, false).unwrap();
        assert!(!t0.conjectural);
        assert!(reducible_scan_table(&t0, &rat(3)));
    }

    #[test]
    fn scan_cutoffs() {
        let g = GroupSpec::sp(2).unwrap();
        assert_eq!(scan_cutoff(&g, &FiberSpec::Sp { k: 0 }), 8);
        // deep second row: the first pole witness for spin(2,7), spinor
        // fiber, at λ = -5/2 sits at degree 11
        let g = GroupSpec::spin(7).unwrap();
        let f = FiberSpec::Spin {
            k: Half::from_doubled(1),
            sign: crate::catalog::SpinSign::Plus,
        };
        assert_eq!(scan_cutoff(&g, &f), 11);
        // third cone row of the 27-dimensional model: degree 12 at λ = 5
        assert_eq!(scan_cutoff(&GroupSpec::e7(), &FiberSpec::E7), 12);
    }

    #[test]
    fn grid_scan_agreement_spot() {
        // one family checked here in full; the acceptance suite covers the rest
        let g = GroupSpec::sp(2).unwrap();
        for k in 0..=1i64 {
            let f = FiberSpec::Sp { k };
            let table = ratio_table(&g, &f, 8, false).unwrap();
            let uset = unitary_set(&g, &f).unwrap();
            for lam in quarter_grid(&g) {
                let scan_ok = unitary_scan_table(&table, &lam) == ScanOutcome::Compatible;
                assert_eq!(scan_ok, uset.contains(&lam), "unitary λ={lam} k={k}");
                let scan_red = reducible_scan_table(&table, &lam);
                assert_eq!(
                    scan_red,
                    reducible(&g, &f, &lam).unwrap(),
                    "reducible λ={lam} k={k}"
                );
            }
        }
    }
}

//! Closed-form norm ratios R(λ), normalizing constants c_λ, and generalized
//! Pochhammer symbols, all as exact factored functions of λ.
//!
//! Every family theorem prints the ratio in two ways (a quotient of
//! generalized Pochhammer symbols and a fully cancelled reciprocal).
//! [`norm_ratio`] builds both independently and checks they agree as
//! factor multisets before returning the canonical value; the reproducing
//! kernel coefficient is its reciprocal.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::arith::{rat, rat2, FactoredFn, Half, Rat};
use crate::catalog::{CatalogError, FiberSpec, GroupSpec, SoStarKind};
use crate::decomp::{KIndex, KType};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NormsError {
    Catalog(CatalogError),
    KTypeMismatch(String),
    /// The closed numerator for this family/fiber is only conjectural and
    /// the conjecture flag is off. The denominator skeleton is proven; the
    /// missing numerator is monic of the given degree.
    Conjectural {
        skeleton: FactoredFn,
        numerator_degree: i64,
    },
    TwoFormMismatch(String),
}

impl fmt::Display for NormsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormsError::Catalog(e) => write!(f, "{e}"),
            NormsError::KTypeMismatch(s) => write!(f, "K-type mismatch: {s}"),
            NormsError::Conjectural {
                skeleton,
                numerator_degree,
            } => write!(
                f,
                "ratio known only up to a monic numerator of degree {numerator_degree} \
                 over the proven skeleton {skeleton}; pass --conjecture to use the \
                 conjectural closed form"
            ),
            NormsError::TwoFormMismatch(s) => write!(f, "printed forms disagree: {s}"),
        }
    }
}

impl From<CatalogError> for NormsError {
    fn from(e: CatalogError) -> Self {
        NormsError::Catalog(e)
    }
}

/// A norm ratio with both printed forms retained. `conjectural` is set
/// only for the E6 fiber with k > 0 under the conjecture flag.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatioResult {
    pub ratio: FactoredFn,
    pub form_a: FactoredFn,
    pub form_b: FactoredFn,
    pub conjectural: bool,
}

fn poch(shift: Rat, len: i64) -> FactoredFn {
    assert!(len >= 0, "Pochhammer length must be nonnegative, got {len}");
    FactoredFn::poch(&shift, len as u32)
}

fn half_len(h: Half) -> i64 {
    h.as_int()
        .expect("Pochhammer length must be an integer half-sum")
}

/// Generalized Pochhammer symbol `(λ)_m = ∏_j (λ - (j-1)d/2)_{m_j}` for the
/// cone attached to `spec`, as a factored polynomial.
pub fn gen_poch(spec: &GroupSpec, m: &[i64]) -> FactoredFn {
    assert!(m.len() <= spec.rank, "partition longer than the rank");
    let mut out = FactoredFn::one();
    for (j, &mj) in m.iter().enumerate() {
        let shift = -rat2(j as i64 * spec.d as i64, 2);
        out = out.mul(&poch(shift, mj));
    }
    out
}

/// Reduce `∏_j Γ(λ + top_j) / ∏_j Γ(λ + bot_j)` to a factored polynomial,
/// when possible: arguments are grouped by the fractional part of the
/// shift and paired off in descending order; each pair contributes a
/// rising factorial. Returns `None` if some pair has a negative or
/// non-integer gap.
pub fn gamma_quotient(top: &[Rat], bot: &[Rat]) -> Option<FactoredFn> {
    if top.len() != bot.len() {
        return None;
    }
    let frac = |x: &Rat| -> Rat { x - x.floor() };
    let mut classes: Vec<Rat> = top.iter().chain(bot.iter()).map(frac).collect();
    classes.sort();
    classes.dedup();
    let mut out = FactoredFn::one();
    for class in classes {
        let mut t: Vec<Rat> = top.iter().filter(|x| frac(x) == class).cloned().collect();
        let mut b: Vec<Rat> = bot.iter().filter(|x| frac(x) == class).cloned().collect();
        if t.len() != b.len() {
            return None;
        }
        t.sort_by(|x, y| y.cmp(x));
        b.sort_by(|x, y| y.cmp(x));
        for (ti, bi) in t.iter().zip(&b) {
            let gap = ti - bi;
            if gap.is_negative() || !gap.is_integer() {
                return None;
            }
            let len: i64 = num_traits::ToPrimitive::to_i64(&gap.to_integer())?;
            out = out.mul(&poch(bi.clone(), len));
        }
    }
    Some(out)
}

/// `Γ_Ω(λ + khat) / Γ_Ω(λ + khat - n/r)` reduced to a polynomial: the
/// normalizing constant of the tube-type corollary.
fn gamma_cone_quotient(spec: &GroupSpec, khat: &[Rat]) -> FactoredFn {
    assert_eq!(khat.len(), spec.rank);
    let shift_nr = rat2(spec.dim_p as i64, 1) / rat(spec.rank as i64);
    let mut top = Vec::new();
    let mut bot = Vec::new();
    for (j, kj) in khat.iter().enumerate() {
        let arg = kj - rat2(j as i64 * spec.d as i64, 2);
        top.push(arg.clone());
        bot.push(arg - shift_nr.clone());
    }
    gamma_quotient(&top, &bot)
        .expect("cone Gamma quotient must reduce to a polynomial for catalog families")
}

fn index_err<T>(what: &str) -> Result<T, NormsError> {
    Err(NormsError::KTypeMismatch(String::from(what)))
}

/// The ratio of the λ-dependent norm to the Fischer norm on the given
/// K-type, as a canonical factored function with both printed forms.
pub fn norm_ratio(
    spec: &GroupSpec,
    fiber: &FiberSpec,
    kt: &KType,
    conjecture: bool,
) -> Result<RatioResult, NormsError> {
    fiber.validate(spec)?;
    let (form_a, form_b, conjectural) = match (fiber, &kt.index) {
        (FiberSpec::Sp { k }, KIndex::Sp { m, kappa }) => {
            let r = spec.rank;
            if m.len() != r || kappa.len() != r || kappa.iter().sum::<i64>() != *k {
                return index_err("sp index shape");
            }
            let mut num = FactoredFn::one();
            for j in 1..=*k {
                num = num.mul(&FactoredFn::linear(-rat2(j - 1, 2)));
            }
            let mut den = FactoredFn::one();
            for j in 1..=r as i64 {
                den = den.mul(&poch(
                    -rat2(j - 1, 2),
                    m[j as usize - 1] + kappa[j as usize - 1],
                ));
            }
            let form_a = num.div(&den);
            let mut den_b = FactoredFn::one();
            for j in 1..=r as i64 {
                let len = m[j as usize - 1] + kappa[j as usize - 1];
                if j <= *k {
                    den_b = den_b.mul(&poch(-rat2(j - 1, 2) + rat(1), len - 1));
                } else {
                    den_b = den_b.mul(&poch(-rat2(j - 1, 2), len));
                }
            }
            (form_a, den_b.recip(), false)
        }
        (FiberSpec::Su { k }, KIndex::Su { m: _, n }) => {
            let (_, s) = spec.su_qs();
            if n.len() != s || n.iter().zip(k).any(|(nj, kj)| nj < kj) {
                return index_err("su index shape");
            }
            let mut num = FactoredFn::one();
            let mut den = FactoredFn::one();
            let mut den_b = FactoredFn::one();
            for j in 0..s {
                num = num.mul(&poch(-rat(j as i64), k[j]));
                den = den.mul(&poch(-rat(j as i64), n[j]));
                den_b = den_b.mul(&poch(-rat(j as i64) + rat(k[j]), n[j] - k[j]));
            }
            (num.div(&den), den_b.recip(), false)
        }
        (FiberSpec::SoStar { kind, k }, KIndex::SoStar { m, kappa }) => {
            let s = spec.sostar_s();
            let r = spec.rank;
            let odd = s % 2 == 1;
            let want = if odd { r + 1 } else { r };
            if m.len() != r || kappa.len() != want || kappa.iter().sum::<i64>() != *k {
                return index_err("sostar index shape");
            }
            match kind {
                SoStarKind::SymDual => {
                    let mut den = FactoredFn::one();
                    for j in 0..r {
                        den = den.mul(&poch(-rat(2 * j as i64), m[j] + kappa[j]));
                    }
                    if odd {
                        den = den.mul(&poch(-rat(2 * r as i64), kappa[r]));
                    }
                    let form_a = poch(rat(0), *k).div(&den);
                    let mut den_b = poch(rat(*k), m[0] + kappa[0] - k);
                    for j in 1..r {
                        den_b = den_b.mul(&poch(-rat(2 * j as i64), m[j] + kappa[j]));
                    }
                    if odd {
                        den_b = den_b.mul(&poch(-rat(2 * r as i64), kappa[r]));
                    }
                    (form_a, den_b.recip(), false)
                }
                SoStarKind::SymDet => {
                    let top = if odd { r } else { r - 1 };
                    let mut num = FactoredFn::one();
                    for j in 0..top {
                        num = num.mul(&poch(-rat(2 * j as i64), *k));
                    }
                    let mut den = FactoredFn::one();
                    for j in 0..r {
                        den = den.mul(&poch(-rat(2 * j as i64), m[j] - kappa[j] + k));
                    }
                    if odd {
                        den = den.mul(&poch(rat(1 - 2 * r as i64), k - kappa[r]));
                    }
                    let form_a = num.div(&den);
                    let mut den_b = FactoredFn::one();
                    for j in 0..(r - 1) {
                        den_b = den_b.mul(&poch(rat(*k - 2 * j as i64), m[j] - kappa[j]));
                    }
                    if odd {
                        den_b = den_b.mul(&poch(rat(*k - 2 * (r - 1) as i64), m[r - 1] - kappa[r - 1]));
                        den_b = den_b.mul(&poch(rat(1 - 2 * r as i64), k - kappa[r]));
                    } else {
                        den_b = den_b.mul(&poch(-rat(2 * (r - 1) as i64), m[r - 1] - kappa[r - 1] + k));
                    }
                    (form_a, den_b.recip(), false)
                }
            }
        }
        (FiberSpec::Spin { k, .. }, KIndex::Spin { m, l }) => {
            let n = spec.spin_n() as i64;
            let num = poch(rat(0), half_len(*k + *k));
            let den = poch(rat(0), m[0] + half_len(*k + *l)).mul(&poch(
                -rat2(n - 2, 2),
                m[1] + half_len(*k - *l),
            ));
            let form_a = num.div(&den);
            let den_b = poch(k.to_rat() + k.to_rat(), m[0] - half_len(*k - *l)).mul(&poch(
                -rat2(n - 2, 2),
                m[1] + half_len(*k - *l),
            ));
            (form_a, den_b.recip(), false)
        }
        (FiberSpec::E6 { k }, KIndex::E6 { m, kappa }) => {
            let [k1, k2, k3, k4] = *kappa;
            if k1 + k2 + k3 + k4 != *k {
                return index_err("e6 index shape");
            }
            let (m1, m2) = (m[0], m[1]);
            if *k > 0 && !conjecture {
                let skeleton = poch(rat(*k), m1 + k1 + k2 - k)
                    .mul(&poch(rat(*k - 3), m2 + k1 + k3 - k))
                    .mul(&poch(rat(-4), *k))
                    .mul(&poch(rat(-7), *k))
                    .recip();
                return Err(NormsError::Conjectural {
                    skeleton,
                    numerator_degree: 2 * k1 + k2 + k3,
                });
            }
            let num = poch(rat(0), *k).mul(&poch(rat(-3), *k));
            let den = poch(rat(0), m1 + k1 + k2)
                .mul(&poch(rat(-3), m2 + k1 + k3))
                .mul(&poch(rat(-4), k2 + k3 + k4))
                .mul(&poch(rat(-7), k4));
            let den_b = poch(rat(*k), m1 + k1 + k2 - k)
                .mul(&poch(rat(*k - 3), m2 + k1 + k3 - k))
                .mul(&poch(rat(-4), k2 + k3 + k4))
                .mul(&poch(rat(-7), k4));
            (num.div(&den), den_b.recip(), *k > 0)
        }
        (FiberSpec::E7, KIndex::Cone { m }) => {
            let g = gen_poch(spec, m);
            (g.recip(), gen_poch(spec, m).recip(), false)
        }
        _ => return index_err("index does not match the fiber family"),
    };
    let ratio = form_a.simplify();
    if ratio != form_b.simplify() {
        return Err(NormsError::TwoFormMismatch(format!(
            "{form_a} vs {form_b}"
        )));
    }
    Ok(RatioResult {
        ratio,
        form_a,
        form_b,
        conjectural,
    })
}

/// The normalizing constant c_λ making the norm of constants fiber-normed:
/// always a factored polynomial in λ (every Γ_Ω quotient in the closed
/// forms telescopes).
pub fn normalizing_const(spec: &GroupSpec, fiber: &FiberSpec) -> Result<FactoredFn, NormsError> {
    fiber.validate(spec)?;
    Ok(match fiber {
        FiberSpec::Sp { k } => {
            let khat: Vec<Rat> = (0..spec.rank)
                .map(|j| if (j as i64) < *k { rat(1) } else { rat(0) })
                .collect();
            gamma_cone_quotient(spec, &khat)
        }
        FiberSpec::Su { k } => {
            let (q, _) = spec.su_qs();
            let mut out = FactoredFn::one();
            for (j, kj) in k.iter().enumerate() {
                out = out.mul(&poch(rat(kj - j as i64 - q as i64), q as i64));
            }
            out
        }
        FiberSpec::SoStar { kind, k } => {
            let s = spec.sostar_s();
            let r = spec.rank;
            if s.is_multiple_of(2) {
                let khat: Vec<Rat> = match kind {
                    SoStarKind::SymDual => (0..r)
                        .map(|j| if j == 0 { rat(*k) } else { rat(0) })
                        .collect(),
                    SoStarKind::SymDet => (0..r)
                        .map(|j| if j < r - 1 { rat(*k) } else { rat(0) })
                        .collect(),
                };
                gamma_cone_quotient(spec, &khat)
            } else {
                let r = r as i64;
                match kind {
                    SoStarKind::SymDual => {
                        let mut out = FactoredFn::linear(-rat(2 * r + 1))
                            .mul(&poch(rat(*k - 2 * r), 2 * r));
                        for j in 2..=r {
                            out = out.mul(&poch(-rat(2 * r + 1 + 2 * (j - 1)), 2 * r + 1));
                        }
                        out
                    }
                    SoStarKind::SymDet => {
                        let mut out = FactoredFn::one();
                        for j in 1..r {
                            out = out.mul(&poch(rat(*k - (2 * r + 1) - 2 * (j - 1)), 2 * r + 1));
                        }
                        out.mul(&poch(rat(1 - 4 * r), 2 * r))
                            .mul(&FactoredFn::linear(rat(*k - 2 * r + 1)))
                    }
                }
            }
        }
        FiberSpec::Spin { k, .. } => {
            let khat = [k.to_rat() + k.to_rat(), rat(0)];
            gamma_cone_quotient(spec, &khat)
        }
        FiberSpec::E6 { k } => poch(rat(*k - 7), 7)
            .mul(&FactoredFn::linear(rat(-8)))
            .mul(&poch(rat(-11), 7))
            .mul(&FactoredFn::linear(rat(*k - 4))),
        FiberSpec::E7 => gamma_cone_quotient(spec, &[rat(0), rat(0), rat(0)]),
    })
}

/// Coefficient of the K-type's kernel summand in the reproducing kernel
/// expansion: the reciprocal of the norm ratio.
pub fn kernel_coeff(
    spec: &GroupSpec,
    fiber: &FiberSpec,
    kt: &KType,
    conjecture: bool,
) -> Result<FactoredFn, NormsError> {
    Ok(norm_ratio(spec, fiber, kt, conjecture)?.ratio.recip())
}

//! Independent brute-force and numeric verifications.
//!
//! Everything in the core crate is exact; this module supplies the checks
//! that validate those closed forms against independent routes: graded
//! dimension counts, the cone Gamma function evaluated in floating point,
//! direct quadrature of the rank-one weighted inner product, the
//! dimension-weighted recurrence behind the e6 normalizing constant, and
//! the scalar-embedding consistency for SO*(4r+2).

use hwnorm_core::arith::{rat, rat2, Eval, FactoredFn, Half, Rat};
use hwnorm_core::catalog::{FiberSpec, GroupSpec, SoStarKind, SpinSign};
use hwnorm_core::decomp::{decompose, decompose_upto, fiber_dim, ktype_dim, KIndex};
use hwnorm_core::norms::{gen_poch, norm_ratio};
use hwnorm_core::partitions::{binomial, weyl_dim_so};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use statrs::function::gamma::ln_gamma;

/// Result of one named check. `passed` holds exactly when no witnesses of
/// failure were recorded.
#[derive(Clone, Debug)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub witnesses: Vec<String>,
}

impl CheckReport {
    fn finish(name: String, witnesses: Vec<String>) -> CheckReport {
        CheckReport {
            passed: witnesses.is_empty(),
            name,
            witnesses,
        }
    }
}

/// The (group, fiber) pairs every suite exercises.
#[allow(clippy::vec_init_then_push)]
pub fn standard_configs() -> Vec<(GroupSpec, FiberSpec)> {
    let mut out: Vec<(GroupSpec, FiberSpec)> = Vec::new();
    out.push((GroupSpec::sp(2).unwrap(), FiberSpec::Sp { k: 0 }));
    out.push((GroupSpec::sp(2).unwrap(), FiberSpec::Sp { k: 1 }));
    out.push((GroupSpec::sp(3).unwrap(), FiberSpec::Sp { k: 2 }));
    out.push((GroupSpec::su(2, 2).unwrap(), FiberSpec::Su { k: vec![2, 1] }));
    out.push((
        GroupSpec::su(1, 3).unwrap(),
        FiberSpec::Su { k: vec![1, 1, 0] },
    ));
    for kind in [SoStarKind::SymDual, SoStarKind::SymDet] {
        out.push((GroupSpec::sostar(4).unwrap(), FiberSpec::SoStar { kind, k: 2 }));
        out.push((GroupSpec::sostar(5).unwrap(), FiberSpec::SoStar { kind, k: 1 }));
    }
    for sign in [SpinSign::Plus, SpinSign::Minus] {
        out.push((
            GroupSpec::spin(6).unwrap(),
            FiberSpec::Spin {
                k: Half::from_int(1),
                sign,
            },
        ));
    }
    out.push((
        GroupSpec::spin(7).unwrap(),
        FiberSpec::Spin {
            k: Half::from_doubled(1),
            sign: SpinSign::Plus,
        },
    ));
    out.push((GroupSpec::e6(), FiberSpec::E6 { k: 0 }));
    out.push((GroupSpec::e6(), FiberSpec::E6 { k: 1 }));
    out.push((GroupSpec::e7(), FiberSpec::E7));
    out
}

/// Per-degree dimension identity: the K-types at degree N, with
/// multiplicities, fill a space of dimension C(N+n-1, N) · dim V.
pub fn graded_dim_check(spec: &GroupSpec, fiber: &FiberSpec, max_degree: u32) -> CheckReport {
    let name = format!("graded-dim {} {}", spec.label(), fiber.label());
    let mut witnesses = Vec::new();
    let dim_v = fiber_dim(spec, fiber);
    for deg in 0..=max_degree {
        let kts = match decompose(spec, fiber, deg) {
            Ok(k) => k,
            Err(e) => {
                witnesses.push(format!("degree {deg}: {e}"));
                continue;
            }
        };
        let mut lhs = BigUint::from(0u32);
        for kt in &kts {
            lhs += BigUint::from(kt.multiplicity) * ktype_dim(spec, kt);
        }
        let rhs = binomial(deg as u64 + spec.dim_p - 1, deg as u64) * dim_v.clone();
        if lhs != rhs {
            witnesses.push(format!("degree {deg}: sum {lhs} != expected {rhs}"));
        }
    }
    CheckReport::finish(name, witnesses)
}

/// The two printed forms of every ratio agree as canonical factored
/// functions.
pub fn two_form_check(
    spec: &GroupSpec,
    fiber: &FiberSpec,
    max_degree: u32,
    conjecture: bool,
) -> CheckReport {
    let name = format!("two-form {} {}", spec.label(), fiber.label());
    let mut witnesses = Vec::new();
    match decompose_upto(spec, fiber, max_degree) {
        Ok(kts) => {
            for kt in kts {
                match norm_ratio(spec, fiber, &kt, conjecture) {
                    Ok(rr) => {
                        if rr.form_a.simplify() != rr.form_b.simplify() {
                            witnesses.push(format!(
                                "degree {}: {} vs {}",
                                kt.degree, rr.form_a, rr.form_b
                            ));
                        }
                    }
                    Err(e) => witnesses.push(format!("degree {}: {e}", kt.degree)),
                }
            }
        }
        Err(e) => witnesses.push(e.to_string()),
    }
    CheckReport::finish(name, witnesses)
}

fn poch_value(at: &Rat, shift: Rat, len: i64) -> Rat {
    let mut v = rat(1);
    for t in 0..len {
        v *= at + shift.clone() + rat(t);
    }
    v
}

/// The so(8)-dimension-weighted double sum against the closed normalizing
/// constant for the e6 fiber: exact rational equality at each sample.
pub fn e6_recurrence_check(k: i64, samples: &[Rat]) -> CheckReport {
    let name = format!("e6-recurrence k={k}");
    let mut witnesses = Vec::new();
    let dim_v = binomial(k as u64 + 9, 9) - binomial(k as u64 + 7, 9);
    let dim_v: Rat = rat(dim_v.to_i64().expect("small"));
    for lambda in samples {
        // F(λ,k) = Σ_{k ≥ k1 ≥ k2 ≥ 0} w(k1-k2) / ((λ+k1-8)_8 (λ+k2-11)_8)
        let mut sum = rat(0);
        for k1 in 0..=k {
            for k2 in 0..=k1 {
                let j = k1 - k2;
                let w = weyl_dim_so(&[Half::from_doubled(j); 4], 8);
                let w = rat(w.to_i64().expect("small"));
                let den = poch_value(lambda, rat(k1 - 8), 8) * poch_value(lambda, rat(k2 - 11), 8);
                sum += w / den;
            }
        }
        // closed form: F(λ,k) = dim V / ((λ-7+k)_7 (λ-8) (λ-11)_7 (λ-4+k))
        let closed_den = poch_value(lambda, rat(k - 7), 7)
            * (lambda + rat(-8))
            * poch_value(lambda, rat(-11), 7)
            * (lambda + rat(k - 4));
        if sum.clone() * closed_den != dim_v {
            witnesses.push(format!("λ={lambda}: weighted sum disagrees with closed form"));
        }
    }
    CheckReport::finish(name, witnesses)
}

/// The SO*(4r+2) normalizing constants against their dimension-weighted
/// Γ-quotient sums, exact at each sample: the symmetric-power fiber splits
/// over the tube subalgebra into k+1 pieces of dimension C(2r+l-1, l), and
/// the closed constants must invert the weighted average.
pub fn sostar_odd_const_check(r: usize, k: i64, samples: &[Rat]) -> CheckReport {
    use hwnorm_core::norms::normalizing_const;
    let name = format!("sostar-odd-const r={r} k={k}");
    let mut witnesses = Vec::new();
    let spec = GroupSpec::sostar(2 * r + 1).unwrap();
    let ri = r as i64;
    let dim_v = rat(binomial(2 * r as u64 + k as u64, k as u64)
        .to_i64()
        .expect("small"));
    let weight =
        |l: i64| rat(binomial((2 * ri + l - 1) as u64, l as u64).to_i64().expect("small"));
    let mut kinds = vec![(SoStarKind::SymDual, true)];
    if k >= 1 {
        kinds.push((SoStarKind::SymDet, true));
    }
    for (kind, _) in kinds {
        let fiber = FiberSpec::SoStar { kind, k };
        let c = match normalizing_const(&spec, &fiber) {
            Ok(c) => c,
            Err(e) => {
                witnesses.push(e.to_string());
                continue;
            }
        };
        for lambda in samples {
            let mut sum = rat(0);
            for l in 0..=k {
                // Γ_Ω(λ + khat_l - n/r) / Γ_Ω(λ + khat_l), khat_l the
                // restricted label of the l-th tube constituent
                let q = match kind {
                    SoStarKind::SymDual => {
                        let mut v = poch_value(lambda, rat(l - (2 * ri + 1)), 2 * ri + 1);
                        for j in 2..=ri {
                            v *= poch_value(lambda, rat(-(2 * ri + 1) - 2 * (j - 1)), 2 * ri + 1);
                        }
                        v
                    }
                    SoStarKind::SymDet => {
                        let mut v = poch_value(lambda, rat(k - l - (4 * ri - 1)), 2 * ri + 1);
                        for j in 1..ri {
                            v *= poch_value(lambda, rat(k - (2 * ri + 1) - 2 * (j - 1)), 2 * ri + 1);
                        }
                        v
                    }
                };
                sum += weight(l) / q;
            }
            let closed = match c.evaluate(lambda) {
                Eval::Value(v) => v,
                _ => {
                    witnesses.push(format!("λ={lambda}: sample hits a zero or pole"));
                    continue;
                }
            };
            if sum * closed != dim_v {
                witnesses.push(format!(
                    "{:?} λ={lambda}: weighted sum does not invert the closed constant",
                    kind
                ));
            }
        }
    }
    CheckReport::finish(name, witnesses)
}

#[allow(clippy::too_many_arguments)]
fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        return left + right + (left + right - whole) / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, tol / 2.0, depth - 1)
        + simpson(f, m, b, fm, frm, fb, tol / 2.0, depth - 1)
}

fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    simpson(&f, a, b, fa, fm, fb, tol, 40)
}

/// Direct radial quadrature of the rank-one weighted norm of monomials
/// against m!/(λ)_m.
pub fn su11_integral_check(lambda0: &Rat, m_max: u32, tol: f64) -> CheckReport {
    let name = format!("su11-integral λ={lambda0}");
    let mut witnesses = Vec::new();
    assert!(*lambda0 >= rat(2), "quadrature wants λ ≥ 2");
    let lam = lambda0.to_f64().expect("finite");
    // tail of ∫_{1-ε}^1 2 r^{2m+1} (1-r²)^{λ-2} dr is below 2^{λ-1} ε^{λ-1}
    let eps = 1e-6;
    for m in 0..=m_max {
        let integrand = |r: f64| 2.0 * r.powi(2 * m as i32 + 1) * (1.0 - r * r).powf(lam - 2.0);
        let integral = integrate(integrand, 0.0, 1.0 - eps, 1e-12);
        let numeric = (lam - 1.0) * integral;
        // m!/(λ)_m exactly, then to float
        let exact = {
            let mut v = rat(1);
            for t in 1..=m as i64 {
                v *= rat(t);
            }
            let den = poch_value(lambda0, rat(0), m as i64);
            v / den
        };
        let exact = exact.to_f64().expect("finite");
        if (numeric - exact).abs() > tol {
            witnesses.push(format!(
                "m={m}: quadrature {numeric} vs exact {exact} (|Δ|={})",
                (numeric - exact).abs()
            ));
        }
    }
    CheckReport::finish(name, witnesses)
}

/// Norm ratios for the SO*(4r+2) symmetric-power fiber factor through the
/// scalar model of SO*(4r+4): the ratio equals (λ)_k times the reciprocal
/// cone Pochhammer of the embedded label.
pub fn embedding_check(r: usize, k: i64, max_degree: u32) -> CheckReport {
    let name = format!("embedding r={r} k={k}");
    let mut witnesses = Vec::new();
    let small = GroupSpec::sostar(2 * r + 1).unwrap();
    let big = GroupSpec::sostar(2 * r + 2).unwrap();
    let fiber = FiberSpec::SoStar {
        kind: SoStarKind::SymDual,
        k,
    };
    match decompose_upto(&small, &fiber, max_degree) {
        Ok(kts) => {
            for kt in kts {
                let KIndex::SoStar { m, kappa } = &kt.index else {
                    unreachable!()
                };
                // embedded scalar label: (m_1+κ_1, ..., m_r+κ_r, κ_{r+1})
                let mut label: Vec<i64> = m.iter().zip(kappa).map(|(a, b)| a + b).collect();
                label.push(kappa[r]);
                if !hwnorm_core::partitions::is_weakly_decreasing(&label) {
                    witnesses.push(format!("embedded label {label:?} not dominant"));
                    continue;
                }
                let expected = FactoredFn::poch(&rat(0), k as u32)
                    .mul(&gen_poch(&big, &label).recip())
                    .simplify();
                match norm_ratio(&small, &fiber, &kt, false) {
                    Ok(rr) => {
                        if rr.ratio != expected {
                            witnesses.push(format!(
                                "label {label:?}: {} vs embedded {}",
                                rr.ratio, expected
                            ));
                        }
                    }
                    Err(e) => witnesses.push(e.to_string()),
                }
            }
        }
        Err(e) => witnesses.push(e.to_string()),
    }
    CheckReport::finish(name, witnesses)
}

/// log Γ_Ω(s) = (n_T - r)/2 · log 2π + Σ_j log Γ(s_j - (j-1)d/2),
/// floating point, for positive arguments.
pub fn gamma_omega_log(spec: &GroupSpec, s: &[f64]) -> Result<f64, String> {
    if s.len() != spec.rank {
        return Err(format!("need {} arguments, got {}", spec.rank, s.len()));
    }
    let mut total = (spec.dim_tube as f64 - spec.rank as f64) / 2.0
        * (2.0 * core::f64::consts::PI).ln();
    for (j, &sj) in s.iter().enumerate() {
        let arg = sj - j as f64 * spec.d as f64 / 2.0;
        if arg <= 0.0 {
            return Err(format!("argument {arg} outside the cone domain"));
        }
        total += ln_gamma(arg);
    }
    Ok(total)
}

/// exp(log Γ_Ω(λ+m) - log Γ_Ω(λ)) against the exact cone Pochhammer value.
pub fn gamma_poch_numeric_check(
    spec: &GroupSpec,
    lambda0: &Rat,
    m: &[i64],
    tol: f64,
) -> CheckReport {
    let name = format!("gamma-poch {} λ={lambda0} m={m:?}", spec.label());
    let mut witnesses = Vec::new();
    let lam = lambda0.to_f64().expect("finite");
    let base: Vec<f64> = vec![lam; spec.rank];
    let mut shifted = base.clone();
    for (j, &mj) in m.iter().enumerate() {
        shifted[j] += mj as f64;
    }
    match (gamma_omega_log(spec, &shifted), gamma_omega_log(spec, &base)) {
        (Ok(top), Ok(bot)) => {
            let numeric = (top - bot).exp();
            let exact = match gen_poch(spec, m).evaluate(lambda0) {
                Eval::Value(v) => v.to_f64().expect("finite"),
                Eval::Zero => 0.0,
                Eval::Pole => {
                    witnesses.push("cone Pochhammer has a pole at the sample".into());
                    return CheckReport::finish(name, witnesses);
                }
            };
            if (numeric - exact).abs() > tol * exact.abs().max(1.0) {
                witnesses.push(format!("numeric {numeric} vs exact {exact}"));
            }
        }
        (Err(e), _) | (_, Err(e)) => witnesses.push(e),
    }
    CheckReport::finish(name, witnesses)
}

/// Named suites for the `check` subcommand.
pub fn run_suite(suite: &str) -> Result<Vec<CheckReport>, String> {
    let mut out = Vec::new();
    let known = [
        "graded", "twoform", "e6", "su11", "embedding", "gamma", "cnorm", "all",
    ];
    if !known.contains(&suite) {
        return Err(format!(
            "unknown suite \"{suite}\"; expected one of {}",
            known.join(", ")
        ));
    }
    if suite == "graded" || suite == "all" {
        for (spec, fiber) in standard_configs() {
            out.push(graded_dim_check(&spec, &fiber, 6));
        }
    }
    if suite == "twoform" || suite == "all" {
        for (spec, fiber) in standard_configs() {
            let conj = matches!(fiber, FiberSpec::E6 { k } if k > 0);
            out.push(two_form_check(&spec, &fiber, 6, conj));
        }
    }
    if suite == "e6" || suite == "all" {
        let samples = [rat(13), rat2(27, 2), rat(15)];
        for k in 0..=3 {
            out.push(e6_recurrence_check(k, &samples));
        }
    }
    if suite == "su11" || suite == "all" {
        for lambda in [3, 4] {
            out.push(su11_integral_check(&rat(lambda), 5, 1e-6));
        }
    }
    if suite == "embedding" || suite == "all" {
        for r in [1usize, 2] {
            for k in 0..=2 {
                out.push(embedding_check(r, k, 4));
            }
        }
    }
    if suite == "gamma" || suite == "all" {
        let sp2 = GroupSpec::sp(2).unwrap();
        out.push(gamma_poch_numeric_check(&sp2, &rat(5), &[2, 1], 1e-9));
        out.push(gamma_poch_numeric_check(&sp2, &rat(5), &[0, 0], 1e-9));
        out.push(gamma_poch_numeric_check(&GroupSpec::e7(), &rat(20), &[1, 1, 1], 1e-9));
    }
    if suite == "cnorm" || suite == "all" {
        for r in [1usize, 2] {
            let samples = [rat(4 * r as i64 + 2), rat2(8 * r as i64 + 5, 2)];
            for k in 0..=3 {
                out.push(sostar_odd_const_check(r, k, &samples));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_dims_pass_on_probe_configs() {
        let r = graded_dim_check(&GroupSpec::sp(2).unwrap(), &FiberSpec::Sp { k: 1 }, 4);
        assert!(r.passed, "{:?}", r.witnesses);
        let r = graded_dim_check(&GroupSpec::e6(), &FiberSpec::E6 { k: 0 }, 3);
        assert!(r.passed, "{:?}", r.witnesses);
    }

    #[test]
    fn e6_recurrence_small() {
        // k=0, λ=13: single term, both sides 1/((6)_7 · 5 · (2)_7 · 9)
        let r = e6_recurrence_check(0, &[rat(13)]);
        assert!(r.passed, "{:?}", r.witnesses);
        let r = e6_recurrence_check(1, &[rat2(27, 2)]);
        assert!(r.passed, "{:?}", r.witnesses);
    }

    #[test]
    fn su11_quadrature() {
        // λ=3, m=2: 2/((3)(4)) = 1/6
        let r = su11_integral_check(&rat(3), 2, 1e-6);
        assert!(r.passed, "{:?}", r.witnesses);
    }

    #[test]
    fn sostar_odd_constants_invert_weighted_sums() {
        for r in [1usize, 2] {
            for k in 0..=3 {
                let samples = [rat(4 * r as i64 + 2), rat2(8 * r as i64 + 5, 2)];
                let rep = sostar_odd_const_check(r, k, &samples);
                assert!(rep.passed, "r={r} k={k}: {:?}", rep.witnesses);
            }
        }
    }

    #[test]
    fn embedding_small() {
        let r = embedding_check(1, 1, 3);
        assert!(r.passed, "{:?}", r.witnesses);
        let r = embedding_check(2, 0, 4);
        assert!(r.passed, "{:?}", r.witnesses);
    }

    #[test]
    fn gamma_identity() {
        // rank 1 reduces to a single log Γ
        let g = GroupSpec::sp(1).unwrap();
        let v = gamma_omega_log(&g, &[3.0]).unwrap();
        assert!((v - ln_gamma(3.0)).abs() < 1e-12);
        // sp(2) at (3,3): ½ log 2π + log Γ(3) + log Γ(5/2)
        let g = GroupSpec::sp(2).unwrap();
        let v = gamma_omega_log(&g, &[3.0, 3.0]).unwrap();
        let expect = 0.5 * (2.0 * std::f64::consts::PI).ln() + ln_gamma(3.0) + ln_gamma(2.5);
        assert!((v - expect).abs() < 1e-12);
        let r = gamma_poch_numeric_check(&GroupSpec::sp(2).unwrap(), &rat(5), &[2, 1], 1e-9);
        assert!(r.passed, "{:?}", r.witnesses);
    }
}

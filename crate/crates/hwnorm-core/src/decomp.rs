//! Graded K-type decomposition of the polynomial model P(p+) ⊗ V.
//!
//! Each supported family has a closed decomposition rule: the space of
//! V-valued polynomials splits into K-irreducibles indexed by a partition m
//! (the polynomial grading) together with family-specific secondary data
//! (a 0/1 vector, a bounded composition, a spin shift l, or a second
//! signature n). Everything here enumerates those labels, with
//! multiplicities, at a fixed polynomial degree.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::arith::{rat2, Half, Rat};
use crate::catalog::{CatalogError, Family, FiberSpec, GroupSpec, SoStarKind, SpinSign};
use crate::partitions::{
    binomial, iter_partitions, lr_coefficient, pieri_sym, pieri_wedge_pairs, so_tensor_minuscule,
    weyl_dim_e6, weyl_dim_gl, weyl_dim_so,
};

/// The generating data of a K-type, family by family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum KIndex {
    /// Scalar families: the partition m alone.
    Cone { m: Vec<i64> },
    /// Sp(r,R): partition m and the 0/1 vector κ with |κ| = k.
    Sp { m: Vec<i64>, kappa: Vec<i64> },
    /// SU(q,s): partition m (length min(q,s)) and signature n (length s).
    Su { m: Vec<i64>, n: Vec<i64> },
    /// SO*(2s): partition m (length r) and composition κ (length r for
    /// even s, r+1 for odd s).
    SoStar { m: Vec<i64>, kappa: Vec<i64> },
    /// Spin(2,n): partition m of length 2 and the shift l, |l| ≤ k.
    Spin { m: [i64; 2], l: Half },
    /// E6 fiber: partition m of length 2 and κ = (k1,k2,k3,k4).
    E6 { m: [i64; 2], kappa: [i64; 4] },
}

/// The printed highest/lowest weight label of a K-type.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum KSignature {
    /// A GL signature (dualized where the family theorem dualizes).
    Gl(Vec<Half>),
    /// SU: the pair (m, n) on the two unitary factors.
    GlPair(Vec<i64>, Vec<i64>),
    /// A rotation character m0 together with an so(n) signature.
    SoPair { m0: Rat, v: Vec<Half> },
    /// Scalar families: the cone partition itself.
    Cone(Vec<i64>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KType {
    pub degree: u32,
    pub index: KIndex,
    pub signature: KSignature,
    pub multiplicity: u64,
}

/// All K-types of P(p+) ⊗ V at polynomial degree exactly `degree`,
/// in deterministic order.
pub fn decompose(
    spec: &GroupSpec,
    fiber: &FiberSpec,
    degree: u32,
) -> Result<Vec<KType>, CatalogError> {
    fiber.validate(spec)?;
    let deg = degree as i64;
    let mut out = Vec::new();
    match (spec.family, fiber) {
        (Family::Sp, FiberSpec::Sp { k }) => {
            for m in iter_partitions(spec.rank, deg) {
                for (sum, kappa) in pieri_wedge_pairs(&m, *k) {
                    let sig: Vec<Half> = m
                        .iter()
                        .zip(&kappa)
                        .map(|(a, b)| Half::from_int(2 * a + b))
                        .collect();
                    debug_assert_eq!(sum.len(), m.len());
                    out.push(KType {
                        degree,
                        index: KIndex::Sp {
                            m: m.clone(),
                            kappa,
                        },
                        signature: KSignature::Gl(sig),
                        multiplicity: 1,
                    });
                }
            }
        }
        (Family::Su, FiberSpec::Su { k }) => {
            let (q, s) = spec.su_qs();
            let _ = q;
            let ksum: i64 = k.iter().sum();
            for m in iter_partitions(spec.rank, deg) {
                for n in iter_partitions(s, deg + ksum) {
                    let c = lr_coefficient(&n, &m, k);
                    if c > 0 {
                        out.push(KType {
                            degree,
                            index: KIndex::Su {
                                m: m.clone(),
                                n: n.clone(),
                            },
                            signature: KSignature::GlPair(m.clone(), n),
                            multiplicity: c,
                        });
                    }
                }
            }
        }
        (Family::SoStar, FiberSpec::SoStar { kind, k }) => {
            let s = spec.sostar_s();
            let r = spec.rank;
            let odd = s % 2 == 1;
            for m in iter_partitions(r, deg) {
                let mut ext = m.clone();
                if odd {
                    ext.push(0);
                }
                match kind {
                    SoStarKind::SymDual => {
                        for (_, kappa) in pieri_sym(&ext, *k, None) {
                            let mut sig: Vec<Half> = Vec::with_capacity(s);
                            for j in 0..r {
                                sig.push(Half::from_int(m[j] + kappa[j]));
                                sig.push(Half::from_int(m[j]));
                            }
                            if odd {
                                sig.push(Half::from_int(kappa[r]));
                            }
                            out.push(KType {
                                degree,
                                index: KIndex::SoStar {
                                    m: m.clone(),
                                    kappa,
                                },
                                signature: KSignature::Gl(sig),
                                multiplicity: 1,
                            });
                        }
                    }
                    SoStarKind::SymDet => {
                        let revneg: Vec<i64> = ext.iter().rev().map(|x| -x).collect();
                        for (_, kp) in pieri_sym(&revneg, *k, None) {
                            let kappa: Vec<i64> = kp.iter().rev().copied().collect();
                            let mut sig: Vec<Half> = Vec::with_capacity(s);
                            for j in 0..r {
                                sig.push(Half::from_doubled(2 * m[j] + k));
                                sig.push(Half::from_doubled(2 * (m[j] - kappa[j]) + k));
                            }
                            if odd {
                                sig.push(Half::from_doubled(-2 * kappa[r] + k));
                            }
                            out.push(KType {
                                degree,
                                index: KIndex::SoStar {
                                    m: m.clone(),
                                    kappa,
                                },
                                signature: KSignature::Gl(sig),
                                multiplicity: 1,
                            });
                        }
                    }
                }
            }
        }
        (Family::Spin, FiberSpec::Spin { k, sign }) => {
            let n = spec.spin_n();
            let plus = *sign == SpinSign::Plus;
            for m in iter_partitions(2, deg) {
                let diff = m[0] - m[1];
                for v in so_tensor_minuscule(diff, *k, plus, n).map_err(CatalogError)? {
                    let l = v[0] - Half::from_int(diff);
                    let m0 = -(rat2(m[0] + m[1], 1) + k.to_rat());
                    out.push(KType {
                        degree,
                        index: KIndex::Spin {
                            m: [m[0], m[1]],
                            l,
                        },
                        signature: KSignature::SoPair { m0, v },
                        multiplicity: 1,
                    });
                }
            }
        }
        (Family::E6, FiberSpec::E6 { k }) => {
            for m in iter_partitions(2, deg) {
                let (m1, m2) = (m[0], m[1]);
                for k1 in 0..=*k {
                    for k2 in 0..=(*k - k1) {
                        for k3 in 0..=(*k - k1 - k2) {
                            let k4 = *k - k1 - k2 - k3;
                            if k2 + k4 > m2 || k3 > m1 - m2 {
                                continue;
                            }
                            let m0 = rat2(-3 * (m1 + m2), 4) - rat2(*k, 2);
                            let v = vec![
                                Half::from_doubled(m1 + m2 + 2 * (k1 - k4)),
                                Half::from_doubled(m1 - m2 + 2 * k2),
                                Half::from_doubled(m1 - m2),
                                Half::from_doubled(m1 - m2),
                                Half::from_doubled(-(m1 - m2) + 2 * k3),
                            ];
                            out.push(KType {
                                degree,
                                index: KIndex::E6 {
                                    m: [m1, m2],
                                    kappa: [k1, k2, k3, k4],
                                },
                                signature: KSignature::SoPair { m0, v },
                                multiplicity: 1,
                            });
                        }
                    }
                }
            }
        }
        (Family::E7, FiberSpec::E7) => {
            for m in iter_partitions(3, deg) {
                out.push(KType {
                    degree,
                    index: KIndex::Cone { m: m.clone() },
                    signature: KSignature::Cone(m),
                    multiplicity: 1,
                });
            }
        }
        _ => unreachable!("fiber validated against family"),
    }
    Ok(out)
}

/// All K-types of degree at most `max_degree`, ascending by degree.
pub fn decompose_upto(
    spec: &GroupSpec,
    fiber: &FiberSpec,
    max_degree: u32,
) -> Result<Vec<KType>, CatalogError> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        out.extend(decompose(spec, fiber, d)?);
    }
    Ok(out)
}

/// Dimension of a GL irreducible given by a (possibly uniformly
/// half-integral) signature; the dimension only depends on differences.
fn gl_dim_of_half_sig(sig: &[Half]) -> BigUint {
    let base = sig.iter().map(|h| h.doubled()).min().unwrap_or(0);
    let ints: Vec<i64> = sig
        .iter()
        .map(|h| {
            let d = h.doubled() - base;
            debug_assert_eq!(d % 2, 0, "signature not parity-uniform");
            d / 2
        })
        .collect();
    weyl_dim_gl(&ints, ints.len())
}

/// Dimension of the K-type (the χ factor is one-dimensional).
pub fn ktype_dim(spec: &GroupSpec, kt: &KType) -> BigUint {
    match (&kt.signature, spec.family) {
        (KSignature::Gl(sig), _) => gl_dim_of_half_sig(sig),
        (KSignature::GlPair(m, n), Family::Su) => {
            let (q, s) = spec.su_qs();
            weyl_dim_gl(m, q) * weyl_dim_gl(n, s)
        }
        (KSignature::SoPair { v, .. }, Family::Spin) => weyl_dim_so(v, spec.spin_n()),
        (KSignature::SoPair { v, .. }, Family::E6) => weyl_dim_so(v, 10),
        (KSignature::Cone(m), Family::E7) => weyl_dim_e6(m[0] - m[1], m[1] - m[2]),
        _ => unreachable!("signature shape does not match family"),
    }
}

/// Dimension of the fiber V itself.
pub fn fiber_dim(spec: &GroupSpec, fiber: &FiberSpec) -> BigUint {
    match fiber {
        FiberSpec::Sp { k } => binomial(spec.rank as u64, *k as u64),
        FiberSpec::Su { k } => {
            let (_, s) = spec.su_qs();
            weyl_dim_gl(k, s)
        }
        FiberSpec::SoStar { k, .. } => {
            let s = spec.sostar_s() as u64;
            binomial(s + *k as u64 - 1, *k as u64)
        }
        FiberSpec::Spin { k, sign } => {
            let n = spec.spin_n();
            let s = n / 2;
            let mut v = vec![*k; s];
            if n.is_multiple_of(2) && *sign == SpinSign::Minus {
                v[s - 1] = -*k;
            }
            weyl_dim_so(&v, n)
        }
        FiberSpec::E6 { k } => {
            let mut v = vec![Half::ZERO; 5];
            v[0] = Half::from_int(*k);
            weyl_dim_so(&v, 10)
        }
        FiberSpec::E7 => BigUint::from(1u32),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use num_traits::One;

    fn h(n: i64) -> Half {
        Half::from_int(n)
    }

    #[test]
    fn rank_one_scalar() {
        let g = GroupSpec::sp(1).unwrap();
        let f = FiberSpec::Sp { k: 0 };
        let kts = decompose(&g, &f, 3).unwrap();
        assert_eq!(kts.len(), 1);
        assert_eq!(kts[0].signature, KSignature::Gl(vec![h(6)]));
        assert_eq!(kts[0].multiplicity, 1);
    }

    #[test]
    fn su11_taylor() {
        let g = GroupSpec::su(1, 1).unwrap();
        let f = FiberSpec::Su { k: vec![0] };
        for m in 0..5u32 {
            let kts = decompose(&g, &f, m).unwrap();
            assert_eq!(kts.len(), 1);
            assert_eq!(
                kts[0].signature,
                KSignature::GlPair(vec![m as i64], vec![m as i64])
            );
        }
    }

    #[test]
    fn spin_example() {
        let g = GroupSpec::spin(8).unwrap();
        let f = FiberSpec::Spin {
            k: h(1),
            sign: SpinSign::Plus,
        };
        let kts = decompose(&g, &f, 1).unwrap();
        // m = (1,0): l ∈ {0,1} survive the constraint m1-m2+l >= k
        assert_eq!(kts.len(), 2);
        let sigs: Vec<&KSignature> = kts.iter().map(|k| &k.signature).collect();
        assert!(sigs.contains(&&KSignature::SoPair {
            m0: rat(-2),
            v: vec![h(2), h(1), h(1), h(1)],
        }));
        assert!(sigs.contains(&&KSignature::SoPair {
            m0: rat(-2),
            v: vec![h(1), h(1), h(1), h(0)],
        }));
    }

    #[test]
    fn sp_wedge_low_degrees() {
        let g = GroupSpec::sp(2).unwrap();
        let f = FiberSpec::Sp { k: 1 };
        let d0 = decompose(&g, &f, 0).unwrap();
        assert_eq!(d0.len(), 1);
        assert_eq!(d0[0].signature, KSignature::Gl(vec![h(1), h(0)]));
        let d1 = decompose(&g, &f, 1).unwrap();
        let sigs: Vec<Vec<Half>> = d1
            .iter()
            .map(|k| match &k.signature {
                KSignature::Gl(v) => v.clone(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(sigs, vec![vec![h(3), h(0)], vec![h(2), h(1)]]);
    }

    #[test]
    fn e7_degree_two() {
        let g = GroupSpec::e7();
        let kts = decompose(&g, &FiberSpec::E7, 2).unwrap();
        let labels: Vec<&Vec<i64>> = kts
            .iter()
            .map(|k| match &k.index {
                KIndex::Cone { m } => m,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(labels, vec![&vec![2, 0, 0], &vec![1, 1, 0]]);
    }

    #[test]
    fn degree_zero_is_fiber() {
        let cases: Vec<(GroupSpec, FiberSpec)> = vec![
            (GroupSpec::sp(3).unwrap(), FiberSpec::Sp { k: 2 }),
            (GroupSpec::su(2, 3).unwrap(), FiberSpec::Su { k: vec![2, 1, 0] }),
            (
                GroupSpec::sostar(4).unwrap(),
                FiberSpec::SoStar {
                    kind: SoStarKind::SymDual,
                    k: 2,
                },
            ),
            (
                GroupSpec::sostar(5).unwrap(),
                FiberSpec::SoStar {
                    kind: SoStarKind::SymDet,
                    k: 3,
                },
            ),
            (
                GroupSpec::spin(7).unwrap(),
                FiberSpec::Spin {
                    k: Half::from_doubled(1),
                    sign: SpinSign::Plus,
                },
            ),
            (GroupSpec::e6(), FiberSpec::E6 { k: 2 }),
            (GroupSpec::e7(), FiberSpec::E7),
        ];
        for (g, f) in cases {
            let kts = decompose(&g, &f, 0).unwrap();
            assert_eq!(kts.len(), 1, "{:?}", f);
            assert_eq!(kts[0].multiplicity, 1);
            assert_eq!(ktype_dim(&g, &kts[0]), fiber_dim(&g, &f), "{:?}", f);
        }
    }

    #[test]
    fn multiplicity_free_outside_su() {
        let cases: Vec<(GroupSpec, FiberSpec)> = vec![
            (GroupSpec::sp(3).unwrap(), FiberSpec::Sp { k: 1 }),
            (
                GroupSpec::sostar(5).unwrap(),
                FiberSpec::SoStar {
                    kind: SoStarKind::SymDual,
                    k: 2,
                },
            ),
            (
                GroupSpec::spin(6).unwrap(),
                FiberSpec::Spin {
                    k: h(1),
                    sign: SpinSign::Minus,
                },
            ),
            (GroupSpec::e6(), FiberSpec::E6 { k: 2 }),
        ];
        for (g, f) in cases {
            for kt in decompose_upto(&g, &f, 4).unwrap() {
                assert_eq!(kt.multiplicity, 1);
            }
            // labels are pairwise distinct
            let kts = decompose_upto(&g, &f, 4).unwrap();
            for i in 0..kts.len() {
                for j in (i + 1)..kts.len() {
                    assert_ne!(kts[i].signature, kts[j].signature);
                }
            }
        }
    }

    #[test]
    fn su_scalar_fiber_reduces_to_diagonal() {
        let g = GroupSpec::su(3, 2).unwrap();
        let f = FiberSpec::Su { k: vec![0, 0] };
        for kt in decompose_upto(&g, &f, 4).unwrap() {
            assert_eq!(kt.multiplicity, 1);
            match &kt.index {
                KIndex::Su { m, n } => assert_eq!(m, n),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn graded_dimensions_spot_check() {
        // Σ mult · dim at degree N must equal C(N+n-1, N) · dim V
        let cases: Vec<(GroupSpec, FiberSpec)> = vec![
            (GroupSpec::sp(2).unwrap(), FiberSpec::Sp { k: 1 }),
            (GroupSpec::su(2, 2).unwrap(), FiberSpec::Su { k: vec![2, 1] }),
            (
                GroupSpec::sostar(5).unwrap(),
                FiberSpec::SoStar {
                    kind: SoStarKind::SymDet,
                    k: 1,
                },
            ),
            (
                GroupSpec::spin(7).unwrap(),
                FiberSpec::Spin {
                    k: Half::from_doubled(1),
                    sign: SpinSign::Plus,
                },
            ),
            (GroupSpec::e6(), FiberSpec::E6 { k: 1 }),
            (GroupSpec::e7(), FiberSpec::E7),
        ];
        for (g, f) in cases {
            let dim_v = fiber_dim(&g, &f);
            for deg in 0..=3u32 {
                let mut lhs = BigUint::from(0u32);
                for kt in decompose(&g, &f, deg).unwrap() {
                    lhs += BigUint::from(kt.multiplicity) * ktype_dim(&g, &kt);
                }
                let rhs = binomial(deg as u64 + g.dim_p - 1, deg as u64) * dim_v.clone();
                assert_eq!(lhs, rhs, "{} {:?} degree {deg}", g.label(), f);
            }
        }
    }

    #[test]
    fn e6_first_degree_is_spinor() {
        let g = GroupSpec::e6();
        let kts = decompose(&g, &FiberSpec::E6 { k: 0 }, 1).unwrap();
        assert_eq!(kts.len(), 1);
        assert_eq!(ktype_dim(&g, &kts[0]), BigUint::from(16u32));
        assert!(BigUint::one() < ktype_dim(&g, &kts[0]));
    }
}

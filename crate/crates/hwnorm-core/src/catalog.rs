//! Structure constants for the supported Hermitian families and validation
//! of the admissible minimal K-types (fibers).
//!
//! Every formula downstream is driven by five integers attached to the
//! domain: the real rank `r`, the complex dimension `n` of p+, the tube
//! part dimension `n_T`, the root multiplicities `d` and `b`, and the genus
//! `p`. They satisfy `n = r + r(r-1)d/2 + br` and `p = 2 + (r-1)d + b`,
//! which the constructors assert.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{rat, Half, Rat};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Family {
    Sp,
    Su,
    SoStar,
    Spin,
    E6,
    E7,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Sp => "sp",
            Family::Su => "su",
            Family::SoStar => "sostar",
            Family::Spin => "spin",
            Family::E6 => "e6",
            Family::E7 => "e7",
        }
    }
}

/// Family parameters, normalized. SU(q,s) is stored with `q >= s`; the
/// `transposed` flag remembers that the input had `q < s` (the two closed
/// forms coincide, so routing is shared).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Params {
    Sp { r: usize },
    Su { q: usize, s: usize, transposed: bool },
    SoStar { s: usize },
    Spin { n: usize },
    E6,
    E7,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupSpec {
    pub family: Family,
    pub params: Params,
    /// Real rank r.
    pub rank: usize,
    /// n = dim p+.
    pub dim_p: u64,
    /// n_T = dim of the tube part of p+.
    pub dim_tube: u64,
    /// Multiplicity d of the long restricted root spaces.
    pub d: u32,
    /// Multiplicity b of the short restricted root spaces (0 iff tube type).
    pub b: u32,
    /// Genus p = 2 + (r-1)d + b.
    pub genus: u32,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CatalogError(pub String);

impl fmt::Display for CatalogError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn err<T>(msg: impl Into<String>) -> Result<T, CatalogError> {
    Err(CatalogError(msg.into()))
}

impl GroupSpec {
    fn build(family: Family, params: Params, rank: usize, d: u32, b: u32) -> GroupSpec {
        let r = rank as u64;
        let dim_tube = r + r * (r - 1) * d as u64 / 2;
        let dim_p = dim_tube + b as u64 * r;
        let genus = 2 + (rank as u32 - 1) * d + b;
        let spec = GroupSpec {
            family,
            params,
            rank,
            dim_p,
            dim_tube,
            d,
            b,
            genus,
        };
        debug_assert_eq!(spec.dim_p, r + r * (r - 1) * d as u64 / 2 + b as u64 * r);
        spec
    }

    pub fn sp(r: usize) -> Result<GroupSpec, CatalogError> {
        if r < 1 {
            return err("sp needs r >= 1");
        }
        Ok(Self::build(Family::Sp, Params::Sp { r }, r, 1, 0))
    }

    pub fn su(q: usize, s: usize) -> Result<GroupSpec, CatalogError> {
        if q < 1 || s < 1 {
            return err("su needs q, s >= 1");
        }
        let (hi, lo, transposed) = if q >= s { (q, s, false) } else { (s, q, true) };
        Ok(Self::build(
            Family::Su,
            Params::Su {
                q: hi,
                s: lo,
                transposed,
            },
            lo,
            2,
            (hi - lo) as u32,
        ))
    }

    pub fn sostar(s: usize) -> Result<GroupSpec, CatalogError> {
        if s < 3 {
            return err("sostar needs s >= 3 (SO*(2s) simple)");
        }
        let r = s / 2;
        let b = if s.is_multiple_of(2) { 0 } else { 2 };
        Ok(Self::build(Family::SoStar, Params::SoStar { s }, r, 4, b))
    }

    pub fn spin(n: usize) -> Result<GroupSpec, CatalogError> {
        if n < 4 {
            return err("spin needs n >= 4");
        }
        Ok(Self::build(
            Family::Spin,
            Params::Spin { n },
            2,
            n as u32 - 2,
            0,
        ))
    }

    pub fn e6() -> GroupSpec {
        Self::build(Family::E6, Params::E6, 2, 6, 4)
    }

    pub fn e7() -> GroupSpec {
        Self::build(Family::E7, Params::E7, 3, 8, 0)
    }

    pub fn is_tube(&self) -> bool {
        self.b == 0
    }

    /// The SU parameters in input orientation `(q, s)`: the fiber is an
    /// irreducible of U(s).
    pub fn su_qs(&self) -> (usize, usize) {
        match self.params {
            Params::Su { q, s, transposed } => {
                if transposed {
                    (s, q)
                } else {
                    (q, s)
                }
            }
            _ => panic!("su_qs on a non-SU spec"),
        }
    }

    /// SO*(2s): the s parameter.
    pub fn sostar_s(&self) -> usize {
        match self.params {
            Params::SoStar { s } => s,
            _ => panic!("sostar_s on a non-SO* spec"),
        }
    }

    /// Spin(2,n): the n parameter.
    pub fn spin_n(&self) -> usize {
        match self.params {
            Params::Spin { n } => n,
            _ => panic!("spin_n on a non-Spin spec"),
        }
    }

    /// Parse CLI group syntax: `sp:r=2`, `su:q=2,s=3`, `sostar:s=5`,
    /// `spin:n=6`, `e6`, `e7`.
    pub fn parse(text: &str) -> Result<GroupSpec, CatalogError> {
        let text = text.trim();
        let (head, rest) = match text.split_once(':') {
            Some((h, r)) => (h.trim(), Some(r)),
            None => (text, None),
        };
        let kv = |rest: Option<&str>| -> Result<Vec<(String, usize)>, CatalogError> {
            let mut out = Vec::new();
            let Some(rest) = rest else {
                return err(format!("group \"{text}\": missing parameters"));
            };
            for part in rest.split(',') {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| CatalogError(format!("group \"{text}\": expected key=value")))?;
                let v: usize = v
                    .trim()
                    .parse()
                    .map_err(|_| CatalogError(format!("group \"{text}\": bad integer")))?;
                out.push((k.trim().to_string(), v));
            }
            Ok(out)
        };
        match head {
            "sp" => {
                let kv = kv(rest)?;
                match kv.as_slice() {
                    [(k, r)] if k == "r" => GroupSpec::sp(*r),
                    _ => err(format!("group \"{text}\": sp takes r=<int>")),
                }
            }
            "su" => {
                let kv = kv(rest)?;
                let q = kv.iter().find(|(k, _)| k == "q").map(|&(_, v)| v);
                let s = kv.iter().find(|(k, _)| k == "s").map(|&(_, v)| v);
                match (q, s, kv.len()) {
                    (Some(q), Some(s), 2) => GroupSpec::su(q, s),
                    _ => err(format!("group \"{text}\": su takes q=<int>,s=<int>")),
                }
            }
            "sostar" => {
                let kv = kv(rest)?;
                match kv.as_slice() {
                    [(k, s)] if k == "s" => GroupSpec::sostar(*s),
                    _ => err(format!("group \"{text}\": sostar takes s=<int>")),
                }
            }
            "spin" => {
                let kv = kv(rest)?;
                match kv.as_slice() {
                    [(k, n)] if k == "n" => GroupSpec::spin(*n),
                    _ => err(format!("group \"{text}\": spin takes n=<int>")),
                }
            }
            "e6" => {
                if rest.is_some() {
                    return err("group e6 takes no parameters");
                }
                Ok(GroupSpec::e6())
            }
            "e7" => {
                if rest.is_some() {
                    return err("group e7 takes no parameters");
                }
                Ok(GroupSpec::e7())
            }
            other => err(format!("unknown group family \"{other}\"")),
        }
    }

    pub fn label(&self) -> String {
        match self.params {
            Params::Sp { r } => format!("sp:r={r}"),
            Params::Su { .. } => {
                let (q, s) = self.su_qs();
                format!("su:q={q},s={s}")
            }
            Params::SoStar { s } => format!("sostar:s={s}"),
            Params::Spin { n } => format!("spin:n={n}"),
            Params::E6 => "e6".to_string(),
            Params::E7 => "e7".to_string(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum SoStarKind {
    /// S^k(C^s)^∨, label (k,0,...,0) dualized.
    SymDual,
    /// S^k(C^s) ⊗ det^{-k/2}, label (k/2,...,k/2,-k/2) dualized.
    SymDet,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum SpinSign {
    Plus,
    Minus,
}

/// The minimal K-type V, family by family.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FiberSpec {
    /// Λ^k(C^r)^∨ with 0 ≤ k ≤ r-1.
    Sp { k: i64 },
    /// C ⊠ V_k with k a weakly decreasing nonnegative integer s-vector.
    Su { k: Vec<i64> },
    SoStar { kind: SoStarKind, k: i64 },
    /// C_{-k} ⊠ V_{(k,...,k,±k)}; for odd n only k ∈ {0, 1/2}.
    Spin { k: Half, sign: SpinSign },
    /// C_{-k/2} ⊠ (degree-k harmonics on R^10).
    E6 { k: i64 },
    /// Scalar.
    E7,
}

impl FiberSpec {
    /// Validate the fiber against a group.
    pub fn validate(&self, spec: &GroupSpec) -> Result<(), CatalogError> {
        match (self, spec.family) {
            (FiberSpec::Sp { k }, Family::Sp) => {
                if *k < 0 || *k >= spec.rank as i64 {
                    err(format!("sp fiber needs 0 <= k <= r-1, got k={k}"))
                } else {
                    Ok(())
                }
            }
            (FiberSpec::Su { k }, Family::Su) => {
                let (_, s) = spec.su_qs();
                if k.len() != s {
                    return err(format!("su fiber needs an s-vector (s={s}), got length {}", k.len()));
                }
                if !crate::partitions::is_weakly_decreasing(k) || *k.last().unwrap() < 0 {
                    return err("su fiber must be weakly decreasing and nonnegative");
                }
                Ok(())
            }
            (FiberSpec::SoStar { kind, k }, Family::SoStar) => {
                if *k < 0 {
                    return err("sostar fiber needs k >= 0");
                }
                if *kind == SoStarKind::SymDet && *k == 0 {
                    return err("sostar det-twisted fiber needs k >= 1 (k=0 is the scalar dual fiber)");
                }
                Ok(())
            }
            (FiberSpec::Spin { k, .. }, Family::Spin) => {
                if k.is_negative() {
                    return err("spin fiber needs k >= 0");
                }
                let n = spin_n_of(spec);
                if n % 2 == 1 && *k != Half::ZERO && *k != Half::from_doubled(1) {
                    return err("spin fiber for odd n allows only k = 0 or 1/2");
                }
                Ok(())
            }
            (FiberSpec::E6 { k }, Family::E6) => {
                if *k < 0 {
                    err("e6 fiber needs k >= 0")
                } else {
                    Ok(())
                }
            }
            (FiberSpec::E7, Family::E7) => Ok(()),
            _ => err(format!(
                "fiber {:?} does not belong to family {}",
                self,
                spec.family.name()
            )),
        }
    }

    /// Parse CLI fiber syntax for the given group. Accepted forms:
    /// `k=2` (sp, e6), `k=2,1` or `k=(2,1)` (su), `dual:k=2` / `det:k=2`
    /// (sostar), `k=1/2,sign=+` (spin), `scalar` or `k=0` (e7).
    pub fn parse(spec: &GroupSpec, text: &str) -> Result<FiberSpec, CatalogError> {
        let text = text.trim();
        let fiber = match spec.family {
            Family::Sp => FiberSpec::Sp {
                k: parse_single_k(text)?,
            },
            Family::E6 => FiberSpec::E6 {
                k: parse_single_k(text)?,
            },
            Family::Su => {
                let body = text
                    .strip_prefix("k=")
                    .ok_or_else(|| CatalogError(format!("su fiber \"{text}\": expected k=...")))?;
                let body = body.trim().trim_start_matches('(').trim_end_matches(')');
                let mut k = Vec::new();
                for part in body.split(',') {
                    let v: i64 = part.trim().parse().map_err(|_| {
                        CatalogError(format!("su fiber \"{text}\": bad integer \"{part}\""))
                    })?;
                    k.push(v);
                }
                FiberSpec::Su { k }
            }
            Family::SoStar => {
                let (kind, rest) = if let Some(rest) = text.strip_prefix("dual:") {
                    (SoStarKind::SymDual, rest)
                } else if let Some(rest) = text.strip_prefix("det:") {
                    (SoStarKind::SymDet, rest)
                } else {
                    (SoStarKind::SymDual, text)
                };
                FiberSpec::SoStar {
                    kind,
                    k: parse_single_k(rest)?,
                }
            }
            Family::Spin => {
                let mut k = None;
                let mut sign = SpinSign::Plus;
                for part in text.split(',') {
                    let part = part.trim();
                    if let Some(v) = part.strip_prefix("k=") {
                        k = Some(Half::parse(v).map_err(CatalogError)?);
                    } else if let Some(v) = part.strip_prefix("sign=") {
                        sign = match v.trim() {
                            "+" => SpinSign::Plus,
                            "-" => SpinSign::Minus,
                            other => {
                                return err(format!("spin fiber sign must be + or -, got \"{other}\""))
                            }
                        };
                    } else {
                        return err(format!("spin fiber \"{text}\": expected k=..., sign=..."));
                    }
                }
                let k = k.ok_or_else(|| CatalogError(format!("spin fiber \"{text}\": missing k")))?;
                FiberSpec::Spin { k, sign }
            }
            Family::E7 => {
                if text == "scalar" || text == "k=0" || text.is_empty() {
                    FiberSpec::E7
                } else {
                    return err(format!("e7 fiber \"{text}\": only \"scalar\" is supported"));
                }
            }
        };
        fiber.validate(spec)?;
        Ok(fiber)
    }

    /// For the SU fiber: the number of entries exceeding the last one —
    /// the count of nonzero entries after twisting the last entry to zero,
    /// which is the count the closed classifications are stated in.
    pub fn su_nonzero_entries(&self) -> Option<usize> {
        match self {
            FiberSpec::Su { k } => {
                let last = *k.last()?;
                Some(k.iter().filter(|&&x| x > last).count())
            }
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            FiberSpec::Sp { k } | FiberSpec::E6 { k } => format!("k={k}"),
            FiberSpec::Su { k } => {
                let parts: Vec<String> = k.iter().map(|x| x.to_string()).collect();
                format!("k={}", parts.join(","))
            }
            FiberSpec::SoStar { kind, k } => match kind {
                SoStarKind::SymDual => format!("dual:k={k}"),
                SoStarKind::SymDet => format!("det:k={k}"),
            },
            FiberSpec::Spin { k, sign } => format!(
                "k={k},sign={}",
                if *sign == SpinSign::Plus { "+" } else { "-" }
            ),
            FiberSpec::E7 => "scalar".to_string(),
        }
    }
}

fn parse_single_k(text: &str) -> Result<i64, CatalogError> {
    let body = text
        .trim()
        .strip_prefix("k=")
        .ok_or_else(|| CatalogError(format!("fiber \"{text}\": expected k=<int>")))?;
    body.trim()
        .parse()
        .map_err(|_| CatalogError(format!("fiber \"{text}\": bad integer")))
}

fn spin_n_of(spec: &GroupSpec) -> usize {
    match spec.params {
        Params::Spin { n } => n,
        _ => unreachable!(),
    }
}

/// Infimum t such that λ > t guarantees convergence of the weighted
/// Bergman norm on polynomials.
pub fn convergence_threshold(spec: &GroupSpec, fiber: &FiberSpec) -> Result<Rat, CatalogError> {
    fiber.validate(spec)?;
    Ok(match (spec.family, fiber) {
        (Family::Sp, _) => rat(spec.rank as i64),
        (Family::Su, FiberSpec::Su { k }) => {
            let (q, s) = spec.su_qs();
            rat((q + s) as i64 - 1 - k[s - 1])
        }
        (Family::SoStar, _) => rat(2 * spec.sostar_s() as i64 - 3),
        (Family::Spin, _) => rat(spec.spin_n() as i64 - 1),
        (Family::E6, _) => rat(11),
        (Family::E7, _) => rat(17),
        _ => unreachable!(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use alloc::vec;

    #[test]
    fn structure_constants_examples() {
        let g = GroupSpec::sp(2).unwrap();
        assert_eq!((g.rank, g.dim_p, g.d, g.b, g.genus), (2, 3, 1, 0, 3));
        assert!(g.is_tube());

        let g = GroupSpec::sostar(5).unwrap();
        assert_eq!((g.rank, g.dim_p, g.d, g.b, g.genus), (2, 10, 4, 2, 8));
        assert!(!g.is_tube());

        let g = GroupSpec::e7();
        assert_eq!((g.rank, g.dim_p, g.d, g.b, g.genus), (3, 27, 8, 0, 18));
        assert!(g.is_tube());

        let g = GroupSpec::e6();
        assert_eq!((g.rank, g.dim_p, g.d, g.b, g.genus), (2, 16, 6, 4, 12));

        let g = GroupSpec::spin(6).unwrap();
        assert_eq!((g.rank, g.dim_p, g.d, g.b, g.genus), (2, 6, 4, 0, 6));
    }

    #[test]
    fn structure_identities_hold() {
        let mut specs = vec![GroupSpec::e6(), GroupSpec::e7()];
        for r in 1..=4 {
            specs.push(GroupSpec::sp(r).unwrap());
        }
        for q in 1..=4 {
            for s in 1..=4 {
                specs.push(GroupSpec::su(q, s).unwrap());
            }
        }
        for s in 3..=8 {
            specs.push(GroupSpec::sostar(s).unwrap());
        }
        for n in 4..=9 {
            specs.push(GroupSpec::spin(n).unwrap());
        }
        for g in specs {
            let r = g.rank as u64;
            assert_eq!(g.dim_p, r + r * (r - 1) * g.d as u64 / 2 + g.b as u64 * r);
            assert_eq!(g.genus, 2 + (g.rank as u32 - 1) * g.d + g.b);
            assert_eq!(g.is_tube(), g.b == 0);
        }
    }

    #[test]
    fn su_symmetry() {
        let a = GroupSpec::su(2, 3).unwrap();
        let b = GroupSpec::su(3, 2).unwrap();
        assert_eq!(
            (a.rank, a.dim_p, a.d, a.b, a.genus),
            (b.rank, b.dim_p, b.d, b.b, b.genus)
        );
        assert_eq!(a.su_qs(), (2, 3));
        assert_eq!(b.su_qs(), (3, 2));
    }

    #[test]
    fn thresholds() {
        let g = GroupSpec::sp(3).unwrap();
        let f = FiberSpec::Sp { k: 1 };
        assert_eq!(convergence_threshold(&g, &f).unwrap(), rat(3));

        let g = GroupSpec::su(2, 2).unwrap();
        let f = FiberSpec::Su { k: vec![1, 0] };
        assert_eq!(convergence_threshold(&g, &f).unwrap(), rat(3));

        let g = GroupSpec::spin(6).unwrap();
        let f = FiberSpec::Spin {
            k: Half::from_doubled(1),
            sign: SpinSign::Plus,
        };
        assert_eq!(convergence_threshold(&g, &f).unwrap(), rat(5));
    }

    #[test]
    fn parse_groups_and_fibers() {
        let g = GroupSpec::parse("su:q=2,s=3").unwrap();
        assert_eq!(g.su_qs(), (2, 3));
        assert_eq!(g.label(), "su:q=2,s=3");
        let f = FiberSpec::parse(&g, "k=(1,1,0)").unwrap();
        assert_eq!(f, FiberSpec::Su { k: vec![1, 1, 0] });

        let g = GroupSpec::parse("sostar:s=4").unwrap();
        let f = FiberSpec::parse(&g, "det:k=2").unwrap();
        assert_eq!(
            f,
            FiberSpec::SoStar {
                kind: SoStarKind::SymDet,
                k: 2
            }
        );

        let g = GroupSpec::parse("spin:n=7").unwrap();
        let f = FiberSpec::parse(&g, "k=1/2").unwrap();
        assert!(matches!(f, FiberSpec::Spin { .. }));
        assert!(FiberSpec::parse(&g, "k=1").is_err());

        assert!(GroupSpec::parse("sl:r=2").is_err());
        assert!(GroupSpec::parse("sp:r=0").is_err());
        assert!(GroupSpec::parse("sostar:s=2").is_err());

        let g = GroupSpec::parse("e7").unwrap();
        assert_eq!(FiberSpec::parse(&g, "scalar").unwrap(), FiberSpec::E7);
    }

    #[test]
    fn fiber_validation() {
        let g = GroupSpec::sp(2).unwrap();
        assert!(FiberSpec::Sp { k: 2 }.validate(&g).is_err());
        assert!(FiberSpec::Sp { k: 1 }.validate(&g).is_ok());
        let g = GroupSpec::su(2, 2).unwrap();
        assert!(FiberSpec::Su { k: vec![1, 2] }.validate(&g).is_err());
        assert!(FiberSpec::Su { k: vec![1] }.validate(&g).is_err());
    }
}

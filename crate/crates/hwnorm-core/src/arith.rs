//! Exact scalar arithmetic: arbitrary-precision rationals, half-integers,
//! and rational functions of one variable λ kept in factored form.
//!
//! A [`FactoredFn`] is a nonzero constant times a quotient of products of
//! linear factors (λ + shift). Rising factorials expand into such factors,
//! so cancellation, sign evaluation and pole-order queries all reduce to
//! multiset operations on the shifts.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar. `BigRational` keeps the invariants we need:
/// always reduced, denominator positive.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `n/d`, `d != 0`.
pub fn rat2(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p"` or `"p/q"` with integer `p` and positive integer `q`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format_err(s, "expected an integer or p/q"))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| format_err(s, "expected an integer denominator"))?,
        None => BigInt::one(),
    };
    if d <= BigInt::zero() {
        return Err(format_err(s, "denominator must be positive"));
    }
    Ok(BigRational::new(n, d))
}

fn format_err(s: &str, msg: &str) -> String {
    let mut out = String::new();
    out.push_str("bad rational \"");
    out.push_str(s);
    out.push_str("\": ");
    out.push_str(msg);
    out
}

/// A half-integer, stored as its doubled value so comparisons and
/// arithmetic stay in plain integers.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Half {
    doubled: i64,
}

impl Half {
    pub const ZERO: Half = Half { doubled: 0 };

    pub fn from_int(n: i64) -> Half {
        Half { doubled: 2 * n }
    }

    pub fn from_doubled(doubled: i64) -> Half {
        Half { doubled }
    }

    pub fn doubled(self) -> i64 {
        self.doubled
    }

    pub fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    /// The integer value, if integral.
    pub fn as_int(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.doubled / 2)
        } else {
            None
        }
    }

    pub fn to_rat(self) -> Rat {
        rat2(self.doubled, 2)
    }

    pub fn abs(self) -> Half {
        Half {
            doubled: self.doubled.abs(),
        }
    }

    pub fn signum(self) -> i64 {
        self.doubled.signum()
    }

    pub fn is_negative(self) -> bool {
        self.doubled < 0
    }

    /// Parse `"p"` or `"p/2"`.
    pub fn parse(s: &str) -> Result<Half, String> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            if d.trim() != "2" {
                return Err(format_err(s, "half-integers use denominator 2"));
            }
            let n: i64 = n
                .trim()
                .parse()
                .map_err(|_| format_err(s, "expected an integer numerator"))?;
            Ok(Half { doubled: n })
        } else {
            let n: i64 = s
                .parse()
                .map_err(|_| format_err(s, "expected an integer"))?;
            Ok(Half::from_int(n))
        }
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half {
            doubled: self.doubled + rhs.doubled,
        }
    }
}

impl AddAssign for Half {
    fn add_assign(&mut self, rhs: Half) {
        self.doubled += rhs.doubled;
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half {
            doubled: self.doubled - rhs.doubled,
        }
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half {
            doubled: -self.doubled,
        }
    }
}

impl Add<i64> for Half {
    type Output = Half;
    fn add(self, rhs: i64) -> Half {
        Half {
            doubled: self.doubled + 2 * rhs,
        }
    }
}

impl Sub<i64> for Half {
    type Output = Half;
    fn sub(self, rhs: i64) -> Half {
        Half {
            doubled: self.doubled - 2 * rhs,
        }
    }
}

impl From<i64> for Half {
    fn from(n: i64) -> Half {
        Half::from_int(n)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.doubled % 2 == 0 {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

/// One linear factor `(λ + shift)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct LinearFactor {
    pub shift: Rat,
}

impl fmt::Display for LinearFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.shift.is_zero() {
            write!(f, "(λ)")
        } else if self.shift.is_negative() {
            write!(f, "(λ-{})", -self.shift.clone())
        } else {
            write!(f, "(λ+{})", self.shift)
        }
    }
}

/// Expand the rising factorial `(λ + shift)_length` into its linear factors
/// `{λ+shift, λ+shift+1, ..., λ+shift+length-1}`.
pub fn poch_expand(shift: &Rat, length: u32) -> Vec<LinearFactor> {
    (0..length)
        .map(|t| LinearFactor {
            shift: shift + rat(t as i64),
        })
        .collect()
}

/// Result of evaluating a [`FactoredFn`] at a point: a nonzero value, an
/// exact zero (some numerator factor vanished), or a pole.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Eval {
    Value(Rat),
    Zero,
    Pole,
}

/// Exact sign of a [`FactoredFn`] at a point.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Positive,
    Negative,
    Zero,
    Pole,
}

/// A rational function of λ in factored form:
/// `constant · ∏ (λ+a)^e / ∏ (λ+b)^f`.
///
/// The factor multisets are maps shift → multiplicity. Canonical form means
/// the numerator and denominator share no shift; [`FactoredFn::simplify`]
/// produces it, arithmetic may leave common factors in place.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactoredFn {
    constant: Rat,
    num: BTreeMap<Rat, u32>,
    den: BTreeMap<Rat, u32>,
}

impl FactoredFn {
    /// The constant function 1.
    pub fn one() -> FactoredFn {
        FactoredFn {
            constant: Rat::one(),
            num: BTreeMap::new(),
            den: BTreeMap::new(),
        }
    }

    /// A nonzero constant function.
    pub fn constant(c: Rat) -> FactoredFn {
        assert!(!c.is_zero(), "FactoredFn constant must be nonzero");
        FactoredFn {
            constant: c,
            num: BTreeMap::new(),
            den: BTreeMap::new(),
        }
    }

    /// The single factor `(λ + shift)`.
    pub fn linear(shift: Rat) -> FactoredFn {
        let mut num = BTreeMap::new();
        num.insert(shift, 1);
        FactoredFn {
            constant: Rat::one(),
            num,
            den: BTreeMap::new(),
        }
    }

    /// The rising factorial `(λ + shift)_length` as a factored polynomial.
    pub fn poch(shift: &Rat, length: u32) -> FactoredFn {
        let mut num = BTreeMap::new();
        for f in poch_expand(shift, length) {
            *num.entry(f.shift).or_insert(0) += 1;
        }
        FactoredFn {
            constant: Rat::one(),
            num,
            den: BTreeMap::new(),
        }
    }

    /// Assemble from explicit factor lists.
    pub fn from_factors(constant: Rat, num: &[LinearFactor], den: &[LinearFactor]) -> FactoredFn {
        assert!(!constant.is_zero(), "FactoredFn constant must be nonzero");
        let mut n = BTreeMap::new();
        for f in num {
            *n.entry(f.shift.clone()).or_insert(0) += 1;
        }
        let mut d = BTreeMap::new();
        for f in den {
            *d.entry(f.shift.clone()).or_insert(0) += 1;
        }
        FactoredFn {
            constant,
            num: n,
            den: d,
        }
    }

    pub fn constant_part(&self) -> &Rat {
        &self.constant
    }

    /// Numerator factors as (shift, multiplicity) pairs, ascending by shift.
    pub fn num_factors(&self) -> impl Iterator<Item = (&Rat, u32)> {
        self.num.iter().map(|(s, &e)| (s, e))
    }

    /// Denominator factors as (shift, multiplicity) pairs, ascending by shift.
    pub fn den_factors(&self) -> impl Iterator<Item = (&Rat, u32)> {
        self.den.iter().map(|(s, &e)| (s, e))
    }

    /// Total numerator factor count (with multiplicity).
    pub fn num_degree(&self) -> u64 {
        self.num.values().map(|&e| e as u64).sum()
    }

    /// Total denominator factor count (with multiplicity).
    pub fn den_degree(&self) -> u64 {
        self.den.values().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.constant.is_one() && self.num.is_empty() && self.den.is_empty()
    }

    /// Product of two factored functions (no cancellation performed).
    pub fn mul(&self, rhs: &FactoredFn) -> FactoredFn {
        let mut out = self.clone();
        out.constant *= rhs.constant.clone();
        for (s, &e) in &rhs.num {
            *out.num.entry(s.clone()).or_insert(0) += e;
        }
        for (s, &e) in &rhs.den {
            *out.den.entry(s.clone()).or_insert(0) += e;
        }
        out
    }

    /// Reciprocal: swaps numerator and denominator.
    pub fn recip(&self) -> FactoredFn {
        FactoredFn {
            constant: self.constant.recip(),
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    /// `self / rhs`.
    pub fn div(&self, rhs: &FactoredFn) -> FactoredFn {
        self.mul(&rhs.recip())
    }

    /// Canonical form: cancel every shift common to numerator and
    /// denominator. Idempotent.
    pub fn simplify(&self) -> FactoredFn {
        let mut num = self.num.clone();
        let mut den = BTreeMap::new();
        for (s, &e) in &self.den {
            match num.get_mut(s) {
                Some(ne) => {
                    let c = (*ne).min(e);
                    *ne -= c;
                    if e > c {
                        den.insert(s.clone(), e - c);
                    }
                }
                None => {
                    den.insert(s.clone(), e);
                }
            }
        }
        num.retain(|_, e| *e > 0);
        FactoredFn {
            constant: self.constant.clone(),
            num,
            den,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.num.keys().all(|s| !self.den.contains_key(s))
    }

    /// Exact evaluation at `λ0`. The denominator is checked first, so a
    /// non-canonical function with a common vanishing factor reports a pole.
    pub fn evaluate(&self, lambda0: &Rat) -> Eval {
        let key = -lambda0.clone();
        if self.den.contains_key(&key) {
            return Eval::Pole;
        }
        if self.num.contains_key(&key) {
            return Eval::Zero;
        }
        let mut v = self.constant.clone();
        for (s, &e) in &self.num {
            let f = lambda0 + s;
            for _ in 0..e {
                v *= f.clone();
            }
        }
        for (s, &e) in &self.den {
            let f = lambda0 + s;
            for _ in 0..e {
                v /= f.clone();
            }
        }
        Eval::Value(v)
    }

    /// Order of the pole at `λ0`: multiplicity of `(λ-λ0)` in the
    /// denominator minus its multiplicity in the numerator. A zero of order
    /// `m` reports `-m`.
    pub fn pole_order(&self, lambda0: &Rat) -> i64 {
        let key = -lambda0.clone();
        let d = self.den.get(&key).copied().unwrap_or(0) as i64;
        let n = self.num.get(&key).copied().unwrap_or(0) as i64;
        d - n
    }

    /// Exact sign at `λ0`.
    pub fn sign_at(&self, lambda0: &Rat) -> Sign {
        let key = -lambda0.clone();
        if self.den.contains_key(&key) {
            return Sign::Pole;
        }
        if self.num.contains_key(&key) {
            return Sign::Zero;
        }
        let mut negatives: u64 = 0;
        for (s, &e) in self.num.iter().chain(self.den.iter()) {
            if (lambda0 + s).is_negative() {
                negatives += e as u64;
            }
        }
        let mut positive = self.constant.is_positive();
        if negatives % 2 == 1 {
            positive = !positive;
        }
        if positive {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for FactoredFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num_tokens: Vec<String> = self
            .num
            .iter()
            .map(|(s, &e)| factor_token(s, e))
            .collect();
        let den_tokens: Vec<String> = self
            .den
            .iter()
            .map(|(s, &e)| factor_token(s, e))
            .collect();
        if !self.constant.is_one() || num_tokens.is_empty() {
            write!(f, "{}", self.constant)?;
            if !num_tokens.is_empty() {
                write!(f, "·")?;
            }
        }
        for t in &num_tokens {
            write!(f, "{t}")?;
        }
        if !den_tokens.is_empty() {
            write!(f, "/")?;
            let wrap = den_tokens.len() > 1;
            if wrap {
                write!(f, "(")?;
            }
            for t in &den_tokens {
                write!(f, "{t}")?;
            }
            if wrap {
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}

fn factor_token(shift: &Rat, exp: u32) -> String {
    let base = LinearFactor {
        shift: shift.clone(),
    }
    .to_string();
    if exp == 1 {
        base
    } else {
        let mut s = base;
        s.push('^');
        s.push_str(&exp.to_string());
        s
    }
}

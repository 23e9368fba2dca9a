//! Signatures, partitions, and the branching/tensor combinatorics the
//! K-type decompositions rest on: Pieri rules, Littlewood-Richardson
//! coefficients by skew-tableau enumeration, GL and SO branching, and Weyl
//! dimension formulas (types A, B, D and E6).
//!
//! Integer signatures are plain `&[i64]` slices, weakly decreasing where the
//! operation demands it. Weights that can be half-integral (SO families) use
//! [`Half`] entries.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::Half;

/// Composition: a vector of nonnegative integers, no dominance constraint.
pub type Composition = Vec<i64>;

pub fn is_weakly_decreasing(m: &[i64]) -> bool {
    m.windows(2).all(|w| w[0] >= w[1])
}

/// Dominance for an so(n) highest weight: entries weakly decreasing, with
/// `m[s-1] >= |m[s]|` allowed for n even and `m[s] >= 0` for n odd, all
/// entries integral or all half-odd.
pub fn is_so_dominant(m: &[Half], n: usize) -> bool {
    let s = n / 2;
    if m.len() != s || s == 0 {
        return false;
    }
    let parity = m[0].doubled().rem_euclid(2);
    if !m.iter().all(|e| e.doubled().rem_euclid(2) == parity) {
        return false;
    }
    let body_ok = m.windows(2).take(s.saturating_sub(2)).all(|w| w[0] >= w[1]);
    let tail_ok = if n.is_multiple_of(2) {
        s < 2 || m[s - 2] >= m[s - 1].abs()
    } else {
        (s < 2 || m[s - 2] >= m[s - 1]) && !m[s - 1].is_negative()
    };
    body_ok && tail_ok
}

/// All partitions of `total` into at most `r` parts, as length-`r` vectors
/// padded with zeros, in descending lexicographic order.
pub fn iter_partitions(r: usize, total: i64) -> Vec<Vec<i64>> {
    assert!(r >= 1 && total >= 0);
    let mut out = Vec::new();
    let mut cur = vec![0i64; r];
    fn rec(cur: &mut Vec<i64>, idx: usize, remaining: i64, cap: i64, out: &mut Vec<Vec<i64>>) {
        if remaining == 0 {
            let mut row = cur.clone();
            for e in row.iter_mut().skip(idx) {
                *e = 0;
            }
            out.push(row);
            return;
        }
        if idx == cur.len() {
            return;
        }
        let slots_left = (cur.len() - idx) as i64;
        let mut first = remaining.min(cap);
        // each later slot holds at most `first`, so `first * slots_left >= remaining`
        while first >= 1 {
            if first * slots_left >= remaining {
                cur[idx] = first;
                rec(cur, idx + 1, remaining - first, first, out);
            }
            first -= 1;
        }
    }
    rec(&mut cur, 0, total, total, &mut out);
    out
}

/// Tensor with the k-th exterior power: all `m + κ` with `κ ∈ {0,1}^r`,
/// `|κ| = k`, and `m + κ` weakly decreasing. Returns `(m+κ, κ)` pairs in
/// descending lexicographic order of `m+κ`.
pub fn pieri_wedge_pairs(m: &[i64], k: i64) -> Vec<(Vec<i64>, Vec<i64>)> {
    let r = m.len();
    assert!((0..=r as i64).contains(&k));
    let mut out = Vec::new();
    for mask in 0u32..(1 << r) {
        if mask.count_ones() as i64 != k {
            continue;
        }
        let kappa: Vec<i64> = (0..r).map(|j| ((mask >> j) & 1) as i64).collect();
        let sum: Vec<i64> = m.iter().zip(&kappa).map(|(a, b)| a + b).collect();
        if is_weakly_decreasing(&sum) {
            out.push((sum, kappa));
        }
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    out
}

/// Like [`pieri_wedge_pairs`] but returning only the resulting signatures.
pub fn pieri_wedge(m: &[i64], k: i64) -> Vec<Vec<i64>> {
    pieri_wedge_pairs(m, k).into_iter().map(|(s, _)| s).collect()
}

/// Tensor with the k-th symmetric power: all `m + κ` with `κ_j ≥ 0`,
/// `|κ| = k` and `κ_j ≤ m_{j-1} - m_j` for `j ≥ 2`. The first row is
/// bounded by `first_row_bound` when given and unbounded otherwise (the
/// `m_0 = +∞` convention). Returns `(m+κ, κ)` pairs, descending
/// lexicographic in `m+κ`.
pub fn pieri_sym(m: &[i64], k: i64, first_row_bound: Option<i64>) -> Vec<(Vec<i64>, Composition)> {
    assert!(k >= 0);
    let r = m.len();
    let mut out = Vec::new();
    let mut kappa = vec![0i64; r];
    fn rec(
        m: &[i64],
        kappa: &mut Vec<i64>,
        idx: usize,
        remaining: i64,
        first_cap: i64,
        out: &mut Vec<(Vec<i64>, Composition)>,
    ) {
        if idx == m.len() {
            if remaining == 0 {
                let sum: Vec<i64> = m.iter().zip(kappa.iter()).map(|(a, b)| a + b).collect();
                out.push((sum, kappa.clone()));
            }
            return;
        }
        let cap = if idx == 0 {
            first_cap
        } else {
            m[idx - 1] - m[idx]
        };
        let hi = cap.min(remaining);
        let mut v = 0;
        while v <= hi {
            kappa[idx] = v;
            rec(m, kappa, idx + 1, remaining - v, first_cap, out);
            v += 1;
        }
        kappa[idx] = 0;
    }
    rec(
        m,
        &mut kappa,
        0,
        k,
        first_row_bound.unwrap_or(k),
        &mut out,
    );
    out.sort_by(|a, b| b.0.cmp(&a.0));
    out
}

fn strip_zeros(m: &[i64]) -> Vec<i64> {
    let mut v: Vec<i64> = m.to_vec();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn contains_partition(outer: &[i64], inner: &[i64]) -> bool {
    (0..inner.len()).all(|i| outer.get(i).copied().unwrap_or(0) >= inner[i])
}

/// Littlewood-Richardson coefficient `c^outer_{inner,weight}`: the number of
/// LR skew tableaux of shape `outer/inner` and content `weight`, counted by
/// direct backtracking (semistandard rows/columns, reverse reading word a
/// lattice word).
pub fn lr_coefficient(outer: &[i64], inner: &[i64], weight: &[i64]) -> u64 {
    let outer = strip_zeros(outer);
    let inner = strip_zeros(inner);
    let weight = strip_zeros(weight);
    assert!(
        is_weakly_decreasing(&outer)
            && is_weakly_decreasing(&inner)
            && is_weakly_decreasing(&weight),
        "LR coefficient arguments must be partitions"
    );
    assert!(
        outer.first().copied().unwrap_or(0) >= 0
            && inner.first().copied().unwrap_or(0) >= 0
            && inner.last().copied().unwrap_or(0) >= 0
            && outer.last().copied().unwrap_or(0) >= 0
            && weight.last().copied().unwrap_or(0) >= 0
    );
    let total: i64 = outer.iter().sum::<i64>() - inner.iter().sum::<i64>();
    if total != weight.iter().sum::<i64>() || !contains_partition(&outer, &inner) {
        return 0;
    }
    if weight.is_empty() {
        return 1;
    }
    let rows = outer.len();
    let colors = weight.len();
    // cells in reverse reading order: top row first, right to left
    let mut cells: Vec<(usize, i64)> = Vec::new();
    for (row, &end) in outer.iter().enumerate() {
        let start = inner.get(row).copied().unwrap_or(0);
        let mut col = end - 1;
        while col >= start {
            cells.push((row, col));
            col -= 1;
        }
    }
    let width = outer[0].max(1) as usize;
    let mut grid = vec![vec![0u8; width]; rows]; // 0 = empty, else color
    let mut remaining: Vec<i64> = weight.clone();
    let mut placed = vec![0i64; colors];
    fn rec(
        cells: &[(usize, i64)],
        idx: usize,
        grid: &mut Vec<Vec<u8>>,
        remaining: &mut Vec<i64>,
        placed: &mut Vec<i64>,
        count: &mut u64,
    ) {
        if idx == cells.len() {
            *count += 1;
            return;
        }
        let (row, col) = cells[idx];
        let colors = remaining.len();
        // weakly increasing along the row: bounded by the right neighbour
        let right = if (col as usize) + 1 < grid[row].len() && grid[row][col as usize + 1] != 0 {
            grid[row][col as usize + 1] as usize
        } else {
            colors
        };
        // strictly increasing down the column
        let above = if row > 0 && grid[row - 1][col as usize] != 0 {
            grid[row - 1][col as usize] as usize
        } else {
            0
        };
        for e in (above + 1)..=right {
            if remaining[e - 1] == 0 {
                continue;
            }
            // lattice word: after placing e, #(e-1) must still be >= #e
            if e >= 2 && placed[e - 2] < placed[e - 1] + 1 {
                continue;
            }
            grid[row][col as usize] = e as u8;
            remaining[e - 1] -= 1;
            placed[e - 1] += 1;
            rec(cells, idx + 1, grid, remaining, placed, count);
            grid[row][col as usize] = 0;
            remaining[e - 1] += 1;
            placed[e - 1] -= 1;
        }
    }
    let mut count = 0u64;
    rec(&cells, 0, &mut grid, &mut remaining, &mut placed, &mut count);
    count
}

/// Restriction of a GL(s) signature to GL(s-1): all interlacing
/// `n` with `m_j ≥ n_j ≥ m_{j+1}`, descending lexicographic order.
pub fn gl_branch(m: &[i64]) -> Vec<Vec<i64>> {
    let s = m.len();
    assert!(s >= 2, "gl_branch needs length >= 2");
    assert!(is_weakly_decreasing(m));
    let mut out = Vec::new();
    let mut cur = vec![0i64; s - 1];
    fn rec(m: &[i64], cur: &mut Vec<i64>, idx: usize, out: &mut Vec<Vec<i64>>) {
        if idx == cur.len() {
            out.push(cur.clone());
            return;
        }
        let hi = m[idx];
        let lo = m[idx + 1];
        let mut v = hi;
        while v >= lo {
            cur[idx] = v;
            rec(m, cur, idx + 1, out);
            v -= 1;
        }
    }
    rec(m, &mut cur, 0, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Tensor product of the so(n) representations `(m,0,...,0)` and
/// `(k,...,k,±k)` (the almost-minuscule factor). For even `n = 2s` the
/// summands are `(m+l, k, ..., k, ±l)` with `l` running from
/// `max(-k, k-m)` to `k`; for odd `n` (where only `k ∈ {0, 1/2}` occurs)
/// the last entry is `|l|`. Descending lexicographic order.
pub fn so_tensor_minuscule(
    m: i64,
    k: Half,
    plus: bool,
    n: usize,
) -> Result<Vec<Vec<Half>>, String> {
    if n < 4 {
        return Err(String::from("so_tensor_minuscule needs n >= 4"));
    }
    if m < 0 || k.is_negative() {
        return Err(String::from("so_tensor_minuscule needs m, k >= 0"));
    }
    if n % 2 == 1 && k != Half::ZERO && k != Half::from_doubled(1) {
        return Err(String::from("for odd n the fiber parameter k must be 0 or 1/2"));
    }
    let s = n / 2;
    let lo = (-k).max(k - m);
    let mut out = Vec::new();
    let mut l = k;
    while l >= lo {
        let mut sig = Vec::with_capacity(s);
        sig.push(Half::from_int(m) + l);
        for _ in 0..s.saturating_sub(2) {
            sig.push(k);
        }
        if s >= 2 {
            if n.is_multiple_of(2) {
                sig.push(if plus { l } else { -l });
            } else {
                sig.push(l.abs());
            }
        }
        out.push(sig);
        l = l - 1;
    }
    Ok(out)
}

/// Branching multiplicity of the so(2)⊕so(2s) weight `(n0; lower)` inside
/// the so(2s+2) representation `upper`: the coefficient of `X^{n0}` in
/// `X^{a_s} · ∏_{j=0}^{s-1} (X^{a_j+1} - X^{-a_j-1})/(X - X^{-1})`,
/// or 0 when the interlacing inequalities fail.
pub fn so_branch_coeff(upper: &[Half], lower: &[Half], n0: Half) -> u64 {
    let s = lower.len();
    assert_eq!(upper.len(), s + 1, "upper must be an so(2s+2) signature");
    // a_0, ..., a_{s-1} must be nonnegative integers; a_s carries a sign.
    let a0 = upper[0] - upper[1].max(lower[0]);
    let mut a = vec![a0];
    for j in 1..s {
        let top = upper[j].min(lower[j - 1]);
        let bot = upper[j + 1].abs().max(lower[j].abs());
        a.push(top - bot);
    }
    if a.iter().any(|x| x.is_negative() || !x.is_integer()) {
        return 0;
    }
    let sgn = upper[s].signum() * lower[s - 1].signum();
    let a_s = upper[s].abs().min(lower[s - 1].abs());
    let a_s = if sgn < 0 { -a_s } else { a_s };

    // Laurent polynomial with doubled exponents.
    let mut poly: BTreeMap<i64, u64> = BTreeMap::new();
    poly.insert(a_s.doubled(), 1);
    for aj in &a {
        let aj = aj.as_int().expect("checked integral");
        let mut next: BTreeMap<i64, u64> = BTreeMap::new();
        for (&e, &c) in &poly {
            for t in 0..=aj {
                *next.entry(e + 2 * (aj - 2 * t)).or_insert(0) += c;
            }
        }
        poly = next;
    }
    poly.get(&n0.doubled()).copied().unwrap_or(0)
}

fn exact_ratio(num: BigInt, den: BigInt) -> BigUint {
    let q = BigRational::new(num, den);
    assert!(q.is_integer(), "Weyl dimension must be an integer");
    let v = q.to_integer();
    assert!(!v.is_negative());
    v.to_biguint().expect("nonnegative")
}

/// Weyl dimension formula for GL(s) with highest weight `m` (padded with
/// zeros to length `s`; the dimension only depends on entry differences).
pub fn weyl_dim_gl(m: &[i64], s: usize) -> BigUint {
    assert!(m.len() <= s);
    assert!(is_weakly_decreasing(m));
    if m.len() < s {
        assert!(m.last().copied().unwrap_or(0) >= 0, "cannot zero-pad below a negative entry");
    }
    let mut full: Vec<i64> = m.to_vec();
    full.resize(s, 0);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..s {
        for j in (i + 1)..s {
            num *= BigInt::from(full[i] - full[j] + (j as i64 - i as i64));
            den *= BigInt::from(j as i64 - i as i64);
        }
    }
    exact_ratio(num, den)
}

/// Weyl dimension formula for so(n), types B and D, half-integral entries
/// allowed.
pub fn weyl_dim_so(m: &[Half], n: usize) -> BigUint {
    assert!(is_so_dominant(m, n), "not a dominant so({n}) weight: {m:?}");
    let s = n / 2;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    if n.is_multiple_of(2) {
        // doubled rho_i = 2(s - i), 1-based i
        let l: Vec<i64> = (0..s).map(|i| m[i].doubled() + 2 * (s - i - 1) as i64).collect();
        let rho: Vec<i64> = (0..s).map(|i| 2 * (s - i - 1) as i64).collect();
        for i in 0..s {
            for j in (i + 1)..s {
                num *= BigInt::from(l[i] * l[i] - l[j] * l[j]);
                den *= BigInt::from(rho[i] * rho[i] - rho[j] * rho[j]);
            }
        }
    } else {
        // doubled rho_i = 2s - 2i + 1, 1-based i
        let l: Vec<i64> = (0..s).map(|i| m[i].doubled() + (2 * (s - i) as i64 - 1)).collect();
        let rho: Vec<i64> = (0..s).map(|i| 2 * (s - i) as i64 - 1).collect();
        for i in 0..s {
            num *= BigInt::from(l[i]);
            den *= BigInt::from(rho[i]);
            for j in (i + 1)..s {
                num *= BigInt::from(l[i] * l[i] - l[j] * l[j]);
                den *= BigInt::from(rho[i] * rho[i] - rho[j] * rho[j]);
            }
        }
    }
    exact_ratio(num, den)
}

/// Positive roots of E6 in the standard 8-coordinate realization, scaled
/// by 6 so every coordinate is an integer.
fn e6_positive_roots() -> Vec<[i64; 8]> {
    let mut roots: Vec<[i64; 8]> = Vec::new();
    for i in 0..5 {
        for j in (i + 1)..5 {
            for (si, sj) in [(6, 6), (6, -6), (-6, 6), (-6, -6)] {
                let mut v = [0i64; 8];
                v[i] = si;
                v[j] = sj;
                roots.push(v);
            }
        }
    }
    for mask in 0u32..32 {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let mut v = [0i64; 8];
        for (i, e) in v.iter_mut().enumerate().take(5) {
            *e = if (mask >> i) & 1 == 1 { -3 } else { 3 };
        }
        v[5] = -3;
        v[6] = -3;
        v[7] = 3;
        roots.push(v);
        roots.push(v.map(|x| -x));
    }
    // generic functional separating positive from negative roots
    let g: [i64; 8] = [1, 2, 3, 4, 5, -5, -5, 5];
    let dot = |a: &[i64; 8]| -> i64 { a.iter().zip(&g).map(|(x, y)| x * y).sum() };
    let pos: Vec<[i64; 8]> = roots.into_iter().filter(|r| dot(r) > 0).collect();
    assert_eq!(pos.len(), 36);
    pos
}

/// Dimension of the E6 module with highest weight `a·ω1 + b·ω6` (the two
/// 27-dimensional fundamental weights; the dimension is symmetric in a, b).
pub fn weyl_dim_e6(a: i64, b: i64) -> BigUint {
    assert!(a >= 0 && b >= 0);
    let pos = e6_positive_roots();
    let mut rho2 = [0i64; 8]; // 2·6·ρ
    for r in &pos {
        for (acc, x) in rho2.iter_mut().zip(r) {
            *acc += x;
        }
    }
    let rho: [i64; 8] = {
        let mut v = [0i64; 8];
        for i in 0..8 {
            assert_eq!(rho2[i] % 2, 0);
            v[i] = rho2[i] / 2;
        }
        v
    };
    let omega1: [i64; 8] = [0, 0, 0, 0, 0, -4, -4, 4];
    let omega6: [i64; 8] = [0, 0, 0, 0, 6, -2, -2, 2];
    let mut top: [i64; 8] = [0; 8];
    for i in 0..8 {
        top[i] = a * omega1[i] + b * omega6[i] + rho[i];
    }
    let dot = |x: &[i64; 8], y: &[i64; 8]| -> i64 { x.iter().zip(y).map(|(p, q)| p * q).sum() };
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for r in &pos {
        num *= BigInt::from(dot(&top, r));
        den *= BigInt::from(dot(&rho, r));
    }
    exact_ratio(num, den)
}

/// Binomial coefficient with exact big-integer arithmetic.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..k {
        num *= BigInt::from(n - t);
        den *= BigInt::from(t + 1);
    }
    exact_ratio(num, den)
}

/// Convenience: dimension values small enough for u64 (true at desk scale).
pub fn to_u64(x: &BigUint) -> u64 {
    x.to_u64().expect("value exceeds u64 range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Half;

    fn h(n: i64) -> Half {
        Half::from_int(n)
    }

    fn hh(doubled: i64) -> Half {
        Half::from_doubled(doubled)
    }

    #[test]
    fn partitions_enumeration() {
        assert_eq!(iter_partitions(2, 2), vec![vec![2, 0], vec![1, 1]]);
        assert_eq!(iter_partitions(1, 5), vec![vec![5]]);
        assert_eq!(
            iter_partitions(3, 3),
            vec![vec![3, 0, 0], vec![2, 1, 0], vec![1, 1, 1]]
        );
        assert_eq!(iter_partitions(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn pieri_wedge_examples() {
        assert_eq!(pieri_wedge(&[2, 0], 1), vec![vec![3, 0], vec![2, 1]]);
        assert_eq!(pieri_wedge(&[1, 1], 1), vec![vec![2, 1]]);
        assert_eq!(pieri_wedge(&[4, 2, 1], 0), vec![vec![4, 2, 1]]);
    }

    #[test]
    fn pieri_sym_examples() {
        let got = pieri_sym(&[1, 0], 2, None);
        assert_eq!(
            got,
            vec![
                (vec![3, 0], vec![2, 0]),
                (vec![2, 1], vec![1, 1]),
            ]
        );
        assert_eq!(pieri_sym(&[0, 0], 3, None), vec![(vec![3, 0], vec![3, 0])]);
        assert_eq!(pieri_sym(&[2, 1], 0, None), vec![(vec![2, 1], vec![0, 0])]);
    }

    #[test]
    fn lr_examples() {
        // multiplicity of V_(2,1) in V_(1)⊗V_(1,1)
        assert_eq!(lr_coefficient(&[2, 1], &[1, 0], &[1, 1]), 1);
        assert_eq!(lr_coefficient(&[3, 2], &[3, 2], &[]), 1);
        assert_eq!(lr_coefficient(&[3, 1], &[1], &[1, 1]), 0); // degree mismatch
        // a genuinely multiplicity-two case: c^{(3,2,1)}_{(2,1),(2,1)} = 2
        assert_eq!(lr_coefficient(&[3, 2, 1], &[2, 1], &[2, 1]), 2);
    }

    #[test]
    fn lr_symmetry() {
        // c^λ_{μν} = c^λ_{νμ} for all |λ| ≤ 6
        for n in 0..=6i64 {
            for lam in iter_partitions(3, n) {
                for a in 0..=n {
                    for mu in iter_partitions(3, a) {
                        for nu in iter_partitions(3, n - a) {
                            assert_eq!(
                                lr_coefficient(&lam, &mu, &nu),
                                lr_coefficient(&lam, &nu, &mu),
                                "λ={lam:?} μ={mu:?} ν={nu:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn gl_branch_examples() {
        assert_eq!(gl_branch(&[2, 0]), vec![vec![2], vec![1], vec![0]]);
        assert_eq!(gl_branch(&[1, 1]), vec![vec![1]]);
        assert_eq!(
            gl_branch(&[3, 1, 0]),
            vec![
                vec![3, 1],
                vec![3, 0],
                vec![2, 1],
                vec![2, 0],
                vec![1, 1],
                vec![1, 0]
            ]
        );
    }

    #[test]
    fn gl_branch_dimension_sum() {
        for total in 0..=5i64 {
            for s in 2..=5usize {
                for m in iter_partitions(s, total) {
                    let lhs: BigUint = gl_branch(&m)
                        .iter()
                        .map(|n| weyl_dim_gl(n, s - 1))
                        .sum();
                    assert_eq!(lhs, weyl_dim_gl(&m, s), "m={m:?} s={s}");
                }
            }
        }
    }

    #[test]
    fn pieri_dimension_sums() {
        for total in 0..=5i64 {
            for r in 1..=4usize {
                for m in iter_partitions(r, total) {
                    let dim_m = weyl_dim_gl(&m, r);
                    for k in 0..=r as i64 {
                        let lhs: BigUint = pieri_wedge(&m, k)
                            .iter()
                            .map(|n| weyl_dim_gl(n, r))
                            .sum();
                        assert_eq!(
                            lhs,
                            dim_m.clone() * binomial(r as u64, k as u64),
                            "wedge m={m:?} k={k}"
                        );
                    }
                    for k in 0..=4i64 {
                        let lhs: BigUint = pieri_sym(&m, k, None)
                            .iter()
                            .map(|(n, _)| weyl_dim_gl(n, r))
                            .sum();
                        let dim_sym = binomial((r as i64 + k - 1) as u64, k as u64);
                        assert_eq!(lhs, dim_m.clone() * dim_sym, "sym m={m:?} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn so_tensor_examples() {
        let got = so_tensor_minuscule(2, h(1), true, 8).unwrap();
        assert_eq!(
            got,
            vec![
                vec![h(3), h(1), h(1), h(1)],
                vec![h(2), h(1), h(1), h(0)],
                vec![h(1), h(1), h(1), h(-1)],
            ]
        );
        let got = so_tensor_minuscule(2, hh(1), true, 7).unwrap();
        assert_eq!(
            got,
            vec![vec![hh(5), hh(1), hh(1)], vec![hh(3), hh(1), hh(1)]]
        );
        assert_eq!(
            so_tensor_minuscule(3, h(0), true, 10).unwrap(),
            vec![vec![h(3), h(0), h(0), h(0), h(0)]]
        );
        assert!(so_tensor_minuscule(2, h(1), true, 7).is_err());
    }

    #[test]
    fn so_tensor_dimension_sums() {
        for &n in &[7usize, 8, 10] {
            for m in 0..=4i64 {
                for kd in 0..=3i64 {
                    let k = hh(kd);
                    if n % 2 == 1 && kd > 1 {
                        continue;
                    }
                    let s = n / 2;
                    let mut fiber: Vec<Half> = vec![k; s];
                    let m_sig: Vec<Half> = {
                        let mut v = vec![h(0); s];
                        v[0] = h(m);
                        v
                    };
                    let lhs: BigUint = so_tensor_minuscule(m, k, true, n)
                        .unwrap()
                        .iter()
                        .map(|sig| weyl_dim_so(sig, n))
                        .sum();
                    let rhs = weyl_dim_so(&m_sig, n) * weyl_dim_so(&fiber, n);
                    assert_eq!(lhs, rhs, "n={n} m={m} k={k}");
                    // minus fiber for even n
                    if n % 2 == 0 && kd > 0 {
                        fiber[s - 1] = -k;
                        let lhs: BigUint = so_tensor_minuscule(m, k, false, n)
                            .unwrap()
                            .iter()
                            .map(|sig| weyl_dim_so(sig, n))
                            .sum();
                        let rhs = weyl_dim_so(&m_sig, n) * weyl_dim_so(&fiber, n);
                        assert_eq!(lhs, rhs, "n={n} m={m} k=-{k}");
                    }
                }
            }
        }
    }

    #[test]
    fn so_branch_examples() {
        // spherical chain: upper (k,0,..,0) over so(2s+2), lower (l1,0,..,0)
        for s in 2..=4usize {
            for k in 0..=4i64 {
                for l1 in 0..=k {
                    let mut upper = vec![h(0); s + 1];
                    upper[0] = h(k);
                    let mut lower = vec![h(0); s];
                    lower[0] = h(l1);
                    for n0 in -5..=5i64 {
                        let c = so_branch_coeff(&upper, &lower, h(n0));
                        let expect = if n0.abs() <= k - l1 && (k - n0 - l1) % 2 == 0 {
                            1
                        } else {
                            0
                        };
                        assert_eq!(c, expect, "k={k} l1={l1} n0={n0}");
                    }
                }
            }
        }
        // zero interlacing slack: a single monomial
        let upper = [h(2), h(2), h(1), h(1), h(1)];
        let lower = [h(2), h(2), h(1), h(1)];
        // a_0=0, a_1=0, a_2=0, a_3=0, a_4=+1 -> X^1
        assert_eq!(so_branch_coeff(&upper, &lower, h(1)), 1);
        assert_eq!(so_branch_coeff(&upper, &lower, h(0)), 0);
        // defining representation of so(10) restricted
        let upper = [h(1), h(0), h(0), h(0), h(0)];
        let lower = [h(1), h(0), h(0), h(0)];
        assert_eq!(so_branch_coeff(&upper, &lower, h(0)), 1);
    }

    #[test]
    fn so_branch_dimension_sums() {
        // every so(2s+2) weight of size ≤ 4 restricts with total dimension preserved
        for s in 2..=4usize {
            let mut uppers: Vec<Vec<Half>> = Vec::new();
            for total in 0..=4i64 {
                for p in iter_partitions(s + 1, total) {
                    let sig: Vec<Half> = p.iter().map(|&x| h(x)).collect();
                    uppers.push(sig.clone());
                    if *p.last().unwrap() > 0 {
                        let mut neg = sig;
                        neg[s] = -neg[s];
                        uppers.push(neg);
                    }
                }
            }
            // some half-integral ones too
            uppers.push(vec![hh(1); s + 1]);
            uppers.push({
                let mut v = vec![hh(3)];
                v.extend(vec![hh(1); s]);
                v
            });
            for upper in uppers {
                if !is_so_dominant(&upper, 2 * s + 2) {
                    continue;
                }
                let bound = upper[0].abs().doubled();
                let mut lowers: Vec<Vec<Half>> = Vec::new();
                enumerate_so_weights(s, bound, upper[0].doubled().rem_euclid(2), &mut lowers);
                let mut total = BigUint::zero();
                for lower in &lowers {
                    for n0d in -bound..=bound {
                        let c = so_branch_coeff(&upper, lower, hh(n0d));
                        if c > 0 {
                            total += BigUint::from(c) * weyl_dim_so(lower, 2 * s);
                        }
                    }
                }
                assert_eq!(total, weyl_dim_so(&upper, 2 * s + 2), "upper={upper:?}");
            }
        }
    }

    fn enumerate_so_weights(s: usize, bound: i64, parity: i64, out: &mut Vec<Vec<Half>>) {
        let mut cur = vec![Half::ZERO; s];
        fn rec(
            s: usize,
            idx: usize,
            hi: i64,
            parity: i64,
            bound: i64,
            cur: &mut Vec<Half>,
            out: &mut Vec<Vec<Half>>,
        ) {
            if idx == s {
                return;
            }
            let lo = if idx == s - 1 { -hi } else { 0.max(-hi) };
            let mut v = hi;
            while v >= lo {
                if v.rem_euclid(2) == parity {
                    cur[idx] = Half::from_doubled(v);
                    if idx == s - 1 {
                        out.push(cur.clone());
                    } else {
                        rec(s, idx + 1, v, parity, bound, cur, out);
                    }
                }
                v -= 1;
            }
        }
        rec(s, 0, bound, parity, bound, &mut cur, out);
    }

    #[test]
    fn weyl_dims() {
        assert_eq!(weyl_dim_gl(&[2], 5), BigUint::from(15u32));
        assert_eq!(weyl_dim_gl(&[0, 0, 0], 3), BigUint::from(1u32));
        assert_eq!(weyl_dim_gl(&[1, 1, 0], 3), BigUint::from(3u32));
        assert_eq!(
            weyl_dim_so(&[h(1), h(0), h(0), h(0), h(0)], 10),
            BigUint::from(10u32)
        );
        // (k,0,0,0,0) over so(10): C(k+9,9) - C(k+7,9)
        for k in 0..=5u64 {
            let sig = [h(k as i64), h(0), h(0), h(0), h(0)];
            assert_eq!(
                weyl_dim_so(&sig, 10),
                binomial(k + 9, 9) - binomial(k + 7, 9)
            );
        }
        assert_eq!(
            weyl_dim_so(&[h(1), h(1), h(1), h(1)], 8),
            BigUint::from(35u32)
        );
        assert_eq!(
            weyl_dim_so(&[hh(1), hh(1), hh(1), hh(1)], 8),
            BigUint::from(8u32)
        );
        assert_eq!(weyl_dim_so(&[hh(1), hh(1), hh(1)], 7), BigUint::from(8u32));
        assert_eq!(
            weyl_dim_so(&[h(1), h(1), h(1), h(-1)], 8),
            BigUint::from(35u32)
        );
    }

    #[test]
    fn e6_root_system_sane() {
        let pos = e6_positive_roots();
        // all roots have squared length 2 (scale 6: 72)
        for r in &pos {
            let n: i64 = r.iter().map(|x| x * x).sum();
            assert_eq!(n, 72);
        }
        // rho pairs to 1 with every simple coroot
        let simples: [[i64; 8]; 6] = [
            [3, -3, -3, -3, -3, -3, -3, 3],
            [6, 6, 0, 0, 0, 0, 0, 0],
            [-6, 6, 0, 0, 0, 0, 0, 0],
            [0, -6, 6, 0, 0, 0, 0, 0],
            [0, 0, -6, 6, 0, 0, 0, 0],
            [0, 0, 0, -6, 6, 0, 0, 0],
        ];
        let mut rho2 = [0i64; 8];
        for r in &pos {
            for i in 0..8 {
                rho2[i] += r[i];
            }
        }
        for a in &simples {
            let num: i64 = rho2.iter().zip(a).map(|(x, y)| x * y).sum();
            let den: i64 = a.iter().map(|x| x * x).sum();
            assert_eq!(num, den); // <rho, a∨> = 2<rho,a>/<a,a> = 1
        }
    }

    #[test]
    fn e6_dimensions() {
        assert_eq!(weyl_dim_e6(0, 0), BigUint::from(1u32));
        assert_eq!(weyl_dim_e6(1, 0), BigUint::from(27u32));
        assert_eq!(weyl_dim_e6(0, 1), BigUint::from(27u32));
        assert_eq!(weyl_dim_e6(2, 0), BigUint::from(351u32));
        assert_eq!(weyl_dim_e6(1, 1), BigUint::from(650u32));
        assert_eq!(weyl_dim_e6(3, 0), BigUint::from(3003u32));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
    }
}

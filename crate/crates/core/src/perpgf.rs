//! The perpendicular generating-function engine.
//!
//! For fixed `m` and offset `A`, the series
//! `sum_N p(floor(mN/2) - A, m, N) z^N` over all `N >= 0` is a rational
//! function of `z`. This module constructs it exactly: the even and odd
//! `m` cases have different numerator formulas and denominators, both built
//! from Pochhammer products, Gaussian polynomials, and dissections.
//!
//! The resulting [`RationalGF`] keeps its denominator as a factor multiset
//! in the construction's normal form; nothing is reduced, and equality of
//! two generating functions is decided by cross-multiplication.

use crate::bigpoly::{choose2, gaussian_poly, one_minus_zk, pochhammer, Poly, PolyError};
use num_bigint::BigInt;
use thiserror::Error;

/// Errors from the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PerpError {
    /// Negative offsets have no single rational form when `m` is odd: the
    /// reflection that maps them back into range depends on the parity of
    /// `N` there.
    #[error("negative offset A = {offset} is not supported for odd m = {m}")]
    NegativeA { m: u64, offset: i64 },
    /// An inner quotient failed to be a polynomial. This cannot happen for
    /// well-formed inputs; it would falsify the construction itself.
    #[error("inner quotient at level M = {level}, term j = {j} is not a polynomial: {source}")]
    PolynomialityViolation {
        level: u64,
        j: u64,
        source: PolyError,
    },
    /// `gf_sub` requires both operands to carry the identical normal-form
    /// denominator.
    #[error("denominators differ: [{left}] vs [{right}]")]
    DenominatorMismatch { left: String, right: String },
}

/// A rational generating function: a polynomial numerator over a product
/// `prod (1 - z^k)^mult` kept as a factor multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    numerator: Poly,
    /// Sorted by `k`, one entry per distinct `k`, all multiplicities >= 1.
    denominator: Vec<(u64, u32)>,
}

impl RationalGF {
    /// Builds from a numerator and denominator factors `(k, mult)`,
    /// normalizing the factor list (sort by `k`, merge repeats).
    pub fn new(numerator: Poly, factors: Vec<(u64, u32)>) -> Self {
        RationalGF {
            numerator,
            denominator: normalize_factors(factors),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &[(u64, u32)] {
        &self.denominator
    }

    /// Multiplies the denominator factors out into a polynomial.
    pub fn denominator_poly(&self) -> Poly {
        let mut acc = Poly::one();
        for &(k, mult) in &self.denominator {
            for _ in 0..mult {
                acc = acc.mul(&one_minus_zk(k as usize));
            }
        }
        acc
    }

    /// First `terms` power-series coefficients.
    ///
    /// Starts from the numerator coefficient stream and, for each factor
    /// `(1 - z^k)^mult`, applies `mult` passes of stride-`k` prefix
    /// summation (the series inverse of multiplying by `1 - z^k`).
    pub fn expand(&self, terms: usize) -> Vec<BigInt> {
        let mut c: Vec<BigInt> = (0..terms).map(|i| self.numerator.coeff(i)).collect();
        for &(k, mult) in &self.denominator {
            let k = k as usize;
            for _ in 0..mult {
                for i in k..terms {
                    let prev = c[i - k].clone();
                    c[i] += prev;
                }
            }
        }
        c
    }
}

fn normalize_factors(factors: Vec<(u64, u32)>) -> Vec<(u64, u32)> {
    let mut factors: Vec<(u64, u32)> = factors
        .into_iter()
        .inspect(|&(k, mult)| {
            assert!(k >= 1 && mult >= 1, "denominator factors must have k, mult >= 1")
        })
        .collect();
    factors.sort_unstable();
    let mut merged: Vec<(u64, u32)> = Vec::with_capacity(factors.len());
    for (k, mult) in factors {
        match merged.last_mut() {
            Some((lk, lmult)) if *lk == k => *lmult += mult,
            _ => merged.push((k, mult)),
        }
    }
    merged
}

/// Renders a factor list like `(1-z)(1-z^2)^2`.
pub fn factors_text(factors: &[(u64, u32)]) -> String {
    let mut out = String::new();
    for &(k, mult) in factors {
        let base = if k == 1 {
            "(1-z)".to_string()
        } else {
            format!("(1-z^{k})")
        };
        out.push_str(&base);
        if mult > 1 {
            out.push_str(&format!("^{mult}"));
        }
    }
    out
}

/// Numerator subtraction over a shared denominator.
pub fn gf_sub(g1: &RationalGF, g2: &RationalGF) -> Result<RationalGF, PerpError> {
    if g1.denominator != g2.denominator {
        return Err(PerpError::DenominatorMismatch {
            left: factors_text(&g1.denominator),
            right: factors_text(&g2.denominator),
        });
    }
    Ok(RationalGF {
        numerator: g1.numerator.sub(&g2.numerator),
        denominator: g1.denominator.clone(),
    })
}

/// Cross-multiplication equality: `n1 * d2 == n2 * d1` as polynomials.
/// Representation-independent, so forms with literally different factor
/// lists compare equal when they denote the same series.
pub fn gf_equal(g1: &RationalGF, g2: &RationalGF) -> bool {
    g1.numerator.mul(&g2.denominator_poly()) == g2.numerator.mul(&g1.denominator_poly())
}

/// The decomposition of an offset `A` relative to the construction level.
///
/// `m = 2M` (even) or `m = 2M - 1` (odd); `level` stores `M`. The offset
/// splits as `A = modulus * a + r` with `0 <= r < modulus`, where the
/// modulus is `lcm(1..=M)` for even `m` and `lcm(1, 3, ..., 2M-1)` for odd
/// `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PerpIndex {
    pub m: u64,
    pub offset: u64,
    pub level: u64,
    pub a: u64,
    pub r: u64,
    pub modulus: u64,
}

/// `lcm(1, 2, ..., top)`.
fn lcm_to(top: u64) -> u64 {
    (1..=top).fold(1u64, num_integer::lcm)
}

/// `lcm(1, 3, 5, ..., 2*level - 1)`.
fn lcm_odds(level: u64) -> u64 {
    (1..=level).fold(1u64, |acc, i| num_integer::lcm(acc, 2 * i - 1))
}

/// Splits `(m, A)` into the canonical `(M, a, r)` parameterization.
pub fn decompose(m: u64, offset: i64) -> Result<PerpIndex, PerpError> {
    assert!(m >= 1, "m must be positive");
    if offset < 0 {
        return Err(PerpError::NegativeA { m, offset });
    }
    let offset = offset as u64;
    let (level, modulus) = if m % 2 == 0 {
        (m / 2, lcm_to(m / 2))
    } else {
        ((m + 1) / 2, lcm_odds((m + 1) / 2))
    };
    Ok(PerpIndex {
        m,
        offset,
        level,
        a: offset / modulus,
        r: offset % modulus,
        modulus,
    })
}

/// Gaussian binomial `[top choose bottom]` in `z`.
fn qbin(top: u64, bottom: u64) -> Poly {
    assert!(bottom <= top);
    gaussian_poly(bottom, top - bottom)
}

fn violation(level: u64, j: u64) -> impl Fn(PolyError) -> PerpError {
    move |source| PerpError::PolynomialityViolation { level, j, source }
}

/// Numerator for even `m = 2M`, at level `M` with `A = lcm(1..=M)*a + r`.
///
/// Sum over `j = 1..=M` of, with sign `(-1)^(M-j)`: the monomial
/// `z^(lcm*a/j)` times the `j`-dissection of
/// `z^(r + C(M-j+1,2)) * (1-z^(2j)) * poch(j,j,2M-1) / poch(1,1,2M)
///  * [2M choose M-j]_z`.
/// Every inner quotient is a polynomial; the division is performed factor
/// by factor and checked exactly.
pub fn numerator_even(level: u64, a: u64, r: u64) -> Result<Poly, PerpError> {
    assert!(level >= 1, "level must be positive");
    let big_m = level;
    let modulus = lcm_to(big_m);
    let mut total = Poly::zero();
    for j in 1..=big_m {
        let mut num = one_minus_zk(2 * j as usize)
            .mul(&pochhammer(j, j, 2 * big_m - 1))
            .mul(&qbin(2 * big_m, big_m - j));
        for k in 1..=2 * big_m {
            num = num
                .exact_div(&one_minus_zk(k as usize))
                .map_err(violation(big_m, j))?;
        }
        let shifted = num.shift_up((r + choose2(big_m - j + 1)) as usize);
        let term = shifted
            .dissect(j as usize)
            .shift_up((modulus * a / j) as usize);
        total = if (big_m - j) % 2 == 1 {
            total.sub(&term)
        } else {
            total.add(&term)
        };
    }
    Ok(total)
}

/// Numerator for odd `m = 2M - 1`, at level `M` with
/// `A = lcm(1,3,...,2M-1)*a + r`.
///
/// Sum over `j = 1..=M` of, with sign `(-1)^(M-j)` and `s = 2j - 1`: the
/// monomial `z^(2*lcm*a/s)` times the `s`-dissection of
/// `z^(2r + 2*C(M-j+1,2)) * (1-z^s) * poch(2s,2s,2M-2)
///  / ((1-z) * poch(4,2,2M-2)) * [2M-1 choose M-j]` with the binomial
/// taken in `z^2`.
pub fn numerator_odd(level: u64, a: u64, r: u64) -> Result<Poly, PerpError> {
    assert!(level >= 1, "level must be positive");
    let big_m = level;
    let modulus = lcm_odds(big_m);
    let mut total = Poly::zero();
    for j in 1..=big_m {
        let s = 2 * j - 1;
        let mut num = one_minus_zk(s as usize)
            .mul(&pochhammer(2 * s, 2 * s, 2 * big_m - 2))
            .mul(&qbin(2 * big_m - 1, big_m - j).inflate(2));
        num = num
            .exact_div(&one_minus_zk(1))
            .map_err(violation(big_m, j))?;
        for i in 0..2 * (big_m - 1) {
            num = num
                .exact_div(&one_minus_zk((4 + 2 * i) as usize))
                .map_err(violation(big_m, j))?;
        }
        let shifted = num.shift_up((2 * r + 2 * choose2(big_m - j + 1)) as usize);
        let term = shifted
            .dissect(s as usize)
            .shift_up((2 * modulus * a / s) as usize);
        total = if (big_m - j) % 2 == 1 {
            total.sub(&term)
        } else {
            total.add(&term)
        };
    }
    Ok(total)
}

/// The perpendicular generating function: series coefficient `N` equals
/// `p(floor(mN/2) - A, m, N)` for all `N >= 0`.
///
/// For even `m` a negative `A` is accepted and mapped to `|A|` (the
/// coefficient rows are palindromic about their center when `mN` is even,
/// which holds for every `N` when `m` is even). For odd `m`, negative `A`
/// is rejected.
pub fn perp_gf(m: u64, offset: i64) -> Result<RationalGF, PerpError> {
    assert!(m >= 1, "m must be positive");
    let offset = if m % 2 == 0 { offset.abs() } else { offset };
    let idx = decompose(m, offset)?;
    if m % 2 == 0 {
        let num = numerator_even(idx.level, idx.a, idx.r)?;
        let mut factors = vec![(2u64, 1u32)];
        factors.extend((1..=2 * idx.level - 1).map(|k| (k, 1)));
        Ok(RationalGF::new(num, factors))
    } else {
        let num = numerator_odd(idx.level, idx.a, idx.r)?;
        let mut factors = vec![(1u64, 1u32)];
        factors.extend((1..=2 * (idx.level - 1)).map(|i| (2 * i, 1)));
        Ok(RationalGF::new(num, factors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigpoly::Poly;

    fn series_i64(gf: &RationalGF, terms: usize) -> Vec<i64> {
        gf.expand(terms)
            .iter()
            .map(|c| i64::try_from(c).expect("fits"))
            .collect()
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(4, 7).unwrap();
        assert_eq!((d.level, d.modulus, d.a, d.r), (2, 2, 3, 1));
        let d = decompose(5, 16).unwrap();
        assert_eq!((d.level, d.modulus, d.a, d.r), (3, 15, 1, 1));
        let d = decompose(6, 0).unwrap();
        assert_eq!((d.level, d.modulus, d.a, d.r), (3, 6, 0, 0));
        assert!(matches!(
            decompose(5, -2),
            Err(PerpError::NegativeA { m: 5, offset: -2 })
        ));
    }

    #[test]
    fn central_series_m4() {
        let gf = perp_gf(4, 0).unwrap();
        assert_eq!(
            series_i64(&gf, 15),
            vec![1, 1, 3, 5, 8, 12, 18, 24, 33, 43, 55, 69, 86, 104, 126]
        );
        let gf = perp_gf(4, 1).unwrap();
        assert_eq!(
            series_i64(&gf, 15),
            vec![0, 1, 2, 4, 7, 11, 16, 23, 31, 41, 53, 67, 83, 102, 123]
        );
    }

    #[test]
    fn unit_constant_term() {
        for m in 1..=8 {
            let gf = perp_gf(m, 0).unwrap();
            assert_eq!(gf.expand(1)[0], BigInt::from(1), "m = {m}");
        }
    }

    #[test]
    fn expand_geometric() {
        let gf = RationalGF::new(Poly::one(), vec![(1, 1)]);
        assert_eq!(series_i64(&gf, 5), vec![1, 1, 1, 1, 1]);
        let gf = RationalGF::new(Poly::one(), vec![(2, 1)]);
        assert_eq!(series_i64(&gf, 6), vec![1, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn sub_and_equal() {
        let g0 = perp_gf(4, 0).unwrap();
        let g1 = perp_gf(4, 1).unwrap();
        let g2 = perp_gf(4, 2).unwrap();
        let diff = gf_sub(&g0, &g1).unwrap();
        assert_eq!(series_i64(&diff, 8), vec![1, 0, 1, 1, 1, 1, 2, 1]);
        let zero = gf_sub(&g1, &g1).unwrap();
        assert!(zero.numerator().is_zero());
        let flat = gf_sub(&g1, &g2).unwrap();
        assert!(flat.expand(50).iter().all(num_traits::Zero::is_zero));
        assert!(matches!(
            gf_sub(&g0, &perp_gf(5, 0).unwrap()),
            Err(PerpError::DenominatorMismatch { .. })
        ));
    }

    #[test]
    fn gf_equal_representation_independent() {
        let a = RationalGF::new(Poly::from_i64s(&[0, 1]), vec![(2, 1)]);
        let b = RationalGF::new(
            Poly::from_i64s(&[0, 1]).mul(&one_minus_zk(1)),
            vec![(1, 1), (2, 1)],
        );
        assert!(gf_equal(&a, &b));
        let c = RationalGF::new(Poly::one(), vec![(1, 1)]);
        let d = RationalGF::new(Poly::one(), vec![(2, 1)]);
        assert!(!gf_equal(&c, &d));
    }

    #[test]
    fn negative_offset_even_reflects() {
        let pos = perp_gf(4, 3).unwrap();
        let neg = perp_gf(4, -3).unwrap();
        assert!(gf_equal(&pos, &neg));
        assert!(matches!(
            perp_gf(5, -1),
            Err(PerpError::NegativeA { m: 5, offset: -1 })
        ));
    }

    #[test]
    fn denominator_normal_forms() {
        assert_eq!(perp_gf(4, 0).unwrap().denominator(), &[(1, 1), (2, 2), (3, 1)]);
        assert_eq!(perp_gf(2, 0).unwrap().denominator(), &[(1, 1), (2, 1)]);
        assert_eq!(
            perp_gf(5, 0).unwrap().denominator(),
            &[(1, 1), (2, 1), (4, 1), (6, 1), (8, 1)]
        );
        assert_eq!(
            perp_gf(6, 0).unwrap().denominator(),
            &[(1, 1), (2, 2), (3, 1), (4, 1), (5, 1)]
        );
        assert_eq!(perp_gf(1, 0).unwrap().denominator(), &[(1, 1)]);
    }

    #[test]
    fn factor_rendering() {
        assert_eq!(
            factors_text(&[(1, 1), (2, 2), (3, 1)]),
            "(1-z)(1-z^2)^2(1-z^3)"
        );
    }
}

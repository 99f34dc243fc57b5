//! Dense univariate polynomials over arbitrary-precision integers.
//!
//! Everything downstream (partition generating functions, dissections,
//! series numerators) is a value of [`Poly`]. Arithmetic is exact; there is
//! no floating point anywhere in this crate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

/// Errors from polynomial arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    /// Exact division failed; carries the offending remainder so callers
    /// can distinguish a bad call site from a genuinely non-divisible pair.
    #[error("exact division leaves nonzero remainder {remainder}")]
    NonZeroRemainder { remainder: Poly },
}

/// A polynomial in `z` with `BigInt` coefficients, stored densely:
/// index `i` holds the coefficient of `z^i`.
///
/// Canonical form: the zero polynomial is the empty coefficient vector;
/// otherwise the highest stored coefficient is nonzero. Every constructor
/// restores canonical form, so structural equality equals mathematical
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Poly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// Builds from raw coefficients (index = exponent), trimming trailing
    /// zeros to canonical form.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `coeff * z^exp`.
    pub fn monomial(coeff: BigInt, exp: usize) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = coeff;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `z^i` (zero beyond the stored range).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Borrowed view of the stored coefficients.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            if let Some(d) = other.coeffs.get(i) {
                c += d;
            }
            out.push(c);
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    /// Exact convolution product.
    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    /// Multiplies by `z^exp`.
    pub fn shift_up(&self, exp: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Long division that must terminate with remainder zero; returns the
    /// quotient `q` with `q * den == self`, or the remainder as an error.
    ///
    /// A leading-coefficient divisibility failure mid-division also means
    /// there is no quotient over the integers; the remainder at that point
    /// is reported.
    pub fn exact_div(&self, den: &Poly) -> Result<Poly, PolyError> {
        assert!(!den.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Ok(Poly::zero());
        }
        let dd = den.degree().unwrap();
        let dlead = &den.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let nd = rem.len() - 1;
        if nd < dd {
            return Err(PolyError::NonZeroRemainder {
                remainder: self.clone(),
            });
        }
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for top in (dd..=nd).rev() {
            if rem[top].is_zero() {
                continue;
            }
            let (q, r) = num_integer::Integer::div_rem(&rem[top], dlead);
            if !r.is_zero() {
                return Err(PolyError::NonZeroRemainder {
                    remainder: Poly::from_coeffs(rem),
                });
            }
            let pos = top - dd;
            for (k, dc) in den.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    let prod = &q * dc;
                    rem[pos + k] -= prod;
                }
            }
            quot[pos] = q;
        }
        if rem.iter().all(Zero::is_zero) {
            Ok(Poly::from_coeffs(quot))
        } else {
            Err(PolyError::NonZeroRemainder {
                remainder: Poly::from_coeffs(rem),
            })
        }
    }

    /// The `s`-dissection: coefficient `i` of the result is coefficient
    /// `i*s` of the input (plain index selection).
    pub fn dissect(&self, s: usize) -> Poly {
        assert!(s >= 1, "dissection stride must be positive");
        Poly::from_coeffs(self.coeffs.iter().step_by(s).cloned().collect())
    }

    /// Substitutes `z -> z^s`, the inverse companion of [`Poly::dissect`]:
    /// coefficient `i` moves to `i*s`.
    pub fn inflate(&self, s: usize) -> Poly {
        assert!(s >= 1, "inflation stride must be positive");
        if self.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len() - 1) * s + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out[i * s] = c.clone();
            }
        }
        Poly { coeffs: out }
    }

    /// Value at `z = 1`, i.e. the coefficient sum.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Renders as `c0 + c1*z + c2*z^2 + ...`, omitting zero terms;
    /// the zero polynomial renders as `0`.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mag = c.abs();
            if i == 0 {
                write!(out, "{mag}").unwrap();
            } else {
                if !mag.is_one() {
                    write!(out, "{mag}*").unwrap();
                }
                if i == 1 {
                    out.push('z');
                } else {
                    write!(out, "z^{i}").unwrap();
                }
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

/// `1 - z^k`.
pub fn one_minus_zk(k: usize) -> Poly {
    assert!(k >= 1);
    let mut coeffs = vec![BigInt::zero(); k + 1];
    coeffs[0] = BigInt::one();
    coeffs[k] = -BigInt::one();
    Poly { coeffs }
}

/// The monomial Pochhammer product
/// `(1 - z^start)(1 - z^(start+step)) ... `, `count` factors in total.
/// `count = 0` yields 1.
pub fn pochhammer(start: u64, step: u64, count: u64) -> Poly {
    assert!(start >= 1 && step >= 1);
    let mut acc = Poly::one();
    for i in 0..count {
        acc = acc.mul(&one_minus_zk((start + i * step) as usize));
    }
    acc
}

/// The Gaussian binomial coefficient as a polynomial in `z`: the generating
/// function of partitions into at most `m` parts, each at most `n`. Degree
/// `m*n`, all `m*n + 1` coefficients positive.
///
/// Computed as `prod_{k=1..m} (1 - z^(n+k))` divided factor by factor by
/// `(1 - z^k)`, `k = 1..m`; each division is exact.
pub fn gaussian_poly(m: u64, n: u64) -> Poly {
    let mut acc = Poly::one();
    for k in 1..=m {
        acc = acc.mul(&one_minus_zk((n + k) as usize));
    }
    for k in 1..=m {
        acc = acc
            .exact_div(&one_minus_zk(k as usize))
            .expect("Gaussian polynomial quotient is exact");
    }
    acc
}

/// Exact binomial coefficient `C(x, 2)`.
pub fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// True iff every coefficient is nonnegative.
pub fn all_nonneg(p: &Poly) -> bool {
    p.coeffs.iter().all(|c| !c.is_negative())
}

//! Machine checks for the structural facts the library is built around:
//! unimodality of Gaussian coefficient rows, first-difference identities
//! between bounded and unbounded partition counts, Ramanujan-style
//! congruence families, quasipolynomial extraction from rational series,
//! and validation of the stored generating-function tables for `m = 5, 6`.
//!
//! Every identity check computes its left-hand side twice, through two
//! independent code paths: the brute-force partition oracle, and the
//! difference of two perpendicular generating-function expansions. Both
//! paths must agree entry by entry before either is compared to the
//! claimed right-hand side.

use crate::bigpoly::{gaussian_poly, Poly};
use crate::partitions::{delta_atmost, delta_bounded, is_unimodal, p_atmost, p_parts_from};
use crate::perpgf::{gf_equal, gf_sub, perp_gf, PerpError, RationalGF};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

/// Errors from identity checking and table loading.
#[derive(Debug, Error)]
pub enum IdentityError {
    #[error("unknown identity id: {0}")]
    UnknownIdentity(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("quasipolynomial fit failed: {0}")]
    FitFailure(String),
    #[error("cannot read golden file {path}: {source}")]
    GoldenIo {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot parse golden file {path}: {source}")]
    GoldenParse {
        path: String,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Engine(#[from] PerpError),
}

/// A witness for a failed check: where it failed and the two values that
/// should have agreed, as decimal strings.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub location: String,
    pub lhs: String,
    pub rhs: String,
}

/// Result of checking one identity over a sweep range.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub id: String,
    pub max_n: u64,
    /// Number of (N, parameter) evaluations performed.
    pub checked: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// Result of a unimodality sweep over Gaussian coefficient rows.
#[derive(Debug, Clone, Serialize)]
pub struct UnimodalityReport {
    pub m: u64,
    pub max_n: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<u64>,
}

/// Result of checking that consecutive perpendicular series differences
/// are coefficientwise nonnegative (the rows rise toward their centers).
#[derive(Debug, Clone, Serialize)]
pub struct DeltaNonnegReport {
    pub m: u64,
    pub max_offset: u64,
    pub terms: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// Result of scanning one congruence family pair.
#[derive(Debug, Clone, Serialize)]
pub struct CongruenceReport {
    pub prime: u64,
    pub j: u64,
    /// Parameter of the even-offset family: `a = 6*prime*j - 1`.
    pub a_even_family: u64,
    /// Parameter of the odd-offset family: `a = 6*prime*j`.
    pub a_odd_family: u64,
    pub max_n: u64,
    pub checked: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// Result of validating stored generating-function tables.
#[derive(Debug, Clone, Serialize)]
pub struct GoldenReport {
    pub which: String,
    pub cases: u64,
    /// Number of (case, a) instantiations compared.
    pub instances: u64,
    pub series_terms: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

/// The identity ids accepted by [`check_identity_catalog`].
pub const CATALOG: &[&str] = &[
    "m1-central",
    "m2-central",
    "m3-center-0",
    "m3-center-1",
    "m3-center-2",
    "m4-to-m3-even",
    "m4-to-m3-odd",
    "m4-center",
    "m4-center-zero",
    "m5-center",
    "m6-center",
];

/// Offset sweep width for the identities quantified over all `A`.
const OFFSET_SWEEP: u64 = 12;

/// Shared state for one catalog run: a cache of expanded perpendicular
/// series keyed by `(m, A)`, all of length `max_n + 1`.
struct Checker {
    cache: HashMap<(u64, i64), Vec<BigInt>>,
    terms: usize,
}

impl Checker {
    fn new(max_n: u64) -> Self {
        Checker {
            cache: HashMap::new(),
            terms: max_n as usize + 1,
        }
    }

    fn coeff(&mut self, m: u64, offset: i64, n: u64) -> Result<BigInt, IdentityError> {
        if !self.cache.contains_key(&(m, offset)) {
            let series = perp_gf(m, offset)?.expand(self.terms);
            self.cache.insert((m, offset), series);
        }
        Ok(self.cache[&(m, offset)][n as usize].clone())
    }

    /// The first difference at distance `A` from the center of row `N`,
    /// computed through both paths. Returns the agreed value, or a
    /// counterexample describing the disagreement.
    fn lhs_delta(
        &mut self,
        m: u64,
        offset: u64,
        n: u64,
    ) -> Result<Result<BigInt, Counterexample>, IdentityError> {
        let center = (m * n / 2) as i64;
        let oracle = delta_bounded(1, center - offset as i64, m, n);
        let series = self.coeff(m, offset as i64, n)? - self.coeff(m, offset as i64 + 1, n)?;
        if oracle != series {
            return Ok(Err(Counterexample {
                location: format!("N = {n}, A = {offset} (oracle path vs series path)"),
                lhs: oracle.to_string(),
                rhs: series.to_string(),
            }));
        }
        Ok(Ok(oracle))
    }
}

fn report(id: &str, max_n: u64, checked: u64, cx: Option<Counterexample>) -> IdentityReport {
    IdentityReport {
        id: id.to_string(),
        max_n,
        checked,
        passed: cx.is_none(),
        counterexample: cx,
    }
}

fn mismatch(location: String, lhs: &BigInt, rhs: &BigInt) -> Counterexample {
    Counterexample {
        location,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

/// Checks one identity from [`CATALOG`] for all `N <= max_n` (and a sweep
/// of the secondary parameter where the identity has one).
pub fn check_identity_catalog(id: &str, max_n: u64) -> Result<IdentityReport, IdentityError> {
    let mut ck = Checker::new(max_n);
    let mut checked = 0u64;
    macro_rules! lhs {
        ($m:expr, $offset:expr, $n:expr) => {
            match ck.lhs_delta($m, $offset, $n)? {
                Ok(v) => v,
                Err(cx) => return Ok(report(id, max_n, checked, Some(cx))),
            }
        };
    }
    macro_rules! demand {
        ($loc:expr, $lhs:expr, $rhs:expr) => {{
            let (l, r) = (&$lhs, &$rhs);
            checked += 1;
            if l != r {
                return Ok(report(id, max_n, checked, Some(mismatch($loc, l, r))));
            }
        }};
    }

    match id {
        // Delta p(floor(N/2) - A, 1, N) = Delta p(N, 1) = 0, valid once
        // the probed index is at least 1 (at index 0 the difference is 1).
        "m1-central" => {
            let zero = BigInt::zero();
            for n in 0..=max_n {
                for a in 0..=OFFSET_SWEEP {
                    let v = lhs!(1, a, n);
                    if (n / 2) as i64 - a as i64 >= 1 {
                        demand!(format!("N = {n}, A = {a}"), v, zero);
                    }
                }
            }
            for n in 1..=max_n {
                demand!(format!("N = {n} (companion)"), delta_atmost(1, n as i64, 1), zero);
            }
            Ok(report(id, max_n, checked, None))
        }
        // Delta p(N - A, 2, N) = Delta p(N - A, 2) = [N - A even], for
        // N - A >= 0.
        "m2-central" => {
            for n in 0..=max_n {
                for a in 0..=OFFSET_SWEEP {
                    let v = lhs!(2, a, n);
                    if n >= a {
                        let parity = BigInt::from(u8::from((n - a) % 2 == 0));
                        let loc = format!("N = {n}, A = {a}");
                        demand!(loc.clone(), v, delta_atmost(1, (n - a) as i64, 2));
                        demand!(loc, v, parity);
                    }
                }
            }
            Ok(report(id, max_n, checked, None))
        }
        // Delta p(floor(3N/2) - A, 3, N) follows a (mod 4) table for each
        // A in {0, 1, 2}, valid once the probed index is nonnegative.
        "m3-center-0" | "m3-center-1" | "m3-center-2" => {
            let a: u64 = id.rsplit('-').next().unwrap().parse().unwrap();
            let table: [[u8; 4]; 3] = [[1, 0, 0, 0], [0, 1, 1, 1], [1, 1, 0, 1]];
            for n in 0..=max_n {
                let v = lhs!(3, a, n);
                if (3 * n / 2) as i64 - a as i64 >= 0 {
                    let rhs = BigInt::from(table[a as usize][(n % 4) as usize]);
                    demand!(format!("N = {n}"), v, rhs);
                }
            }
            Ok(report(id, max_n, checked, None))
        }
        // Delta p(2N - 2a, 4, N) = p(N - a, 3) - p(N - 2a - 1, 3).
        "m4-to-m3-even" => {
            for a in 0..=max_n / 4 {
                for n in 0..=max_n {
                    let v = lhs!(4, 2 * a, n);
                    let rhs = delta_atmost(a as i64 + 1, n as i64 - a as i64, 3);
                    demand!(format!("N = {n}, a = {a}"), v, rhs);
                }
            }
            Ok(report(id, max_n, checked, None))
        }
        // Delta p(2N - (2a + 1), 4, N) = p(N - 2 - a, 3) - p(N - 2 - 2a, 3).
        "m4-to-m3-odd" => {
            for a in 0..=max_n / 4 {
                for n in 0..=max_n {
                    let v = lhs!(4, 2 * a + 1, n);
                    let rhs = delta_atmost(a as i64, n as i64 - 2 - a as i64, 3);
                    demand!(format!("N = {n}, a = {a}"), v, rhs);
                }
            }
            Ok(report(id, max_n, checked, None))
        }
        // Delta p(2N, 4, N) = Delta p(N, 3).
        "m4-center" => {
            for n in 0..=max_n {
                let v = lhs!(4, 0, n);
                demand!(format!("N = {n}"), v, delta_atmost(1, n as i64, 3));
            }
            Ok(report(id, max_n, checked, None))
        }
        // Delta p(2N - 1, 4, N) = 0.
        "m4-center-zero" => {
            let zero = BigInt::zero();
            for n in 0..=max_n {
                let v = lhs!(4, 1, n);
                demand!(format!("N = {n}"), v, zero);
            }
            Ok(report(id, max_n, checked, None))
        }
        // Delta p(floor(5N/2), 5, N) branches on N mod 4 with n = floor(N/4):
        // p(n,3) / p(n-1,3)+p(n-3,3) / p(n-4,3) / p(n-1,3)+p(n-2,3).
        "m5-center" => {
            for big_n in 0..=max_n {
                let v = lhs!(5, 0, big_n);
                let n = (big_n / 4) as i64;
                let rhs = match big_n % 4 {
                    0 => p_atmost(n, 3),
                    1 => p_atmost(n - 1, 3) + p_atmost(n - 3, 3),
                    2 => p_atmost(n - 4, 3),
                    _ => p_atmost(n - 1, 3) + p_atmost(n - 2, 3),
                };
                demand!(format!("N = {big_n}"), v, rhs);
            }
            Ok(report(id, max_n, checked, None))
        }
        // Delta p(3N, 6, N) counts partitions into parts from {1, 2, 3, 5}
        // of n when N = 2n, of n - 7 when N = 2n + 1; and that count is in
        // turn p(x, 5) - p(x - 4, 5). All three expressions are compared.
        "m6-center" => {
            const PARTS: [u64; 4] = [1, 2, 3, 5];
            for big_n in 0..=max_n {
                let v = lhs!(6, 0, big_n);
                let x = if big_n % 2 == 0 {
                    (big_n / 2) as i64
                } else {
                    (big_n / 2) as i64 - 7
                };
                let loc = format!("N = {big_n}");
                demand!(loc.clone(), v, p_parts_from(x, &PARTS));
                demand!(loc, v, delta_atmost(4, x, 5));
            }
            Ok(report(id, max_n, checked, None))
        }
        other => Err(IdentityError::UnknownIdentity(other.to_string())),
    }
}

/// Checks that every coefficient row of the Gaussian polynomial for `m`
/// rises then falls, for `N <= max_n`.
pub fn check_unimodality(m: u64, max_n: u64) -> UnimodalityReport {
    let mut first_failure = None;
    for n in 0..=max_n {
        if !is_unimodal(gaussian_poly(m, n).coeffs()) {
            first_failure = Some(n);
            break;
        }
    }
    UnimodalityReport {
        m,
        max_n,
        passed: first_failure.is_none(),
        first_failure,
    }
}

/// Checks that the series of `perp(m, A) - perp(m, A+1)` has no negative
/// coefficient, for `A <= max_offset`, over the first `terms` terms.
/// This is the "rows rise toward the center" half of unimodality.
pub fn check_delta_nonneg(
    m: u64,
    max_offset: u64,
    terms: usize,
) -> Result<DeltaNonnegReport, IdentityError> {
    let mut counterexample = None;
    'outer: for a in 0..=max_offset {
        let diff = gf_sub(&perp_gf(m, a as i64)?, &perp_gf(m, a as i64 + 1)?)?;
        for (n, c) in diff.expand(terms).iter().enumerate() {
            if c < &BigInt::zero() {
                counterexample = Some(Counterexample {
                    location: format!("A = {a}, N = {n}"),
                    lhs: c.to_string(),
                    rhs: "0".to_string(),
                });
                break 'outer;
            }
        }
    }
    Ok(DeltaNonnegReport {
        m,
        max_offset,
        terms,
        passed: counterexample.is_none(),
        counterexample,
    })
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Scans both congruence families for a prime `ell` and index `j >= 1`:
/// with `a = 6*ell*j - 1`, `Delta p(2N - 2a, 4, N) = 0 (mod ell)`; with
/// `a = 6*ell*j`, `Delta p(2N - (2a+1), 4, N) = 0 (mod ell)`. Both are
/// checked through the partition oracle.
///
/// Each family reduces to `p(n, 3) = p(n - 6*ell*j, 3) (mod ell)`, which
/// requires `n - 6*ell*j >= 0`; below that the subtracted term vanishes
/// and the congruence genuinely fails (at `N = a` the difference is 1).
/// So the demand is applied where the probed index is negative (both
/// counts zero) and from `N = 2a + 1` (even family) respectively
/// `N = 2a + 2` (odd family) upward; the indeterminate window between is
/// skipped.
pub fn congruence_scan(ell: u64, j: u64, max_n: u64) -> Result<CongruenceReport, IdentityError> {
    if !is_prime(ell) {
        return Err(IdentityError::NotPrime(ell));
    }
    assert!(j >= 1, "j must be positive");
    let a_even = 6 * ell * j - 1;
    let a_odd = 6 * ell * j;
    let modulus = BigInt::from(ell);
    let mut checked = 0u64;
    let mut counterexample = None;
    'outer: for n in 0..=max_n {
        let center = n as i64 * 2;
        for (family, a, index, guarded_from) in [
            ("even", a_even, center - 2 * a_even as i64, 2 * a_even + 1),
            ("odd", a_odd, center - (2 * a_odd as i64 + 1), 2 * a_odd + 2),
        ] {
            if index >= 0 && n < guarded_from {
                continue;
            }
            let v = delta_bounded(1, index, 4, n);
            checked += 1;
            if !num_integer::Integer::mod_floor(&v, &modulus).is_zero() {
                counterexample = Some(Counterexample {
                    location: format!("N = {n}, {family} family (a = {a})"),
                    lhs: v.to_string(),
                    rhs: format!("0 (mod {ell})"),
                });
                break 'outer;
            }
        }
    }
    Ok(CongruenceReport {
        prime: ell,
        j,
        a_even_family: a_even,
        a_odd_family: a_odd,
        max_n,
        checked,
        passed: counterexample.is_none(),
        counterexample,
    })
}

/// A piecewise-polynomial description of a rational series: for
/// `n = period * k + i >= valid_from`, the coefficient equals
/// `constituents[i]` evaluated at `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub period: u64,
    /// One coefficient vector (constant term first) per residue class.
    /// An empty vector is the zero polynomial.
    pub constituents: Vec<Vec<BigRational>>,
    /// The description holds for every `n >= valid_from`.
    pub valid_from: usize,
    /// The extraction certified the description against the expanded
    /// series for all `valid_from <= n < certified_terms`.
    pub certified_terms: usize,
}

impl QuasiPolynomial {
    /// Largest constituent degree, or `None` if every constituent is zero.
    pub fn degree(&self) -> Option<usize> {
        self.constituents
            .iter()
            .filter(|c| !c.is_empty())
            .map(|c| c.len() - 1)
            .max()
    }

    /// Evaluates the description at `n` (meaningful for `n >= valid_from`).
    pub fn eval(&self, n: u64) -> BigRational {
        let i = (n % self.period) as usize;
        let k = BigRational::from_integer(BigInt::from(n / self.period));
        horner(&self.constituents[i], &k)
    }

    /// Renders one constituent like `3*k^2 + 4*k + 1`.
    pub fn constituent_text(&self, i: usize) -> String {
        let c = &self.constituents[i];
        if c.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, coeff) in c.iter().enumerate().rev() {
            if coeff.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            match e {
                0 => write!(out, "{coeff}").unwrap(),
                1 => write!(out, "{coeff}*k").unwrap(),
                _ => write!(out, "{coeff}*k^{e}").unwrap(),
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn horner(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Interpolating polynomial (power basis, constant first) through the
/// points `(xs[t], ys[t])`, all distinct `xs`.
fn lagrange_fit(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut acc = vec![BigRational::zero(); n];
    for t in 0..n {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for s in 0..n {
            if s == t {
                continue;
            }
            // Multiply the basis polynomial by (x - xs[s]).
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (e, b) in basis.iter().enumerate() {
                next[e + 1] += b;
                next[e] -= b * &xs[s];
            }
            basis = next;
            denom *= &xs[t] - &xs[s];
        }
        let scale = &ys[t] / &denom;
        for (e, b) in basis.iter().enumerate() {
            acc[e] += b * &scale;
        }
    }
    while acc.last().is_some_and(Zero::is_zero) {
        acc.pop();
    }
    acc
}

/// Extracts the quasipolynomial description of a rational series.
///
/// The period is the lcm of the distinct denominator exponents. Each
/// residue class is fitted by exact Lagrange interpolation through
/// `(total factor count)` sample points taken beyond the numerator
/// degree, then the whole description is certified against the expanded
/// series from `valid_from` up to a horizon several periods past the last
/// fit point. A certification mismatch is a [`IdentityError::FitFailure`].
pub fn quasipolynomial_extract(gf: &RationalGF) -> Result<QuasiPolynomial, IdentityError> {
    let deg_num: i64 = gf.numerator().degree().map_or(-1, |d| d as i64);
    if gf.denominator().is_empty() {
        // A bare polynomial: eventually the zero quasipolynomial.
        return Ok(QuasiPolynomial {
            period: 1,
            constituents: vec![Vec::new()],
            valid_from: (deg_num + 1) as usize,
            certified_terms: (deg_num + 1) as usize,
        });
    }
    let period = gf
        .denominator()
        .iter()
        .fold(1u64, |acc, &(k, _)| num_integer::lcm(acc, k));
    let degree_bound: usize = gf
        .denominator()
        .iter()
        .map(|&(_, mult)| mult as usize)
        .sum::<usize>()
        - 1;
    let deg_den: i64 = gf
        .denominator()
        .iter()
        .map(|&(k, mult)| k as i64 * mult as i64)
        .sum();
    let valid_from = usize::try_from(deg_num - deg_den + 1).unwrap_or(0);

    // Per-residue first sample index: the smallest k with
    // period * k + i > deg_num.
    let first_k = |i: u64| -> u64 {
        let mut k = 0u64;
        while (period * k + i) as i64 <= deg_num {
            k += 1;
        }
        k
    };
    let fit_max = (0..period)
        .map(|i| period * (first_k(i) + degree_bound as u64) + i)
        .max()
        .unwrap() as usize;
    let certified_terms = fit_max + 1 + (period as usize) * (degree_bound + 1);
    let series = gf.expand(certified_terms);

    let mut constituents = Vec::with_capacity(period as usize);
    for i in 0..period {
        let k0 = first_k(i);
        let xs: Vec<BigRational> = (0..=degree_bound as u64)
            .map(|t| BigRational::from_integer(BigInt::from(k0 + t)))
            .collect();
        let ys: Vec<BigRational> = (0..=degree_bound as u64)
            .map(|t| {
                BigRational::from_integer(series[(period * (k0 + t) + i) as usize].clone())
            })
            .collect();
        constituents.push(lagrange_fit(&xs, &ys));
    }

    let qp = QuasiPolynomial {
        period,
        constituents,
        valid_from,
        certified_terms,
    };
    for n in valid_from..certified_terms {
        let predicted = qp.eval(n as u64);
        let actual = BigRational::from_integer(series[n].clone());
        if predicted != actual {
            return Err(IdentityError::FitFailure(format!(
                "constituents predict {predicted} at n = {n}, series has {actual}"
            )));
        }
    }
    Ok(qp)
}

/// One stored generating function: for offsets `A = modulus * a + r`, the
/// series equals the instantiated numerator over the fixed denominator.
/// Numerator terms are `[coeff, const_exp, a_coeff]` triples denoting
/// `coeff * z^(const_exp + a_coeff * a)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoldenCase {
    pub m: u64,
    pub case_index: u64,
    #[serde(rename = "A_form")]
    pub a_form: GoldenAForm,
    pub numerator_terms: Vec<(i64, u64, u64)>,
    pub denominator: Vec<(u64, u32)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoldenAForm {
    pub modulus: u64,
    pub r: u64,
}

impl GoldenCase {
    /// The stored rational function at a concrete `a`.
    pub fn instantiate(&self, a: u64) -> RationalGF {
        let mut num = Poly::zero();
        for &(coeff, const_exp, a_coeff) in &self.numerator_terms {
            num = num.add(&Poly::monomial(
                BigInt::from(coeff),
                (const_exp + a_coeff * a) as usize,
            ));
        }
        RationalGF::new(num, self.denominator.clone())
    }

    /// The offset this instantiation describes.
    pub fn offset(&self, a: u64) -> u64 {
        self.a_form.modulus * a + self.a_form.r
    }
}

/// Loads one golden table file (a JSON array of [`GoldenCase`]).
pub fn load_golden(path: &Path) -> Result<Vec<GoldenCase>, IdentityError> {
    let text = std::fs::read_to_string(path).map_err(|source| IdentityError::GoldenIo {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| IdentityError::GoldenParse {
        path: path.display().to_string(),
        source,
    })
}

/// Validates stored tables against freshly constructed generating
/// functions: for each case and each `a <= max_a`, the two forms must be
/// equal under cross-multiplication and their first `terms` series
/// coefficients must agree exactly.
///
/// `which` selects `"m5"`, `"m6"`, or `"all"`; `dir` holds `m5.json` and
/// `m6.json`.
pub fn check_golden_tables(
    dir: &Path,
    which: &str,
    max_a: u64,
    terms: usize,
) -> Result<GoldenReport, IdentityError> {
    let files: Vec<&str> = match which {
        "m5" => vec!["m5.json"],
        "m6" => vec!["m6.json"],
        _ => vec!["m5.json", "m6.json"],
    };
    let mut cases = 0u64;
    let mut instances = 0u64;
    let mut failure = None;
    'outer: for file in files {
        for case in load_golden(&dir.join(file))? {
            cases += 1;
            for a in 0..=max_a {
                let stored = case.instantiate(a);
                let engine = perp_gf(case.m, case.offset(a) as i64)?;
                instances += 1;
                if !gf_equal(&stored, &engine) {
                    failure = Some(format!(
                        "m = {}, case {}, a = {a}: stored form differs from engine",
                        case.m, case.case_index
                    ));
                    break 'outer;
                }
                if stored.expand(terms) != engine.expand(terms) {
                    failure = Some(format!(
                        "m = {}, case {}, a = {a}: series mismatch within {terms} terms",
                        case.m, case.case_index
                    ));
                    break 'outer;
                }
            }
        }
    }
    Ok(GoldenReport {
        which: which.to_string(),
        cases,
        instances,
        series_terms: terms,
        passed: failure.is_none(),
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::PathBuf;

    fn golden_dir() -> PathBuf {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../golden")
    }

    #[test]
    fn catalog_passes_on_short_sweep() {
        for id in CATALOG {
            let report = check_identity_catalog(id, 48).unwrap();
            assert!(
                report.passed,
                "{id}: {:?}",
                report.counterexample
            );
            assert!(report.checked > 0, "{id} checked nothing");
        }
    }

    #[test]
    fn unknown_identity_is_an_error() {
        assert!(matches!(
            check_identity_catalog("m7-wishful", 10),
            Err(IdentityError::UnknownIdentity(_))
        ));
    }

    #[test]
    fn unimodality_short_sweep() {
        for m in 1..=6 {
            assert!(check_unimodality(m, 20).passed);
        }
    }

    #[test]
    fn delta_nonneg_short_sweep() {
        let report = check_delta_nonneg(4, 6, 60).unwrap();
        assert!(report.passed, "{:?}", report.counterexample);
    }

    #[test]
    fn congruence_worked_example() {
        // ell = 5, j = 1, even family a = 29: at N = 67 the difference is
        // p(76, 4, 67) - p(75, 4, 67) = 3648 - 3518 = 130.
        assert_eq!(delta_bounded(1, 2 * 67 - 2 * 29, 4, 67), BigInt::from(130));
        assert_eq!(delta_atmost(30, 38, 3), BigInt::from(130));
        // At N = a = 29 the difference is 1, which is why the scan skips
        // the window between the trivial and the guarded range.
        assert_eq!(delta_bounded(1, 0, 4, 29), BigInt::from(1));
        let report = congruence_scan(5, 1, 80).unwrap();
        assert!(report.passed, "{:?}", report.counterexample);
        assert_eq!(report.a_even_family, 29);
        assert_eq!(report.a_odd_family, 30);
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(matches!(congruence_scan(6, 1, 10), Err(IdentityError::NotPrime(6))));
        assert!(matches!(congruence_scan(1, 1, 10), Err(IdentityError::NotPrime(1))));
    }

    #[test]
    fn quasipolynomial_of_three_part_counts() {
        let gf = RationalGF::new(Poly::one(), vec![(1, 1), (2, 1), (3, 1)]);
        let qp = quasipolynomial_extract(&gf).unwrap();
        assert_eq!(qp.period, 6);
        assert_eq!(qp.degree(), Some(2));
        assert_eq!(qp.valid_from, 0);
        let expected: [[i64; 3]; 6] = [
            [1, 3, 3],
            [1, 4, 3],
            [2, 5, 3],
            [3, 6, 3],
            [4, 7, 3],
            [5, 8, 3],
        ];
        for (i, row) in expected.iter().enumerate() {
            let want: Vec<BigRational> = row
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect();
            assert_eq!(qp.constituents[i], want, "residue {i}");
        }
        assert_eq!(qp.constituent_text(0), "3*k^2 + 3*k + 1");
        // Spot-check far beyond the certification horizon.
        assert_eq!(qp.eval(600), BigRational::from_integer(p_atmost(600, 3)));
    }

    #[test]
    fn quasipolynomial_geometric() {
        let gf = RationalGF::new(Poly::one(), vec![(1, 1)]);
        let qp = quasipolynomial_extract(&gf).unwrap();
        assert_eq!(qp.period, 1);
        assert_eq!(qp.constituents, vec![vec![BigRational::one()]]);
    }

    #[test]
    fn golden_m6_loads_and_validates() {
        let cases = load_golden(&golden_dir().join("m6.json")).unwrap();
        assert_eq!(cases.len(), 6);
        assert!(cases.iter().all(|c| c.m == 6));
        let report = check_golden_tables(&golden_dir(), "m6", 1, 120).unwrap();
        assert!(report.passed, "{:?}", report.failure);
        assert_eq!(report.cases, 6);
        assert_eq!(report.instances, 12);
    }

    #[test]
    fn golden_missing_file_is_io_error() {
        let err = check_golden_tables(Path::new("/nonexistent"), "m5", 0, 10).unwrap_err();
        assert!(matches!(err, IdentityError::GoldenIo { .. }));
    }
}

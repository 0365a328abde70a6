//! Exact integer polynomials in one variable, the symmetric decomposition,
//! gamma expansions and the series expansion of the 1/k-Eulerian
//! polynomials.
//!
//! Every polynomial is dense and lowest-degree-first. The zero polynomial is
//! the empty coefficient vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Dense polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `x^d`.
    pub fn monomial(d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Polynomial whose coefficient of `x^i` is `counts[i]`.
    pub fn from_counts(counts: &[u64]) -> Self {
        Self::new(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `(1 + x)^e`.
    pub fn one_plus_x_pow(e: usize) -> Self {
        let mut coeffs = Vec::with_capacity(e + 1);
        let mut c = BigInt::one();
        coeffs.push(c.clone());
        for i in 0..e {
            c = c * (e - i) / (i + 1);
            coeffs.push(c.clone());
        }
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiply by `x^m`.
    pub fn shift(&self, m: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `x^n h(1/x)`; needs `n >= deg h`.
    pub fn reversed(&self, n: usize) -> Self {
        assert!(
            self.degree().is_none_or(|d| d <= n),
            "reversal degree below polynomial degree"
        );
        let coeffs = (0..=n).rev().map(|i| self.coeff(i)).collect();
        Self::new(coeffs)
    }

    /// Exact quotient by `1 - x`, or `None` when `1 - x` does not divide.
    pub fn div_one_minus_x(&self) -> Option<Self> {
        // p = (1 - x) q  gives  q_i = p_i + q_{i-1}; the running sum must
        // vanish past the top coefficient.
        let mut q = Vec::with_capacity(self.coeffs.len());
        let mut acc = BigInt::zero();
        for c in &self.coeffs {
            acc += c;
            q.push(acc.clone());
        }
        if !acc.is_zero() {
            return None;
        }
        Some(Self::new(q))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// `true` when `coeff(i) == coeff(center - i)` for every `0 <= i <= center`.
    pub fn is_symmetric_about(&self, center: usize) -> bool {
        self.first_asymmetry(center).is_none()
    }

    fn first_asymmetry(&self, center: usize) -> Option<(usize, usize)> {
        if self.degree().is_some_and(|d| d > center) {
            let d = self.degree().unwrap();
            // the top coefficient has no partner inside [0, center]
            return Some((0, d));
        }
        (0..=center / 2)
            .find(|&i| self.coeff(i) != self.coeff(center - i))
            .map(|i| (i, center - i))
    }

    /// Dense text form, e.g. `[1,10,4]`; the zero polynomial prints as `[]`.
    pub fn to_dense_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Human form, e.g. `1 + 10x + 4x^2`.
    pub fn to_pretty_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                out.push_str(&mag.to_string());
            }
            match i {
                0 => {}
                1 => out.push('x'),
                _ => out.push_str(&format!("x^{i}")),
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dense_string())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Parses the dense form `[1,10,4]` (whitespace tolerated).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: "polynomial must be written as [c0,c1,...]".into(),
            })?;
        if inner.trim().is_empty() {
            return Ok(Self::zero());
        }
        let mut coeffs = Vec::new();
        for part in inner.split(',') {
            let c = part.trim().parse::<BigInt>().map_err(|e| Error::Parse {
                pos: 0,
                msg: format!("bad coefficient {part:?}: {e}"),
            })?;
            coeffs.push(c);
        }
        Ok(Self::new(coeffs))
    }
}

// Coefficients that fit in an i64 are plain JSON numbers; larger ones are
// emitted as decimal strings so nothing is rounded.
fn serialize_bigints<S: Serializer>(
    coeffs: &[BigInt],
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = serializer.serialize_seq(Some(coeffs.len()))?;
    for c in coeffs {
        match c.to_i64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&c.to_string())?,
        }
    }
    seq.end()
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_bigints(&self.coeffs, serializer)
    }
}

impl<'a> Add<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        &self + &rhs
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: IntPolynomial) -> IntPolynomial {
        &self - &rhs
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

/// Dense polynomial with exact rational coefficients. Only used as the
/// carrier for series coefficients before they are scaled back to integers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = RationalPolynomial { coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add_assign_ref(&mut self, rhs: &RationalPolynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRational::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.normalize();
    }

    pub fn mul_ref(&self, rhs: &RationalPolynomial) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// The integer polynomial with the same coefficients, if all of them are
    /// integers.
    pub fn to_integer(&self) -> Option<IntPolynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(IntPolynomial::new)
    }
}

impl From<&IntPolynomial> for RationalPolynomial {
    fn from(p: &IntPolynomial) -> Self {
        RationalPolynomial::new(
            p.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }
}

/// Shape of a polynomial with nonnegative coefficients read at a given
/// center degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShapeProperties {
    pub symmetric: bool,
    pub unimodal: bool,
    pub alternating_increasing: bool,
    pub gamma_positive: bool,
}

/// `h = a + x b` with `a` symmetric about `center` and `b` about `center - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetricDecomposition {
    pub a: IntPolynomial,
    pub b: IntPolynomial,
    pub center: usize,
}

impl SymmetricDecomposition {
    /// `a + x b`.
    pub fn recombine(&self) -> IntPolynomial {
        &self.a + &self.b.shift(1)
    }

    /// `x b`, which is symmetric about `center`.
    pub fn x_b(&self) -> IntPolynomial {
        self.b.shift(1)
    }
}

/// Coefficients in the basis `x^i (1+x)^(center - 2i)`, `i = 0..=center/2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaExpansion {
    pub center: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub gamma: Vec<BigInt>,
}

impl GammaExpansion {
    /// Pads (or keeps) `gamma` to the full length `center/2 + 1`. Entries
    /// past that length must be zero.
    pub fn from_counts(center: usize, counts: &[u64]) -> Result<Self> {
        let len = center / 2 + 1;
        if counts.iter().skip(len).any(|&c| c != 0) {
            return Err(Error::Precondition(format!(
                "gamma vector longer than {len} at center {center}"
            )));
        }
        let mut gamma: Vec<BigInt> = counts.iter().take(len).map(|&c| BigInt::from(c)).collect();
        gamma.resize(len, BigInt::zero());
        Ok(GammaExpansion { center, gamma })
    }

    pub fn is_nonnegative(&self) -> bool {
        self.gamma.iter().all(|g| !g.is_negative())
    }
}

fn check_shape_domain(h: &IntPolynomial, n: usize) -> Result<()> {
    if let Some(i) = h.coeffs().iter().position(Signed::is_negative) {
        return Err(Error::NegativeCoefficient { index: i });
    }
    if let Some(d) = h.degree() {
        if d > n {
            return Err(Error::CenterBelowDegree {
                center: n,
                degree: d,
            });
        }
    }
    Ok(())
}

fn is_unimodal(a: &[BigInt]) -> bool {
    let mut i = 1;
    while i < a.len() && a[i - 1] <= a[i] {
        i += 1;
    }
    while i < a.len() && a[i - 1] >= a[i] {
        i += 1;
    }
    i >= a.len()
}

fn is_alternating_increasing(h: &IntPolynomial, n: usize) -> bool {
    // a_0 <= a_n <= a_1 <= a_{n-1} <= ... <= a_{floor((n+1)/2)}
    let target = n.div_ceil(2);
    let mut order = Vec::with_capacity(n + 1);
    for t in 0..=n {
        order.push(t);
        if t == target {
            break;
        }
        order.push(n - t);
        if n - t == target {
            break;
        }
    }
    order.windows(2).all(|w| h.coeff(w[0]) <= h.coeff(w[1]))
}

/// Symmetry, unimodality, alternating increase and gamma-positivity of `h`
/// read with center degree `n`.
pub fn shape_properties(h: &IntPolynomial, n: usize) -> Result<ShapeProperties> {
    check_shape_domain(h, n)?;
    let full: Vec<BigInt> = (0..=n).map(|i| h.coeff(i)).collect();
    let symmetric = h.is_symmetric_about(n);
    let gamma_positive = symmetric && gamma_expand(h, n)?.is_nonnegative();
    Ok(ShapeProperties {
        symmetric,
        unimodal: is_unimodal(&full),
        alternating_increasing: is_alternating_increasing(h, n),
        gamma_positive,
    })
}

/// The unique split `h = a + x b` with `a` symmetric about `n` and `b`
/// symmetric about `n - 1`.
pub fn symmetric_decompose(h: &IntPolynomial, n: usize) -> Result<SymmetricDecomposition> {
    if let Some(d) = h.degree() {
        if d > n {
            return Err(Error::CenterBelowDegree {
                center: n,
                degree: d,
            });
        }
    }
    let rev = h.reversed(n);
    // a = (h - x^{n+1} h(1/x)) / (1 - x),  b = (x^n h(1/x) - h) / (1 - x)
    let a = (h - &rev.shift(1))
        .div_one_minus_x()
        .ok_or_else(|| Error::Internal("a-part division by 1-x was not exact".into()))?;
    let b = (&rev - h)
        .div_one_minus_x()
        .ok_or_else(|| Error::Internal("b-part division by 1-x was not exact".into()))?;
    let dec = SymmetricDecomposition { a, b, center: n };
    if dec.recombine() != *h {
        return Err(Error::Internal("a + x b does not reproduce h".into()));
    }
    Ok(dec)
}

/// Gamma coefficients of a polynomial symmetric about `n`, by peeling the
/// lowest remaining coefficient.
pub fn gamma_expand(h: &IntPolynomial, n: usize) -> Result<GammaExpansion> {
    if let Some((low, high)) = h.first_asymmetry(n) {
        return Err(Error::NotSymmetric {
            center: n,
            low,
            high,
        });
    }
    let mut rest = h.clone();
    let mut gamma = Vec::with_capacity(n / 2 + 1);
    for i in 0..=n / 2 {
        let g = rest.coeff(i);
        if !g.is_zero() {
            let term = IntPolynomial::one_plus_x_pow(n - 2 * i).shift(i).scale(&g);
            rest = &rest - &term;
        }
        gamma.push(g);
    }
    if !rest.is_zero() {
        return Err(Error::Internal(format!(
            "gamma peeling left remainder {rest}"
        )));
    }
    Ok(GammaExpansion { center: n, gamma })
}

/// `sum_i gamma_i x^i (1+x)^(center - 2i)`.
pub fn gamma_compose(g: &GammaExpansion) -> IntPolynomial {
    g.gamma
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(IntPolynomial::zero(), |acc, (i, c)| {
            let term = IntPolynomial::one_plus_x_pow(g.center - 2 * i)
                .shift(i)
                .scale(c);
            &acc + &term
        })
}

/// `A_0 .. A_max_order` read off the exponential generating function
/// `((1-x) / (e^{kz(x-1)} - x))^{1/k}`.
///
/// Writing `h = g^{-1/k}` with `g = (e^{kz(x-1)} - x)/(1-x)`, the relation
/// `k h' g = -g' h` determines the coefficients of `h` one at a time.
pub fn egf_one_over_k_eulerian(k: usize, max_order: usize) -> Result<Vec<IntPolynomial>> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let kq = BigRational::from_integer(BigInt::from(k));

    // g_0 = 1, g_m = -k^m (x-1)^{m-1} / m!  for m >= 1.
    let x_minus_1 = RationalPolynomial::new(vec![-BigRational::one(), BigRational::one()]);
    let mut g = Vec::with_capacity(max_order + 2);
    g.push(RationalPolynomial::one());
    let mut power = RationalPolynomial::one(); // (x-1)^{m-1}
    let mut factor = BigRational::one(); // k^m / m!
    for m in 1..=max_order + 1 {
        factor = factor * &kq / BigRational::from_integer(BigInt::from(m));
        g.push(power.scale(&-factor.clone()));
        power = power.mul_ref(&x_minus_1);
    }

    let mut h: Vec<RationalPolynomial> = vec![RationalPolynomial::one()];
    for n in 0..max_order {
        // k (n+1) h_{n+1} = -k sum_{j<n} (j+1) h_{j+1} g_{n-j}
        //                   - sum_{j<=n} (n-j+1) g_{n-j+1} h_j
        let mut rhs = RationalPolynomial::zero();
        for j in 0..n {
            let c = -(&kq * BigRational::from_integer(BigInt::from(j + 1)));
            rhs.add_assign_ref(&h[j + 1].mul_ref(&g[n - j]).scale(&c));
        }
        for j in 0..=n {
            let c = -BigRational::from_integer(BigInt::from(n - j + 1));
            rhs.add_assign_ref(&g[n - j + 1].mul_ref(&h[j]).scale(&c));
        }
        let denom = &kq * BigRational::from_integer(BigInt::from(n + 1));
        h.push(rhs.scale(&(BigRational::one() / denom)));
    }

    let mut out = Vec::with_capacity(max_order + 1);
    let mut fact = BigRational::one();
    for (n, hn) in h.iter().enumerate() {
        if n > 0 {
            fact *= BigRational::from_integer(BigInt::from(n));
        }
        let scaled = hn.scale(&fact);
        let a = scaled.to_integer().ok_or_else(|| {
            Error::Internal(format!("A_{n} has a non-integer coefficient (k={k})"))
        })?;
        out.push(a);
    }
    Ok(out)
}

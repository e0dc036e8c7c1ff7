//! Exact scalar arithmetic.
//!
//! Three layers of coefficients appear in the engine:
//!
//! * [`LaurentPoly`]: Laurent polynomials in the formal parameter `v` with
//!   arbitrary-precision rational coefficients.  Balanced q-integers and
//!   q-binomials live here.
//! * [`RationalFunction`]: reduced quotients of Laurent polynomials, used for
//!   relation coefficients such as `1 / ((1 - v^2)(1 - v^4))` that are not
//!   polynomial.
//! * [`QuadExt`]: elements `a + b*sqrt(q)` of the quadratic extension
//!   `Q(sqrt q)` for a fixed prime `q`.  Structure constants of the Hall
//!   algebra at a fixed field size live here; `v` specialises to `sqrt(q)`.
//!
//! No floating point is used anywhere.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `a/b`.
pub fn ratio(a: i64, b: i64) -> Rational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// `q^e` for a possibly negative exponent, as an exact rational.
pub fn q_pow(q: u8, e: i64) -> Rational {
    let base = BigRational::from_integer(BigInt::from(q as i64));
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

// ---------------------------------------------------------------------------
// Laurent polynomials
// ---------------------------------------------------------------------------

/// Laurent polynomial in `v` over the rationals.  Zero coefficients are never
/// stored, so structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, Rational::one())
    }

    /// The monomial `c * v^e`.
    pub fn monomial(e: i64, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        LaurentPoly { coeffs }
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(e, Rational::one())
    }

    /// Constant polynomial.
    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(terms: &[(i64, Rational)]) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(*e, c.clone());
        }
        p
    }

    fn add_term(&mut self, e: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.coeffs.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// Multiply by `v^e`.
    pub fn shift(&self, e: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k + e, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // shift both to ordinary polynomials, divide, shift back
        let smin = self.min_exp().unwrap();
        let dmin = d.min_exp().unwrap();
        let mut num = self.shift(-smin);
        let den = d.shift(-dmin);
        let dlead = den.max_exp().unwrap();
        let dlc = den.coeff(dlead);
        let mut quo = Self::zero();
        while !num.is_zero() {
            let nlead = num.max_exp().unwrap();
            if nlead < dlead {
                return None;
            }
            let f = num.coeff(nlead) / &dlc;
            let t = Self::monomial(nlead - dlead, f);
            num = num.sub(&t.mul(&den));
            quo = quo.add(&t);
        }
        Some(quo.shift(smin - dmin))
    }

    /// Value at `v = 1` (the sum of all coefficients).
    pub fn eval_at_one(&self) -> Rational {
        self.coeffs.values().fold(Rational::zero(), |a, c| a + c)
    }

    /// Substitute `v -> v^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Value in `Q(sqrt q)` at `v = sqrt(q)`.
    pub fn eval_at_sqrt(&self, q: u8) -> QuadExt {
        let mut out = QuadExt::zero(q);
        for (e, c) in &self.coeffs {
            out = out.add(&QuadExt::v_pow(q, *e).scale(c));
        }
        out
    }

    /// Leading (highest-exponent) coefficient; zero polynomial gives zero.
    fn leading_coeff(&self) -> Rational {
        self.max_exp()
            .map(|e| self.coeff(e))
            .unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // descending exponents read most naturally
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            if *e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if *e == 1 {
                    write!(f, "v")?;
                } else {
                    write!(f, "v^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Monic polynomial gcd (inputs must be ordinary polynomials: min exponent 0).
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    if a.is_zero() {
        return a;
    }
    let lc = a.leading_coeff();
    a.scale(&lc.recip())
}

/// Polynomial remainder of `a` by `b` (ordinary polynomials, `b` nonzero).
fn poly_rem(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut r = a.clone();
    let blead = b.max_exp().unwrap();
    let blc = b.coeff(blead);
    while !r.is_zero() {
        let rlead = r.max_exp().unwrap();
        if rlead < blead {
            break;
        }
        let f = r.coeff(rlead) / &blc;
        let t = LaurentPoly::monomial(rlead - blead, f);
        r = r.sub(&t.mul(b));
    }
    r
}

// ---------------------------------------------------------------------------
// Rational functions
// ---------------------------------------------------------------------------

/// Reduced quotient of Laurent polynomials in `v`.
///
/// Canonical form: the denominator is an ordinary polynomial with nonzero
/// constant term and leading coefficient 1; the numerator carries any
/// leftover power of `v`.  Two equal rational functions are structurally
/// equal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFunction {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    /// `v^e` as a rational function.
    pub fn v_pow(e: i64) -> Self {
        Self::from_poly(LaurentPoly::v_pow(e))
    }

    /// Construct and reduce `num / den`; errors when `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Arithmetic("division by the zero polynomial".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        // Normalise the denominator to an ordinary polynomial with den(0) != 0,
        // moving the power of v into the numerator.
        let dmin = den.min_exp().unwrap();
        let den0 = den.shift(-dmin);
        let num0 = num.shift(-dmin);
        // Split the numerator as v^t * (ordinary polynomial with nonzero
        // constant term) and cancel the polynomial gcd.
        let nmin = num0.min_exp().unwrap();
        let npoly = num0.shift(-nmin);
        let g = poly_gcd(&npoly, &den0);
        let npoly = npoly.div_exact(&g).expect("gcd divides numerator");
        let den1 = den0.div_exact(&g).expect("gcd divides denominator");
        let lc = den1.leading_coeff();
        Ok(RationalFunction {
            num: npoly.shift(nmin).scale(&lc.recip()),
            den: den1.scale(&lc.recip()),
        })
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("nonzero denominators")
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero denominators")
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.mul(&Self::from_rational(c.clone()))
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Value in `Q(sqrt q)` at `v = sqrt(q)`; errors on a pole.
    pub fn eval_at_sqrt_q(&self, q: u8) -> Result<QuadExt> {
        let den = self.den.eval_at_sqrt(q);
        if den.is_zero() {
            return Err(Error::Arithmetic(format!(
                "pole at v = sqrt({q}): denominator {} vanishes",
                self.den
            )));
        }
        let num = self.num.eval_at_sqrt(q);
        num.div(&den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

// ---------------------------------------------------------------------------
// Quadratic extension Q(sqrt q)
// ---------------------------------------------------------------------------

/// An element `a + b*sqrt(q)` of `Q(sqrt q)`, `q` a fixed prime.
///
/// For prime `q` the square root is irrational, so the representation is
/// unique and this is a field: `(a + b*sqrt q)^-1 = (a - b*sqrt q) / (a^2 - q b^2)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadExt {
    q: u8,
    a: Rational,
    b: Rational,
}

impl QuadExt {
    pub fn new(q: u8, a: Rational, b: Rational) -> Self {
        QuadExt { q, a, b }
    }

    pub fn zero(q: u8) -> Self {
        Self::new(q, Rational::zero(), Rational::zero())
    }

    pub fn one(q: u8) -> Self {
        Self::new(q, Rational::one(), Rational::zero())
    }

    pub fn from_rational(q: u8, a: Rational) -> Self {
        Self::new(q, a, Rational::zero())
    }

    pub fn from_int(q: u8, n: i64) -> Self {
        Self::from_rational(q, rat(n))
    }

    /// `v^e` at `v = sqrt(q)`: even exponents land in `Q`, odd ones pick up
    /// one factor of `sqrt(q)`.
    pub fn v_pow(q: u8, e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            Self::new(q, q_pow(q, e / 2), Rational::zero())
        } else {
            // v^e = q^((e-1)/2) * sqrt(q), exact also for negative odd e
            let k = (e - 1) / 2;
            Self::new(q, Rational::zero(), q_pow(q, k))
        }
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    /// Rational part.
    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `sqrt(q)`.
    pub fn radical_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(self.q, other.q, "mixed Q(sqrt q) fields");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same(other);
        Self::new(self.q, &self.a + &other.a, &self.b + &other.b)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.q, -self.a.clone(), -self.b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same(other);
        let qr = rat(self.q as i64);
        Self::new(
            self.q,
            &self.a * &other.a + (&self.b * &other.b) * &qr,
            &self.a * &other.b + &self.b * &other.a,
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.q, &self.a * c, &self.b * c)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero in Q(sqrt q)".into()));
        }
        let qr = rat(self.q as i64);
        let norm = &self.a * &self.a - (&self.b * &self.b) * &qr;
        // norm = 0 would force sqrt(q) rational; impossible for prime q
        debug_assert!(!norm.is_zero());
        Ok(Self::new(self.q, &self.a / &norm, -(&self.b / &norm)))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.q);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, sqrt{})", self.a, self.b, self.q)
    }
}

// ---------------------------------------------------------------------------
// q-combinatorics (in the balanced convention)
// ---------------------------------------------------------------------------

/// Balanced q-integer `[r] = (v^r - v^-r)/(v - v^-1) = v^(r-1) + v^(r-3) + ... + v^(1-r)`.
pub fn q_integer(r: i64) -> LaurentPoly {
    if r == 0 {
        return LaurentPoly::zero();
    }
    if r < 0 {
        return q_integer(-r).neg();
    }
    let mut p = LaurentPoly::zero();
    for j in 0..r {
        p = p.add(&LaurentPoly::v_pow(r - 1 - 2 * j));
    }
    p
}

/// Balanced q-factorial `[r]! = [r][r-1]...[1]`.
pub fn q_factorial(r: i64) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for j in 1..=r {
        p = p.mul(&q_integer(j));
    }
    p
}

/// Balanced q-binomial `[m choose r]`; zero when `r < 0` or `r > m`.
pub fn q_binomial(m: i64, r: i64) -> LaurentPoly {
    if r < 0 || r > m {
        return LaurentPoly::zero();
    }
    let num = q_factorial(m);
    let den = q_factorial(r).mul(&q_factorial(m - r));
    num.div_exact(&den)
        .expect("q-binomial is a Laurent polynomial")
}

/// `phi_r(t) = (1 - t)(1 - t^2) ... (1 - t^r)` for an arbitrary rational-function
/// argument `t`; `phi_0 = 1`.
pub fn phi_poly(r: u32, t: &RationalFunction) -> RationalFunction {
    let mut acc = RationalFunction::one();
    let mut tp = RationalFunction::one();
    for _ in 1..=r {
        tp = tp.mul(t);
        acc = acc.mul(&RationalFunction::one().sub(&tp));
    }
    acc
}

/// The normalisation factor `tau_r = 1 / phi_r(v^2)` appearing in front of
/// higher-degree generator relations; `tau_0 = 1`.
pub fn tau(r: u32) -> RationalFunction {
    phi_poly(r, &RationalFunction::v_pow(2))
        .inv()
        .expect("phi_r(v^2) is a nonzero polynomial")
}

/// `phi_r(t)` at a rational value of `t`, as an exact rational.
pub fn phi_rational(r: u32, t: &Rational) -> Rational {
    let mut acc = Rational::one();
    let mut tp = Rational::one();
    for _ in 1..=r {
        tp *= t;
        acc *= Rational::one() - &tp;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(&terms.iter().map(|&(e, c)| (e, rat(c))).collect::<Vec<_>>())
    }

    #[test]
    fn q_integer_small_values() {
        assert!(q_integer(0).is_zero());
        assert_eq!(q_integer(1), LaurentPoly::one());
        assert_eq!(q_integer(2), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(q_integer(3), lp(&[(2, 1), (0, 1), (-2, 1)]));
    }

    #[test]
    fn q_integer_matches_ratio_definition() {
        // oracle: divide v^r - v^-r by v - v^-1 exactly
        for r in 1..8 {
            let num = LaurentPoly::v_pow(r).sub(&LaurentPoly::v_pow(-r));
            let den = LaurentPoly::v_pow(1).sub(&LaurentPoly::v_pow(-1));
            assert_eq!(num.div_exact(&den).unwrap(), q_integer(r));
        }
    }

    #[test]
    fn q_integer_specialises_to_integer() {
        for r in 0..9 {
            assert_eq!(q_integer(r).eval_at_one(), rat(r));
        }
    }

    #[test]
    fn q_binomial_values_and_symmetries() {
        assert_eq!(
            q_binomial(4, 2),
            lp(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)])
        );
        assert_eq!(q_binomial(3, 0), LaurentPoly::one());
        assert!(q_binomial(2, 3).is_zero());
        for m in 0..7 {
            for r in 0..=m {
                let b = q_binomial(m, r);
                // symmetry in r <-> m - r
                assert_eq!(b, q_binomial(m, m - r));
                // invariance under v <-> v^-1
                assert_eq!(b, b.bar());
                // Pascal recursion [m ch r] = v^r [m-1 ch r] + v^(r-m) [m-1 ch r-1]
                if m > 0 && r > 0 && r < m {
                    let rhs = q_binomial(m - 1, r)
                        .mul(&LaurentPoly::v_pow(r))
                        .add(&q_binomial(m - 1, r - 1).mul(&LaurentPoly::v_pow(r - m)));
                    assert_eq!(b, rhs);
                }
            }
        }
    }

    #[test]
    fn phi_and_tau() {
        // phi_2(1/2) = (1 - 1/2)(1 - 1/4) = 3/8
        assert_eq!(phi_rational(2, &ratio(1, 2)), ratio(3, 8));
        let t = RationalFunction::from_rational(ratio(1, 2));
        assert_eq!(
            phi_poly(2, &t),
            RationalFunction::from_rational(ratio(3, 8))
        );
        // recursion phi_{r+1}(t) = phi_r(t) * (1 - t^{r+1})
        let tv = RationalFunction::v_pow(2);
        for r in 0..4u32 {
            let lhs = phi_poly(r + 1, &tv);
            let rhs = phi_poly(r, &tv)
                .mul(&RationalFunction::one().sub(&tv.pow((r + 1) as i64).unwrap()));
            assert_eq!(lhs, rhs);
        }
        // tau_1 = 1/(1 - v^2), tau_2 = 1/((1-v^2)(1-v^4))
        let one = LaurentPoly::one();
        let t1 = RationalFunction::new(one.clone(), one.sub(&LaurentPoly::v_pow(2))).unwrap();
        assert_eq!(tau(1), t1);
        let den2 = one
            .sub(&LaurentPoly::v_pow(2))
            .mul(&one.sub(&LaurentPoly::v_pow(4)));
        let t2 = RationalFunction::new(one.clone(), den2).unwrap();
        assert_eq!(tau(2), t2);
        assert_eq!(tau(0), RationalFunction::one());
    }

    #[test]
    fn rational_function_normal_form() {
        // (v^2 - 1)/(v - 1) reduces to v + 1
        let num = lp(&[(2, 1), (0, -1)]);
        let den = lp(&[(1, 1), (0, -1)]);
        let r = RationalFunction::new(num, den).unwrap();
        assert_eq!(r, RationalFunction::from_poly(lp(&[(1, 1), (0, 1)])));
        // 1/(v - v^-1) has canonical denominator v^2 - 1 with numerator v
        let r2 = RationalFunction::new(LaurentPoly::one(), lp(&[(1, 1), (-1, -1)])).unwrap();
        assert_eq!(r2.numerator(), &LaurentPoly::v_pow(1));
        assert_eq!(r2.denominator(), &lp(&[(2, 1), (0, -1)]));
        // equal values built along different routes are structurally equal
        let a = RationalFunction::new(lp(&[(3, 2), (1, -2)]), lp(&[(2, 2), (0, -2)])).unwrap();
        assert_eq!(a, RationalFunction::v_pow(1));
    }

    #[test]
    fn rational_function_field_ops() {
        let x = RationalFunction::new(LaurentPoly::one(), lp(&[(0, 1), (2, -1)])).unwrap();
        let y = RationalFunction::v_pow(3);
        let z = x.mul(&y).div(&y).unwrap();
        assert_eq!(z, x);
        assert!(x.sub(&x).is_zero());
        let w = x.add(&y).mul(&x.add(&y));
        let w2 = x.mul(&x).add(&x.mul(&y).scale(&rat(2))).add(&y.mul(&y));
        assert_eq!(w, w2);
    }

    #[test]
    fn quad_ext_v_powers() {
        // v^2 = q, v^-2 = 1/q, v^1 = sqrt q, v^-1 = sqrt(q)/q
        let q = 3u8;
        assert_eq!(QuadExt::v_pow(q, 2), QuadExt::from_int(q, 3));
        assert_eq!(
            QuadExt::v_pow(q, -2),
            QuadExt::from_rational(q, ratio(1, 3))
        );
        assert_eq!(QuadExt::v_pow(q, 1), QuadExt::new(q, rat(0), rat(1)));
        assert_eq!(QuadExt::v_pow(q, -1), QuadExt::new(q, rat(0), ratio(1, 3)));
        // v^a * v^b = v^(a+b)
        for a in -5..=5 {
            for b in -5..=5 {
                assert_eq!(
                    QuadExt::v_pow(q, a).mul(&QuadExt::v_pow(q, b)),
                    QuadExt::v_pow(q, a + b)
                );
            }
        }
    }

    #[test]
    fn quad_ext_field_axioms() {
        let q = 5u8;
        let x = QuadExt::new(q, ratio(2, 3), ratio(-1, 4));
        let y = QuadExt::new(q, rat(7), ratio(1, 2));
        assert_eq!(x.mul(&y), y.mul(&x));
        assert_eq!(x.mul(&x.inv().unwrap()), QuadExt::one(q));
        assert_eq!(x.add(&y).mul(&y), x.mul(&y).add(&y.mul(&y)));
        assert_eq!(x.div(&y).unwrap().mul(&y), x);
    }

    #[test]
    fn eval_at_sqrt_q_examples() {
        // v + v^-1 at q = 2 evaluates to (3/2) sqrt 2
        let p = RationalFunction::from_poly(lp(&[(1, 1), (-1, 1)]));
        let v = p.eval_at_sqrt_q(2).unwrap();
        assert_eq!(v, QuadExt::new(2, rat(0), ratio(3, 2)));
        // tau_1 = 1/(1 - v^2) at q = 3 evaluates to -1/2
        let v2 = tau(1).eval_at_sqrt_q(3).unwrap();
        assert_eq!(v2, QuadExt::from_rational(3, ratio(-1, 2)));
        // 1/(v^2 - q) has a pole at v = sqrt q
        let pole = RationalFunction::new(LaurentPoly::one(), lp(&[(2, 1), (0, -2)])).unwrap();
        assert!(pole.eval_at_sqrt_q(2).is_err());
        // the same function is finite at a different q
        assert!(pole.eval_at_sqrt_q(3).is_ok());
    }

    #[test]
    fn eval_is_multiplicative() {
        let f = RationalFunction::new(lp(&[(3, 1), (0, 2)]), lp(&[(0, 1), (1, 3)])).unwrap();
        let g = RationalFunction::new(lp(&[(-2, 5), (1, 1)]), lp(&[(0, 2), (2, 1)])).unwrap();
        for q in [2u8, 3, 5, 7] {
            let lhs = f.mul(&g).eval_at_sqrt_q(q).unwrap();
            let rhs = f
                .eval_at_sqrt_q(q)
                .unwrap()
                .mul(&g.eval_at_sqrt_q(q).unwrap());
            assert_eq!(lhs, rhs);
            let sums = f.add(&g).eval_at_sqrt_q(q).unwrap();
            let sumr = f
                .eval_at_sqrt_q(q)
                .unwrap()
                .add(&g.eval_at_sqrt_q(q).unwrap());
            assert_eq!(sums, sumr);
        }
    }

    #[test]
    fn balanced_q_binomial_evaluates_in_quad_ext() {
        // [2] at v = sqrt 2: sqrt2 + sqrt2/2 = (3/2) sqrt 2
        let b = q_integer(2).eval_at_sqrt(2);
        assert_eq!(b, QuadExt::new(2, rat(0), ratio(3, 2)));
        // [4 ch 2] at v = 1 equals binomial(4,2) = 6
        assert_eq!(q_binomial(4, 2).eval_at_one(), rat(6));
    }
}

//! Dense univariate polynomials with exact rational coefficients.
//!
//! This is the certified substrate for every criterion check: arithmetic,
//! calculus, Euclidean gcd, and squarefree parts are all exact. No floating
//! point enters this module.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{BigRational, Complex, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::rat_to_f64;

/// A univariate polynomial over the rationals, stored densely.
///
/// `coeffs[i]` multiplies `x^i`; the highest entry is nonzero. The zero
/// polynomial is the empty coefficient vector, and its degree is `None`
/// (the "minus infinity" marker).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![BigRational::zero(), BigRational::one()])
    }

    /// Convenience constructor from integer coefficients, low to high.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero-padded beyond the degree.
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree of a polynomial known to be nonzero.
    pub fn degree_nonzero(&self) -> usize {
        debug_assert!(!self.is_zero());
        self.coeffs.len() - 1
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Substitute `x -> 2^s * x`, multiplying `coeffs[i]` by `2^(s*i)`.
    pub fn scale_variable_pow2(&self, s: i64) -> Self {
        if s == 0 {
            return self.clone();
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let step = if s > 0 {
            num::pow::pow(two, s as usize)
        } else {
            num::pow::pow(two, (-s) as usize).recip()
        };
        let mut factor = BigRational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * &factor;
                factor = &factor * &step;
                v
            })
            .collect();
        RatPoly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        RatPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        }
    }

    /// Exact evaluation by Horner's rule.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Coefficients converted to `f64`, low to high.
    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(rat_to_f64).collect()
    }

    /// Floating-point evaluation at a complex argument (Horner on converted
    /// coefficients). For verdicts use exact routes; this is for display and
    /// numeric backends only.
    pub fn eval_complex(&self, z: Complex<f64>) -> Complex<f64> {
        let mut acc = Complex::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + Complex::new(rat_to_f64(c), 0.0);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Monic multiple of `self` (unchanged zero polynomial).
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Divide by the absolute value of the leading coefficient: a positive
    /// rescale, so every sign evaluation is preserved.
    pub fn positive_normalize(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) => self.scale(&lc.abs().recip()),
        }
    }

    /// Exact Euclidean division: `self = q * divisor + r` with
    /// `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dlc = divisor
            .leading_coeff()
            .ok_or_else(|| Error::InvalidInput("division by the zero polynomial".into()))?;
        let ddeg = divisor.degree_nonzero();
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let qlen = rem.len() - ddeg;
        let mut quot = vec![BigRational::zero(); qlen];
        for qi in (0..qlen).rev() {
            let lead = std::mem::replace(&mut rem[qi + ddeg], BigRational::zero());
            if lead.is_zero() {
                continue;
            }
            let q = lead / dlc;
            for (j, dc) in divisor.coeffs.iter().enumerate().take(ddeg) {
                let t = dc * &q;
                rem[qi + j] = &rem[qi + j] - t;
            }
            quot[qi] = q;
        }
        rem.truncate(ddeg);
        Ok((RatPoly::new(quot), RatPoly::new(rem)))
    }

    /// Monic greatest common divisor via the exact Euclidean remainder
    /// sequence. Errors when both inputs are zero.
    pub fn gcd(a: &RatPoly, b: &RatPoly) -> Result<RatPoly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidInput("gcd of two zero polynomials".into()));
        }
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y)?;
            // A positive rescale after each step keeps coefficient growth in
            // check without touching the root set.
            x = y;
            y = r.positive_normalize();
        }
        Ok(x.monic())
    }

    /// `p / gcd(p, p')`, made monic: the product of the distinct irreducible
    /// factors of `p`.
    pub fn squarefree_part(&self) -> Result<RatPoly> {
        if self.is_zero() {
            return Err(Error::InvalidInput(
                "squarefree part of the zero polynomial".into(),
            ));
        }
        if self.is_constant() {
            return Ok(RatPoly::one());
        }
        let g = Self::gcd(self, &self.derivative())?;
        let (q, r) = self.div_rem(&g)?;
        debug_assert!(r.is_zero());
        Ok(q.monic())
    }

    /// True when `p` has no repeated factor (`deg gcd(p, p') = 0`).
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::InvalidInput(
                "squarefree test on the zero polynomial".into(),
            ));
        }
        if self.is_constant() {
            return Ok(true);
        }
        Ok(Self::gcd(self, &self.derivative())?.is_constant())
    }

    /// Wronskian `p'q - q'p`. For coprime `p`, `q` its roots are the finite
    /// critical points of the rational map `p/q`.
    pub fn wronskian(p: &RatPoly, q: &RatPoly) -> RatPoly {
        &(&p.derivative() * q) - &(&q.derivative() * p)
    }

    /// All rational roots, found by the rational root theorem on the
    /// integerized coefficients. Gives up (returning only a root at zero, if
    /// any) when the end coefficients are too large to factor cheaply; this
    /// is a best-effort exactness aid, never a completeness claim.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        if self.is_zero() || self.is_constant() {
            return Vec::new();
        }
        // Integerize: multiply by the lcm of denominators.
        let mut lcm = BigInt::from(1);
        for c in &self.coeffs {
            let d = c.denom();
            lcm = &lcm / num::Integer::gcd(&lcm, d) * d;
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut out = Vec::new();
        let first_nonzero = ints.iter().position(|c| !c.is_zero()).unwrap();
        if first_nonzero > 0 {
            out.push(BigRational::zero());
        }
        let a0 = ints[first_nonzero].abs();
        let an = ints.last().unwrap().abs();
        if let (Some(ps), Some(qs)) = (small_divisors(&a0), small_divisors(&an)) {
            for &p in &ps {
                for &q in &qs {
                    for sign in [1i64, -1] {
                        let cand = BigRational::new(BigInt::from(sign) * BigInt::from(p), BigInt::from(q));
                        if self.eval(&cand).is_zero() && !out.contains(&cand) {
                            out.push(cand);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Cauchy root bound: every complex root has absolute value strictly
    /// below `1 + max |c_i| / |c_n|`.
    pub fn cauchy_root_bound(&self) -> BigRational {
        let one = BigRational::one();
        let Some(lc) = self.leading_coeff() else {
            return one;
        };
        let lc_abs = lc.abs();
        let mut best = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let ratio = c.abs() / &lc_abs;
            if ratio > best {
                best = ratio;
            }
        }
        one + best
    }
}

/// Divisors of `|n|` when `n` fits in a machine word, via trial division.
fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    use num::ToPrimitive;
    let v = n.to_u64()?;
    if v == 0 || v > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= v) {
        if v % d == 0 {
            out.push(d);
            if d != v / d {
                out.push(v / d);
            }
        }
        d += 1;
    }
    Some(out)
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({})", self)
    }
}

/// Canonical rendering: descending powers, no spaces, rational coefficients
/// as `a/b`. Reparsing the output reproduces the polynomial exactly.
impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{}x", mag)?,
                (_, true) => write!(f, "x^{}", i)?,
                (_, false) => write!(f, "{}x^{}", mag, i)?,
            }
        }
        Ok(())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        RatPoly::new(out)
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        RatPoly::new(out)
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

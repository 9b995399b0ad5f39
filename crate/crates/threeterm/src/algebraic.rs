//! Certified real-root machinery: Sturm chains, root isolation, and exact
//! sign evaluation at algebraic points.
//!
//! Everything here is exact rational arithmetic. The criterion checks lean on
//! this module for every yes/no decision, so there is deliberately no
//! floating-point shortcut anywhere.

use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::rat::{big_ratio, rat_to_f64, sign_i8};

/// An endpoint for real-root counting: finite rational or one of the two
/// infinities.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

/// Sturm chain of a squarefree polynomial, with every element rescaled by a
/// positive constant after each remainder step to keep coefficients small.
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    pub fn new(p: &RatPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::InvalidInput("Sturm chain of the zero polynomial".into()));
        }
        let mut chain = vec![p.positive_normalize()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d.positive_normalize());
            loop {
                let len = chain.len();
                let (_, r) = chain[len - 2].div_rem(&chain[len - 1])?;
                if r.is_zero() {
                    break;
                }
                chain.push((-&r).positive_normalize());
            }
        }
        Ok(SturmChain { chain })
    }

    /// The chain terminates in (a positive multiple of) `gcd(p, p')`, so a
    /// nonconstant tail means the input had a repeated factor.
    pub fn input_was_squarefree(&self) -> bool {
        self.chain.last().map(RatPoly::is_constant).unwrap_or(true)
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut count = 0;
        let mut prev = 0i8;
        for s in signs {
            if s == 0 {
                continue;
            }
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    fn variations_at(&self, b: &Bound) -> usize {
        match b {
            Bound::Finite(x) => {
                Self::variations(self.chain.iter().map(|q| sign_i8(&q.eval(x))))
            }
            Bound::PosInf => Self::variations(self.chain.iter().map(|q| match q.leading_coeff() {
                None => 0,
                Some(lc) => sign_i8(lc),
            })),
            Bound::NegInf => Self::variations(self.chain.iter().map(|q| match q.leading_coeff() {
                None => 0,
                Some(lc) => {
                    let s = sign_i8(lc);
                    if q.degree_nonzero() % 2 == 1 {
                        -s
                    } else {
                        s
                    }
                }
            })),
        }
    }

    /// Number of real roots in the half-open interval `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        let vl = self.variations_at(lo);
        let vh = self.variations_at(hi);
        vl.saturating_sub(vh)
    }
}

/// Exact count of the real roots of a squarefree `p` in `(lo, hi]`.
///
/// Callers holding a possibly non-squarefree polynomial must pass its
/// squarefree part first; handing over a repeated factor is a contract
/// violation, not a silent miscount.
pub fn sturm_count(p: &RatPoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    let chain = SturmChain::new(p)?;
    if !chain.input_was_squarefree() {
        return Err(Error::ContractViolation(
            "sturm_count requires a squarefree input; take squarefree_part first".into(),
        ));
    }
    Ok(chain.count(lo, hi))
}

/// Real-root count of a squarefree polynomial over the whole line.
pub fn count_real_roots(p: &RatPoly) -> Result<usize> {
    sturm_count(p, &Bound::NegInf, &Bound::PosInf)
}

/// A real algebraic number: a squarefree defining polynomial together with a
/// rational isolating interval holding exactly one of its real roots.
///
/// A rational value is stored with `lo == hi`. Values are immutable;
/// `refine` returns a narrower copy.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    defining: RatPoly,
    lo: BigRational,
    hi: BigRational,
}

impl AlgebraicNumber {
    pub fn from_rational(r: BigRational) -> Self {
        let defining = RatPoly::new(vec![-&r, BigRational::one()]);
        AlgebraicNumber {
            defining,
            lo: r.clone(),
            hi: r,
        }
    }

    pub fn defining(&self) -> &RatPoly {
        &self.defining
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    /// The exact rational value, when the interval has collapsed to a point.
    pub fn rational_value(&self) -> Option<&BigRational> {
        (self.lo == self.hi).then_some(&self.lo)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Does the closed interval contain `r`, with `r` a root of the defining
    /// polynomial? This is an exact equality test against a rational.
    pub fn equals_rational(&self, r: &BigRational) -> bool {
        self.lo <= *r && *r <= self.hi && self.defining.eval(r).is_zero()
    }

    /// Halve the isolating interval, preserving containment. A midpoint that
    /// happens to be the root itself collapses the interval to a point.
    pub fn refine(&self) -> Self {
        if self.lo == self.hi {
            return self.clone();
        }
        let mid = (&self.lo + &self.hi) / big_ratio(2, 1);
        let fm = self.defining.eval(&mid);
        if fm.is_zero() {
            return AlgebraicNumber {
                defining: self.defining.clone(),
                lo: mid.clone(),
                hi: mid,
            };
        }
        let flo = self.defining.eval(&self.lo);
        debug_assert!(!flo.is_zero());
        if sign_i8(&flo) != sign_i8(&fm) {
            AlgebraicNumber {
                defining: self.defining.clone(),
                lo: self.lo.clone(),
                hi: mid,
            }
        } else {
            AlgebraicNumber {
                defining: self.defining.clone(),
                lo: mid,
                hi: self.hi.clone(),
            }
        }
    }

    /// Refine until the interval is no wider than `width`.
    pub fn refined_to_width(&self, width: &BigRational) -> Self {
        let mut cur = self.clone();
        while &cur.width() > width {
            cur = cur.refine();
        }
        cur
    }

    /// Double-precision approximation, refined to display accuracy
    /// (interval width 1e-12 relative to magnitude).
    pub fn approx_f64(&self) -> f64 {
        let scale = BigRational::one() + self.lo.abs().max(self.hi.abs());
        let target = scale * big_ratio(1, 1_000_000_000_000);
        let cur = self.refined_to_width(&target);
        rat_to_f64(&((&cur.lo + &cur.hi) / big_ratio(2, 1)))
    }
}

/// Isolate every distinct real root of `p` (nonzero): one algebraic number
/// per root, pairwise-disjoint intervals, sorted ascending.
///
/// The initial box is the Cauchy bound; splitting is Sturm-guided bisection.
pub fn isolate_real_roots(p: &RatPoly) -> Result<Vec<AlgebraicNumber>> {
    if p.is_zero() {
        return Err(Error::InvalidInput("cannot isolate roots of the zero polynomial".into()));
    }
    let sf = p.squarefree_part()?;
    if sf.is_constant() {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(&sf)?;
    let bound = sf.cauchy_root_bound();
    let lo = -&bound;
    let mut out = Vec::new();
    isolate_rec(&sf, &chain, lo, bound, &mut out);
    // Collapse intervals isolating a rational root onto the exact point, so
    // downstream witnesses can report exact values at such roots.
    let rationals = sf.rational_roots();
    for a in &mut out {
        if a.rational_value().is_none() {
            if let Some(r) = rationals.iter().find(|r| a.lo() < *r && *r < a.hi()) {
                a.lo = r.clone();
                a.hi = r.clone();
            }
        }
    }
    Ok(out)
}

fn isolate_rec(
    sf: &RatPoly,
    chain: &SturmChain,
    lo: BigRational,
    hi: BigRational,
    out: &mut Vec<AlgebraicNumber>,
) {
    // Invariant: sf(lo) != 0 and sf(hi) != 0.
    let count = chain.count(&Bound::Finite(lo.clone()), &Bound::Finite(hi.clone()));
    match count {
        0 => {}
        1 => out.push(AlgebraicNumber {
            defining: sf.clone(),
            lo,
            hi,
        }),
        _ => {
            let mid = (&lo + &hi) / big_ratio(2, 1);
            if !sf.eval(&mid).is_zero() {
                isolate_rec(sf, chain, lo, mid.clone(), out);
                isolate_rec(sf, chain, mid, hi, out);
            } else {
                // The midpoint is itself a root: peel it off exactly, then
                // recurse on both sides of a band that contains only it.
                let mut w = (&hi - &lo) / big_ratio(4, 1);
                loop {
                    let a = &mid - &w;
                    let b = &mid + &w;
                    if !sf.eval(&a).is_zero()
                        && !sf.eval(&b).is_zero()
                        && chain.count(&Bound::Finite(a.clone()), &Bound::Finite(b.clone())) == 1
                    {
                        isolate_rec(sf, chain, lo, a, out);
                        out.push(AlgebraicNumber {
                            defining: sf.clone(),
                            lo: mid.clone(),
                            hi: mid.clone(),
                        });
                        isolate_rec(sf, chain, b, hi, out);
                        break;
                    }
                    w = w / big_ratio(2, 1);
                }
            }
        }
    }
}

/// Exact sign of `p` at the algebraic point `a`, in {-1, 0, +1}.
///
/// Zero is decided by a gcd with the defining polynomial; otherwise the
/// isolating interval is refined until `p` provably keeps one sign on it.
pub fn sign_at(p: &RatPoly, a: &AlgebraicNumber) -> Result<i8> {
    if p.is_zero() {
        return Ok(0);
    }
    if let Some(r) = a.rational_value() {
        return Ok(sign_i8(&p.eval(r)));
    }
    let g = RatPoly::gcd(p, a.defining())?;
    if !g.is_constant() {
        // a is a root of p exactly when the shared factor has a root in the
        // isolating interval.
        let chain = SturmChain::new(&g)?;
        if chain.count(
            &Bound::Finite(a.lo.clone()),
            &Bound::Finite(a.hi.clone()),
        ) > 0
        {
            return Ok(0);
        }
    }
    // p(a) != 0: refine until the interval is free of roots of p and the
    // endpoint signs agree. Terminates because a is not a root of p.
    let psf = p.squarefree_part()?;
    let pchain = SturmChain::new(&psf)?;
    let mut cur = a.clone();
    loop {
        if let Some(r) = cur.rational_value() {
            return Ok(sign_i8(&p.eval(r)));
        }
        let slo = sign_i8(&p.eval(&cur.lo));
        let shi = sign_i8(&p.eval(&cur.hi));
        if slo != 0
            && slo == shi
            && pchain.count(
                &Bound::Finite(cur.lo.clone()),
                &Bound::Finite(cur.hi.clone()),
            ) == 0
        {
            return Ok(slo);
        }
        cur = cur.refine();
    }
}

/// Closed rational interval arithmetic, used to certify enclosures of
/// critical values. Widths only ever shrink by refining the input point, so
/// the naive product rule is good enough here.
#[derive(Clone, Debug)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RatInterval {
    pub fn point(x: BigRational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn add(&self, o: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn mul(&self, o: &RatInterval) -> RatInterval {
        let products = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if p < &lo {
                lo = p.clone();
            }
            if p > &hi {
                hi = p.clone();
            }
        }
        RatInterval { lo, hi }
    }

    /// Interval quotient; `None` when the divisor straddles zero.
    pub fn div(&self, o: &RatInterval) -> Option<RatInterval> {
        if o.contains_zero() {
            return None;
        }
        Some(self.mul(&RatInterval {
            lo: o.hi.recip(),
            hi: o.lo.recip(),
        }))
    }
}

/// Horner evaluation of `p` over a rational interval.
pub fn eval_interval(p: &RatPoly, x: &RatInterval) -> RatInterval {
    let mut acc = RatInterval::point(BigRational::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&RatInterval::point(c.clone()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::big;

    fn p(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_ints(coeffs)
    }

    #[test]
    fn sturm_counts_match_known_polynomials() {
        // x^2 + 1: no real roots.
        assert_eq!(count_real_roots(&p(&[1, 0, 1])).unwrap(), 0);
        // x^4 - 4x^3 - 16x^2 + 4: four real roots.
        assert_eq!(count_real_roots(&p(&[4, 0, -16, -4, 1])).unwrap(), 4);
        // x^4 + x^2 - 5: exactly two real roots.
        assert_eq!(count_real_roots(&p(&[-5, 0, 1, 0, 1])).unwrap(), 2);
    }

    #[test]
    fn sturm_rejects_repeated_factors() {
        let err = count_real_roots(&p(&[1, -2, 1])).unwrap_err();
        assert!(matches!(err, Error::ContractViolation(_)));
    }

    #[test]
    fn sturm_half_open_convention() {
        // x^2 - 1 on (-1, 1] counts the root at 1 but not the one at -1.
        let q = p(&[-1, 0, 1]);
        assert_eq!(
            sturm_count(&q, &Bound::Finite(big(-1)), &Bound::Finite(big(1))).unwrap(),
            1
        );
        assert_eq!(
            sturm_count(&q, &Bound::NegInf, &Bound::Finite(big(-1))).unwrap(),
            1
        );
    }

    #[test]
    fn isolate_sqrt5() {
        let roots = isolate_real_roots(&p(&[-5, 0, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].approx_f64() + 5f64.sqrt()).abs() < 1e-9);
        assert!((roots[1].approx_f64() - 5f64.sqrt()).abs() < 1e-9);
        assert!(roots[0].hi() < roots[1].lo() || roots[0].hi() == roots[1].lo());
    }

    #[test]
    fn isolate_rational_roots_exactly() {
        // -x^2 + 2x has roots 0 and 2.
        let roots = isolate_real_roots(&p(&[0, 2, -1])).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].equals_rational(&big(0)));
        assert!(roots[1].equals_rational(&big(2)));
        // x^2 + 1 has none.
        assert!(isolate_real_roots(&p(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn isolation_counts_agree_with_sturm() {
        for coeffs in [
            vec![4i64, 0, -16, -4, 1],
            vec![-5, 0, 1],
            vec![1, 0, 1],
            vec![0, 2, -1],
            vec![25, 20, -10, -4, 1],
            vec![30, 19, -15, -3, 1],
        ] {
            let q = p(&coeffs);
            let n = count_real_roots(&q.squarefree_part().unwrap()).unwrap();
            assert_eq!(isolate_real_roots(&q).unwrap().len(), n);
        }
    }

    #[test]
    fn sign_at_examples() {
        // Q2 = 5x^2 - 1 at the root 0 of -x^2 + 2x: sign -1.
        let roots = isolate_real_roots(&p(&[0, 2, -1])).unwrap();
        assert_eq!(sign_at(&p(&[-1, 0, 5]), &roots[0]).unwrap(), -1);
        // Example with a rational point: Q2(1) = -16 < 0.
        let alpha = AlgebraicNumber::from_rational(big(1));
        let q2 = p(&[-16, -14, 21, -8, 1]);
        assert_eq!(sign_at(&q2, &alpha).unwrap(), -1);
        assert_eq!(q2.eval(&big(1)), big(-16));
        // x^2 at +sqrt(5): positive.
        let sqrt5 = &isolate_real_roots(&p(&[-5, 0, 1])).unwrap()[1];
        assert_eq!(sign_at(&p(&[0, 0, 1]), sqrt5).unwrap(), 1);
        // x^2 - 5 at sqrt(5): exactly zero.
        assert_eq!(sign_at(&p(&[-5, 0, 1]), sqrt5).unwrap(), 0);
    }

    #[test]
    fn refinement_keeps_containment() {
        let root = &isolate_real_roots(&p(&[-2, 0, 1])).unwrap()[1];
        let tight = root.refined_to_width(&big_ratio(1, 1i64 << 40));
        let sqrt2 = 2f64.sqrt();
        assert!(rat_to_f64(tight.lo()) <= sqrt2 && sqrt2 <= rat_to_f64(tight.hi()));
    }

    #[test]
    fn interval_eval_contains_true_value() {
        let q = p(&[1, -3, 0, 2]);
        let iv = RatInterval::new(big_ratio(1, 2), big_ratio(3, 4));
        let out = eval_interval(&q, &iv);
        let mid = q.eval(&big_ratio(5, 8));
        assert!(out.lo <= mid && mid <= out.hi);
    }
}

//! Polynomial sequences from finite linear recurrences, and the validated
//! order-two pair used by the reality criterion.

use num::BigRational;

use crate::error::{Error, Result};
use crate::poly::RatPoly;

/// A recurrence `P_i + Q_1 P_{i-1} + ... + Q_k P_{i-k} = 0` of order `k >= 1`
/// with the standard initial conditions `P_0 = 1`, `P_{-1} = ... = 0`.
///
/// Generation works for any order; the reality criterion itself is only
/// defined for `k = 2` and goes through [`RecurrencePair`].
#[derive(Clone, Debug)]
pub struct RecurrenceSpec {
    qs: Vec<RatPoly>,
}

impl RecurrenceSpec {
    pub fn new(qs: Vec<RatPoly>) -> Result<Self> {
        if qs.is_empty() {
            return Err(Error::Validation("recurrence needs at least one coefficient polynomial".into()));
        }
        if qs.last().unwrap().is_zero() {
            return Err(Error::Validation(
                "the highest coefficient polynomial is identically zero; the true order is smaller".into(),
            ));
        }
        Ok(RecurrenceSpec { qs })
    }

    pub fn order(&self) -> usize {
        self.qs.len()
    }

    pub fn qs(&self) -> &[RatPoly] {
        &self.qs
    }

    /// Materialize `P_0 ... P_n` exactly.
    pub fn generate(&self, n: usize) -> Vec<RatPoly> {
        let mut seq: Vec<RatPoly> = Vec::with_capacity(n + 1);
        seq.push(RatPoly::one());
        for i in 1..=n {
            let mut acc = RatPoly::zero();
            for (j, q) in self.qs.iter().enumerate() {
                // term Q_{j+1} * P_{i-j-1}, with P_m = 0 for m < 0
                if let Some(idx) = i.checked_sub(j + 1) {
                    acc = &acc + &(q * &seq[idx]);
                }
            }
            seq.push(-&acc);
        }
        seq
    }

    /// Coefficients of `t^0 ... t^n` in the formal power-series inverse of
    /// `1 + Q_1 t + ... + Q_k t^k`.
    ///
    /// This must agree with [`Self::generate`] term by term; the equality is
    /// the generating-function identity for the sequence.
    pub fn generating_series(&self, n: usize) -> Vec<RatPoly> {
        let k = self.qs.len();
        let mut series: Vec<RatPoly> = Vec::with_capacity(n + 1);
        series.push(RatPoly::one());
        for i in 1..=n {
            // b_i = -(a_1 b_{i-1} + ... + a_i b_0), a_j = Q_j for j <= k else 0
            let mut acc = RatPoly::zero();
            for j in 1..=i.min(k) {
                acc = &acc + &(&self.qs[j - 1] * &series[i - j]);
            }
            series.push(-&acc);
        }
        series
    }
}

/// A validated pair `(Q1, Q2)` for the reality criterion: coprime, `Q2` not
/// identically zero, `deg Q1 >= 1`. The discriminant `D = Q1^2 - 4 Q2` of the
/// characteristic polynomial is computed once and cached.
#[derive(Clone, Debug)]
pub struct RecurrencePair {
    q1: RatPoly,
    q2: RatPoly,
    d: RatPoly,
}

impl RecurrencePair {
    pub fn new(q1: RatPoly, q2: RatPoly) -> Result<Self> {
        if q2.is_zero() {
            return Err(Error::Validation("Q2 must not be identically zero".into()));
        }
        if q1.degree().unwrap_or(0) < 1 {
            return Err(Error::Validation(
                "Q1 must have degree at least 1 (a constant Q1 admits no criterion verdict)".into(),
            ));
        }
        let g = RatPoly::gcd(&q1, &q2)?;
        if !g.is_constant() {
            return Err(Error::Validation(format!(
                "Q1 and Q2 must be coprime; common factor {}. A common real zero would be a zero of every P_i.",
                g
            )));
        }
        let d = Self::discriminant_of(&q1, &q2);
        // Q1^2 = 4 Q2 would force both constant, which the degree check above
        // already rejects.
        debug_assert!(!d.is_zero());
        Ok(RecurrencePair { q1, q2, d })
    }

    /// `Q1^2 - 4 Q2`, exactly as written: no content stripping, no
    /// normalization. Callers wanting a monic squarefree version apply
    /// `squarefree_part` themselves.
    pub fn discriminant_of(q1: &RatPoly, q2: &RatPoly) -> RatPoly {
        let four = BigRational::from_integer(4.into());
        &q1.square() - &q2.scale(&four)
    }

    pub fn q1(&self) -> &RatPoly {
        &self.q1
    }

    pub fn q2(&self) -> &RatPoly {
        &self.q2
    }

    /// Cached `D = Q1^2 - 4 Q2`.
    pub fn discriminant(&self) -> &RatPoly {
        &self.d
    }

    /// Wronskian `W(Q1^2, Q2)`: its roots are the finite critical points of
    /// `f = Q1^2 / Q2`.
    pub fn wronskian(&self) -> RatPoly {
        RatPoly::wronskian(&self.q1.square(), &self.q2)
    }

    /// `f(x) = Q1(x)^2 / Q2(x)` in floating point, for display and plots.
    pub fn f_value(&self, x: f64) -> f64 {
        let num = self.q1.eval_f64(x);
        num * num / self.q2.eval_f64(x)
    }

    /// The order-2 recurrence spec for this pair.
    pub fn spec(&self) -> RecurrenceSpec {
        RecurrenceSpec {
            qs: vec![self.q1.clone(), self.q2.clone()],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_ints(coeffs)
    }

    #[test]
    fn first_terms_match_hand_expansion() {
        // Q1 = x^2 - 2x - 5, Q2 = x^2
        let spec = RecurrenceSpec::new(vec![p(&[-5, -2, 1]), p(&[0, 0, 1])]).unwrap();
        let seq = spec.generate(2);
        assert_eq!(seq[0], RatPoly::one());
        // P_1 = -Q1
        assert_eq!(seq[1], p(&[5, 2, -1]));
        // P_2 = Q1^2 - Q2 = x^4 - 4x^3 - 7x^2 + 20x + 25
        assert_eq!(seq[2], p(&[25, 20, -7, -4, 1]));
    }

    #[test]
    fn n_zero_is_the_initial_condition() {
        let spec = RecurrenceSpec::new(vec![p(&[0, 1]), p(&[1])]).unwrap();
        assert_eq!(spec.generate(0), vec![RatPoly::one()]);
    }

    #[test]
    fn series_inversion_equals_generation() {
        let specs = [
            RecurrenceSpec::new(vec![p(&[-5, -2, 1]), p(&[0, 0, 1])]).unwrap(),
            RecurrenceSpec::new(vec![p(&[0, 2, -1]), p(&[-1, 0, 5])]).unwrap(),
            // a k = 3 recurrence, generation only
            RecurrenceSpec::new(vec![p(&[1, 1]), p(&[0, 1]), p(&[2])]).unwrap(),
        ];
        for spec in &specs {
            assert_eq!(spec.generate(8), spec.generating_series(8));
        }
    }

    #[test]
    fn shared_root_propagates_to_every_term() {
        // Deliberately non-coprime: Q1 and Q2 share the root 1, so P_i(1) = 0
        // for every i >= 1 (which is why validation rejects such pairs).
        let spec = RecurrenceSpec::new(vec![p(&[-1, 1]), p(&[-2, 1, 1])]).unwrap();
        use num::{One, Zero};
        let one = num::BigRational::one();
        for (i, pi) in spec.generate(8).iter().enumerate().skip(1) {
            assert!(pi.eval(&one).is_zero(), "P_{} should vanish at the shared root", i);
        }
    }

    #[test]
    fn validation_rules() {
        assert!(matches!(
            RecurrencePair::new(p(&[-1, 1]), RatPoly::zero()),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            RecurrencePair::new(p(&[7]), p(&[1, 1])),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            RecurrencePair::new(p(&[-1, 1]), p(&[-1, 1])),
            Err(Error::Validation(_))
        ));
        assert!(RecurrencePair::new(p(&[-5, -2, 1]), p(&[0, 0, 1])).is_ok());
    }

    #[test]
    fn discriminant_examples() {
        // Q1 = -x^2 + 2x, Q2 = 5x^2 - 1: D = x^4 - 4x^3 - 16x^2 + 4
        let pair = RecurrencePair::new(p(&[0, 2, -1]), p(&[-1, 0, 5])).unwrap();
        assert_eq!(pair.discriminant(), &p(&[4, 0, -16, -4, 1]));
        // Q1 = 2x^2 - 8x + 6, Q2 = x^4 - 8x^3 + 21x^2 - 14x - 16: D = 4x^2 - 40x + 100
        let pair = RecurrencePair::new(p(&[6, -8, 2]), p(&[-16, -14, 21, -8, 1])).unwrap();
        assert_eq!(pair.discriminant(), &p(&[100, -40, 4]));
        // Q1 = x^2 - 2x - 5, Q2 = x^2: D = (x^2 - 4x - 5)(x^2 - 5)
        let pair = RecurrencePair::new(p(&[-5, -2, 1]), p(&[0, 0, 1])).unwrap();
        assert_eq!(pair.discriminant(), &(&p(&[-5, -4, 1]) * &p(&[-5, 0, 1])));
    }

    #[test]
    fn degree_law_without_cancellation() {
        let pair = RecurrencePair::new(p(&[0, 2, -1]), p(&[-1, 0, 5])).unwrap();
        let seq = pair.spec().generate(6);
        for (n, pn) in seq.iter().enumerate() {
            assert_eq!(pn.degree(), Some(2 * n));
        }
    }
}

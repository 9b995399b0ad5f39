//! Zeros of `P_n` through the level decomposition of the recurrence.
//!
//! Writing the characteristic roots of `t^2 + Q1 t + Q2` (equivalently of
//! `1 + Q1 t + Q2 t^2` after inversion) as `alpha`, `beta`, the closed form
//! `P_n = (alpha^{n+1} - beta^{n+1}) / (alpha - beta)` factors over the
//! (n+1)-th roots of unity:
//!
//! ```text
//! P_n = prod_{paired k} (Q1^2 - c_k Q2) * (-Q1)^{n odd},
//! c_k = 4 cos^2(pi k / (n+1)).
//! ```
//!
//! So the zeros of `P_n` are the preimages `f^{-1}(c_k)` for
//! `f = Q1^2 / Q2`, computed one quadratic-in-`Q1` level at a time instead of
//! expanding coefficients of degree `n * deg Q1`. The decomposition is
//! validated against brute-force expansion in the test suite before anything
//! relies on it.

use num::complex::Complex64;
use num::BigRational;
use rayon::prelude::*;

use crate::error::Result;
use crate::numeric::{all_complex_roots, ComplexRootSet, RootFindConfig};
use crate::rat::{big, rat_from_f64, rat_to_f64};
use crate::recurrence::RecurrencePair;

/// One level value `c_k`. Values at rational multiples of pi with rational
/// cosine squared (angle denominators 2, 3, 4, 6) are kept exact so that
/// degree drops of `Q1^2 - c Q2` are detected exactly; all other levels are
/// honest doubles, which is enough for root finding.
#[derive(Clone, Debug, PartialEq)]
pub enum LevelValue {
    Exact(BigRational),
    Approx(f64),
}

impl LevelValue {
    pub fn approx(&self) -> f64 {
        match self {
            LevelValue::Exact(r) => rat_to_f64(r),
            LevelValue::Approx(v) => *v,
        }
    }

    pub fn to_rational(&self) -> BigRational {
        match self {
            LevelValue::Exact(r) => r.clone(),
            LevelValue::Approx(v) => rat_from_f64(*v),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Level {
    pub k: usize,
    pub value: LevelValue,
    /// True exactly when `n+1` is even and `k = (n+1)/2` (then `c = 0`): the
    /// root of unity is its own conjugate and the level contributes the
    /// zeros of `Q1` once, not the doubled zeros of `Q1^2`.
    pub self_paired: bool,
}

/// The distinct level values for `P_n`, k and n+1-k merged.
#[derive(Clone, Debug)]
pub struct LevelSet {
    pub n: usize,
    pub levels: Vec<Level>,
}

/// Level values `c_k = 4 cos^2(pi k/(n+1))` for `k = 1 ..= floor((n+1)/2)`.
pub fn levels(n: usize) -> LevelSet {
    assert!(n >= 1, "levels need n >= 1");
    let m = n + 1;
    let mut out = Vec::with_capacity(m / 2);
    for k in 1..=m / 2 {
        // Order of the root of unity pair: m / gcd(k, m) tells us when the
        // cosine is rational (orders 2, 3, 4, 6).
        let order = m / gcd(k, m);
        let value = match order {
            2 => LevelValue::Exact(big(0)),
            3 => LevelValue::Exact(big(1)),
            4 => LevelValue::Exact(big(2)),
            6 => LevelValue::Exact(big(3)),
            _ => {
                let c = (std::f64::consts::PI * k as f64 / m as f64).cos();
                LevelValue::Approx(4.0 * c * c)
            }
        };
        out.push(Level {
            k,
            value,
            self_paired: order == 2,
        });
    }
    LevelSet { n, levels: out }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The root set contributed by a single level.
#[derive(Clone, Debug)]
pub struct LevelSolve {
    pub level: Level,
    pub roots: ComplexRootSet,
    /// Leading-coefficient cancellations in `Q1^2 - c Q2`: roots that went to
    /// infinity at this level rather than being silently lost.
    pub degree_drop: usize,
}

/// Zeros of `P_n` computed level by level.
#[derive(Clone, Debug)]
pub struct LevelZeros {
    pub n: usize,
    /// Merged multiset, sorted by (re, im).
    pub roots: Vec<Complex64>,
    pub per_level: Vec<LevelSolve>,
    /// Total roots at infinity across levels (degree of `P_n` dropped by
    /// exactly this much through leading-coefficient cancellation).
    pub roots_at_infinity: usize,
    pub converged: bool,
}

impl LevelZeros {
    pub fn max_imag_deviation(&self) -> f64 {
        self.roots.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

/// Compute the zeros of `P_n` as the union over levels of the roots of
/// `Q1^2 - c_k Q2` (paired levels) and of `Q1` (the self-paired level).
///
/// Levels are independent and solved in parallel; the merged multiset is
/// sorted, so output order is deterministic.
pub fn zeros_via_levels(
    pair: &RecurrencePair,
    n: usize,
    config: &RootFindConfig,
) -> Result<LevelZeros> {
    let set = levels(n);
    let q1sq = pair.q1().square();
    let expected_paired_deg = q1sq
        .degree()
        .unwrap_or(0)
        .max(pair.q2().degree().unwrap_or(0));
    let solves: Vec<Result<LevelSolve>> = set
        .levels
        .into_par_iter()
        .map(|level| {
            if level.self_paired {
                let roots = all_complex_roots(pair.q1(), config)?;
                Ok(LevelSolve {
                    level,
                    roots,
                    degree_drop: 0,
                })
            } else {
                let c = level.value.to_rational();
                let g = &q1sq - &pair.q2().scale(&c);
                let degree_drop = expected_paired_deg - g.degree().unwrap_or(0);
                let roots = all_complex_roots(&g, config)?;
                Ok(LevelSolve {
                    level,
                    roots,
                    degree_drop,
                })
            }
        })
        .collect();

    let mut per_level = Vec::with_capacity(solves.len());
    for s in solves {
        per_level.push(s?);
    }
    let mut roots: Vec<Complex64> = per_level
        .iter()
        .flat_map(|s| s.roots.roots.iter().copied())
        .collect();
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let roots_at_infinity = per_level.iter().map(|s| s.degree_drop).sum();
    let converged = per_level.iter().all(|s| s.roots.converged);
    Ok(LevelZeros {
        n,
        roots,
        per_level,
        roots_at_infinity,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RatPoly;
    use crate::rat::big_ratio;

    fn p(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_ints(coeffs)
    }

    #[test]
    fn small_level_sets() {
        // n = 1: single self-paired level c = 0.
        let l1 = levels(1);
        assert_eq!(l1.levels.len(), 1);
        assert_eq!(l1.levels[0].value, LevelValue::Exact(big(0)));
        assert!(l1.levels[0].self_paired);
        // n = 2: single paired level c = 1.
        let l2 = levels(2);
        assert_eq!(l2.levels.len(), 1);
        assert_eq!(l2.levels[0].value, LevelValue::Exact(big(1)));
        assert!(!l2.levels[0].self_paired);
        // n = 3: paired level c = 2 and self-paired level c = 0.
        let l3 = levels(3);
        assert_eq!(l3.levels.len(), 2);
        assert_eq!(l3.levels[0].value, LevelValue::Exact(big(2)));
        assert!(!l3.levels[0].self_paired);
        assert_eq!(l3.levels[1].value, LevelValue::Exact(big(0)));
        assert!(l3.levels[1].self_paired);
    }

    #[test]
    fn level_values_stay_inside_window() {
        for n in 1..=40 {
            for level in levels(n).levels {
                let v = level.value.approx();
                assert!((0.0..4.0).contains(&v), "level {} out of [0,4)", v);
            }
        }
    }

    #[test]
    fn n1_gives_roots_of_q1() {
        let pair = RecurrencePair::new(p(&[-5, -2, 1]), p(&[0, 0, 1])).unwrap();
        let z = zeros_via_levels(&pair, 1, &RootFindConfig::default()).unwrap();
        // P_1 = -Q1, roots 1 +- sqrt(6)
        assert_eq!(z.roots.len(), 2);
        assert!((z.roots[0].re - (1.0 - 6f64.sqrt())).abs() < 1e-9);
        assert!((z.roots[1].re - (1.0 + 6f64.sqrt())).abs() < 1e-9);
    }

    #[test]
    fn n2_matches_direct_factorization() {
        let pair = RecurrencePair::new(p(&[-5, -2, 1]), p(&[0, 0, 1])).unwrap();
        let z = zeros_via_levels(&pair, 2, &RootFindConfig::default()).unwrap();
        let mut expected = vec![
            (3.0 + 29f64.sqrt()) / 2.0,
            (3.0 - 29f64.sqrt()) / 2.0,
            (1.0 + 21f64.sqrt()) / 2.0,
            (1.0 - 21f64.sqrt()) / 2.0,
        ];
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(z.roots.len(), 4);
        for (z, e) in z.roots.iter().zip(expected) {
            assert!((z.re - e).abs() < 1e-9 && z.im == 0.0);
        }
    }

    #[test]
    fn complex_level_roots_show_up() {
        // Q1 = x^2 + 1, Q2 = x^2 + 6 at level c = 1 (n = 2):
        // x^4 + x^2 - 5 has two real and two imaginary roots.
        let pair = RecurrencePair::new(p(&[1, 0, 1]), p(&[6, 0, 1])).unwrap();
        let z = zeros_via_levels(&pair, 2, &RootFindConfig::default()).unwrap();
        let u = (21f64.sqrt() - 1.0) / 2.0;
        let real = u.sqrt();
        let imag = ((21f64.sqrt() + 1.0) / 2.0).sqrt();
        let mut got: Vec<(f64, f64)> = z.roots.iter().map(|z| (z.re, z.im)).collect();
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut want = vec![(-real, 0.0), (real, 0.0), (0.0, -imag), (0.0, imag)];
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for ((gr, gi), (wr, wi)) in got.into_iter().zip(want) {
            assert!((gr - wr).abs() < 1e-9 && (gi - wi).abs() < 1e-9);
        }
    }

    #[test]
    fn exact_level_detects_degree_drop() {
        // Q1 = x, Q2 = x^2 + 2x + 1 (coprime): at the exact level c = 1 the
        // leading terms cancel, P_2 = -2x - 1 has degree 1, and the missing
        // root is reported at infinity.
        let pair = RecurrencePair::new(p(&[0, 1]), p(&[1, 2, 1])).unwrap();
        let z = zeros_via_levels(&pair, 2, &RootFindConfig::default()).unwrap();
        assert_eq!(z.roots_at_infinity, 1);
        assert_eq!(z.roots.len(), 1);
        assert!((z.roots[0].re + 0.5).abs() < 1e-12);
        // Matches the expanded sequence exactly.
        let p2 = &pair.spec().generate(2)[2];
        assert_eq!(p2, &p(&[-1, -2]));
    }

    #[test]
    fn level_multiset_equals_expanded_roots_small() {
        let pairs = [
            RecurrencePair::new(p(&[-5, -2, 1]), p(&[0, 0, 1])).unwrap(),
            RecurrencePair::new(p(&[0, 2, -1]), p(&[-1, 0, 5])).unwrap(),
            RecurrencePair::new(p(&[1, 3]), p(&[2, -1, 0, 1])).unwrap(),
        ];
        let config = RootFindConfig::default();
        for pair in &pairs {
            let seq = pair.spec().generate(6);
            for n in 1..=6 {
                let lv = zeros_via_levels(pair, n, &config).unwrap();
                let ex = all_complex_roots(&seq[n], &config).unwrap();
                assert_eq!(lv.roots.len(), ex.roots.len(), "n={}", n);
                for (a, b) in lv.roots.iter().zip(ex.roots.iter()) {
                    assert!((a - b).norm() < 1e-7, "n={} {} vs {}", n, a, b);
                }
                // P_n never vanishes at a zero of Q2 for coprime pairs; a
                // counterexample here would be a real finding, not noise.
                let g = RatPoly::gcd(&seq[n], pair.q2()).unwrap();
                assert!(g.is_constant(), "P_{} shares a factor with Q2: {}", n, g);
            }
        }
    }

    #[test]
    fn level_route_resolves_roots_crowding_a_pole() {
        // Near a real zero of Q2 the preimages of every level crowd the pole
        // of f, so P_n has clusters of distinct real roots separated by
        // ~1e-6; the expanded route must still match the level route there
        // (exact polish plus the false-conjugate-pair split carry this).
        let cases = [
            (p(&[0, 1, -5, 6]), p(&[2, 0, -6, -5]), 7usize),
            (p(&[3, -6, 1]), p(&[2, -2, -3]), 9),
        ];
        let config = RootFindConfig::default();
        for (q1, q2, n) in cases {
            let pair = RecurrencePair::new(q1, q2).unwrap();
            let pn = pair.spec().generate(n).pop().unwrap();
            let lv = zeros_via_levels(&pair, n, &config).unwrap();
            let ex = all_complex_roots(&pn, &config).unwrap();
            assert_eq!(lv.roots.len(), ex.roots.len());
            for (a, b) in lv.roots.iter().zip(ex.roots.iter()) {
                assert!((a - b).norm() < 1e-8, "{} vs {}", a, b);
            }
        }
    }

    #[test]
    fn self_paired_level_uses_q1_multiplicity_once() {
        // n = 3 has the self-paired level; P_3 picks up the roots of Q1
        // once (simple), not doubled.
        let pair = RecurrencePair::new(p(&[0, 1]), p(&[-1, 0, 0, 1])).unwrap();
        let z = zeros_via_levels(&pair, 3, &RootFindConfig::default()).unwrap();
        let zero_count = z.roots.iter().filter(|r| r.norm() < 1e-10).count();
        assert_eq!(zero_count, 1);
    }

    #[test]
    fn zero_gaps_shrink_with_n() {
        // For a real-rooted pair the zeros fill the support ever more
        // densely: the largest nearest-neighbour gap inside each support
        // interval shrinks from n = 50 to n = 200.
        let pair = RecurrencePair::new(p(&[-5, -2, 1]), p(&[0, 0, 1])).unwrap();
        let config = RootFindConfig::default();
        let max_gap = |n: usize| {
            let zeros = zeros_via_levels(&pair, n, &config).unwrap();
            let mut xs: Vec<f64> = zeros.roots.iter().map(|z| z.re).collect();
            xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
            // Split at the gap between the two support intervals (around 0).
            let mut worst: f64 = 0.0;
            for w in xs.windows(2) {
                if w[0] < 0.0 && w[1] > 0.0 {
                    continue;
                }
                worst = worst.max(w[1] - w[0]);
            }
            worst
        };
        let g50 = max_gap(50);
        let g200 = max_gap(200);
        assert!(g200 < g50, "gap {} at n=200 not below {} at n=50", g200, g50);
    }

    #[test]
    fn float_levels_are_never_exactly_rational() {
        let set = levels(10);
        for level in set.levels {
            if let LevelValue::Approx(v) = level.value {
                let r = rat_from_f64(v);
                // The nearest dyadic differs from any small rational c0 by
                // construction; just check the value is sane.
                assert!(r > big(0) && r < big(4));
            }
        }
        let _ = big_ratio(1, 2);
    }
}

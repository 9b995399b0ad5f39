//! The five-condition reality criterion for a validated pair `(Q1, Q2)`.
//!
//! Every polynomial in the sequence has only real zeros exactly when:
//!
//! (a) `Q1` has all real, simple zeros;
//! (b) the curve `Im f = 0` (for `f = Q1^2/Q2`) has no oval disjoint from the
//!     real line;
//! (c) the discriminant `D = Q1^2 - 4 Q2` has only real zeros;
//! (d) no real critical value of `f` lies in the open interval `(0, 4)`;
//! (e) `Q2 > 0` at every zero of `Q1` (coprimality rules out equality, so
//!     "non-negative" sharpens to strictly positive).
//!
//! Checks (a), (c), (d), (e) are decided by exact Sturm counts and exact sign
//! evaluation at isolated algebraic points. A certified level sweep asks, for
//! sample values `s` spanning `(0, 4)`, whether `Q1^2 - s Q2` keeps its full
//! count of real roots; the real-root count of that family can only change at
//! real critical values of `f` attained at real critical points (a real
//! double root forces `W(Q1^2, Q2) = 0` there), so cutting `(0, 4)` at
//! certified enclosures of those values and sampling once per remaining gap
//! certifies the whole interval. Every failure carries a witness that
//! re-checks independently.

use num::complex::Complex64;
use num::BigRational;

use crate::algebraic::{
    count_real_roots, eval_interval, isolate_real_roots, sign_at, AlgebraicNumber, RatInterval,
};
use crate::curve::{classify, trace_gamma_tilde, Classification, Window};
use crate::error::{Error, Result};
use crate::numeric::{all_complex_roots, RootFindConfig};
use crate::poly::RatPoly;
use crate::rat::{big, dyadic_round, rat_from_f64, rat_to_f64, simplest_rational_between};
use crate::recurrence::RecurrencePair;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionId {
    A,
    B,
    C,
    D,
    E,
}

impl ConditionId {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConditionId::A => "A",
            ConditionId::B => "B",
            ConditionId::C => "C",
            ConditionId::D => "D",
            ConditionId::E => "E",
        }
    }

    pub fn summary(&self) -> &'static str {
        match self {
            ConditionId::A => "Q1 has all real, simple zeros",
            ConditionId::B => "no oval of the curve Im(f)=0 is disjoint from the real line",
            ConditionId::C => "the discriminant Q1^2-4Q2 has only real zeros",
            ConditionId::D => "no real critical value of f lies in (0,4)",
            ConditionId::E => "Q2 is positive at every zero of Q1",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionStatus {
    Pass,
    Fail,
    /// The condition holds as far as numeric evidence goes, but the certified
    /// route could not settle it (degraded rather than guessed).
    NumericOnlyPass,
}

impl ConditionStatus {
    pub fn passed(&self) -> bool {
        !matches!(self, ConditionStatus::Fail)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ConditionStatus::Pass => "pass",
            ConditionStatus::Fail => "fail",
            ConditionStatus::NumericOnlyPass => "numeric-only-pass",
        }
    }
}

/// A failure witness that re-checks independently of the code path that
/// produced it.
#[derive(Clone, Debug)]
pub enum Witness {
    /// Condition (a): a repeated factor of `Q1`.
    RepeatedFactor { factor: RatPoly },
    /// Conditions (a)/(c): a Sturm deficit certificate for `poly`.
    NonrealRoots {
        poly: RatPoly,
        real_count: usize,
        expected: usize,
    },
    /// Condition (d): a real critical point whose critical value lies in
    /// `(0,4)`; the signs `Q2 > 0`, `Q1 != 0`, `D < 0` at the point are the
    /// exact certificate.
    CriticalValueInWindow {
        point: AlgebraicNumber,
        point_approx: f64,
        value_approx: f64,
    },
    /// Condition (e): a zero of `Q1` where `Q2 < 0`; `q2_exact` is filled
    /// when the zero is rational.
    NegativeQ2AtRoot {
        root: AlgebraicNumber,
        root_approx: f64,
        q2_exact: Option<BigRational>,
        q2_approx: f64,
    },
    /// Condition (b), certified sweep: at the exact rational sample `s`, the
    /// polynomial `Q1^2 - s Q2` has fewer real roots than its degree.
    SweepDeficit {
        s: BigRational,
        real_count: usize,
        expected: usize,
    },
    /// Condition (b), numeric trace: a component clear of the real axis.
    DisjointOval {
        min_abs_im: f64,
        sample_point: (f64, f64),
    },
}

#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub id: ConditionId,
    pub status: ConditionStatus,
    pub witness: Option<Witness>,
    pub detail: ConditionDetail,
    pub note: String,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.status.passed()
    }
}

/// Structured per-condition data beyond the bare verdict.
#[derive(Clone, Debug)]
pub enum ConditionDetail {
    RootCount { real: usize, expected: usize },
    CriticalPoints(Vec<CriticalPointInfo>),
    Sweep(SweepOutcome),
    Q2Signs(Vec<Q2SignInfo>),
    None,
}

/// One real critical point of `f = Q1^2/Q2` with its exact sign data.
#[derive(Clone, Debug)]
pub struct CriticalPointInfo {
    pub point: AlgebraicNumber,
    pub point_approx: f64,
    /// `f` at the point; infinite at poles of `f`.
    pub value_approx: f64,
    pub q1_sign: i8,
    pub q2_sign: i8,
    pub d_sign: i8,
    /// Exactly `f(x_c) in (0,4)`: `Q2 > 0`, `Q1 != 0`, `D < 0`.
    pub value_in_window: bool,
}

/// Sign of `Q2` at one real zero of `Q1`.
#[derive(Clone, Debug)]
pub struct Q2SignInfo {
    pub root: AlgebraicNumber,
    pub root_approx: f64,
    pub q2_sign: i8,
    pub q2_exact: Option<BigRational>,
    pub q2_approx: f64,
}

/// One sample of the certified sweep.
#[derive(Clone, Debug)]
pub struct SweepSample {
    pub s: BigRational,
    pub real_count: usize,
    pub expected: usize,
}

impl SweepSample {
    pub fn full(&self) -> bool {
        self.real_count == self.expected
    }
}

/// Result of the certified hyperbolicity sweep over `(0, 4)`.
#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub cut_points: Vec<BigRational>,
    pub samples: Vec<SweepSample>,
    /// False when critical-value enclosures had to be merged or the numeric
    /// seeding of extra cut points did not converge; a clean sweep then only
    /// supports a numeric-only pass.
    pub certified: bool,
    pub notes: Vec<String>,
}

impl SweepOutcome {
    pub fn all_full(&self) -> bool {
        self.samples.iter().all(SweepSample::full)
    }

    pub fn first_deficit(&self) -> Option<&SweepSample> {
        self.samples.iter().find(|s| !s.full())
    }
}

/// Condition (a): `Q1` squarefree with as many real roots as its degree.
pub fn check_a(pair: &RecurrencePair) -> Result<ConditionReport> {
    let q1 = pair.q1();
    if !q1.is_squarefree()? {
        let factor = RatPoly::gcd(q1, &q1.derivative())?;
        return Ok(ConditionReport {
            id: ConditionId::A,
            status: ConditionStatus::Fail,
            note: format!("Q1 has the repeated factor {}", factor),
            witness: Some(Witness::RepeatedFactor { factor }),
            detail: ConditionDetail::None,
        });
    }
    let expected = q1.degree_nonzero();
    let real = count_real_roots(&q1.monic())?;
    let status = if real == expected {
        ConditionStatus::Pass
    } else {
        ConditionStatus::Fail
    };
    Ok(ConditionReport {
        id: ConditionId::A,
        status,
        witness: (real != expected).then(|| Witness::NonrealRoots {
            poly: q1.clone(),
            real_count: real,
            expected,
        }),
        detail: ConditionDetail::RootCount { real, expected },
        note: format!("{} of {} zeros of Q1 are real (simple: yes)", real, expected),
    })
}

/// Condition (c): every zero of `D = Q1^2 - 4Q2` is real.
pub fn check_c(pair: &RecurrencePair) -> Result<ConditionReport> {
    let sf = pair.discriminant().squarefree_part()?;
    let expected = sf.degree().unwrap_or(0);
    let real = if expected == 0 { 0 } else { count_real_roots(&sf)? };
    let status = if real == expected {
        ConditionStatus::Pass
    } else {
        ConditionStatus::Fail
    };
    Ok(ConditionReport {
        id: ConditionId::C,
        status,
        witness: (real != expected).then(|| Witness::NonrealRoots {
            poly: sf.clone(),
            real_count: real,
            expected,
        }),
        detail: ConditionDetail::RootCount { real, expected },
        note: format!(
            "{} of {} distinct zeros of the discriminant are real",
            real, expected
        ),
    })
}

/// Exact sign analysis at every real critical point of `f` (the real roots
/// of `W(Q1^2, Q2)`).
pub fn critical_point_analysis(pair: &RecurrencePair) -> Result<Vec<CriticalPointInfo>> {
    let w = pair.wronskian();
    debug_assert!(!w.is_zero(), "W(Q1^2, Q2) vanishes only for constant f");
    let mut out = Vec::new();
    for point in isolate_real_roots(&w)? {
        let q1_sign = sign_at(pair.q1(), &point)?;
        let q2_sign = sign_at(pair.q2(), &point)?;
        let d_sign = sign_at(pair.discriminant(), &point)?;
        // f(x_c) in (0,4) needs f > 0 (so Q2 > 0 and Q1 != 0, since Q1^2 >= 0)
        // and f < 4, which over Q2 > 0 is exactly D < 0.
        let value_in_window = q2_sign > 0 && q1_sign != 0 && d_sign < 0;
        let point_approx = point.approx_f64();
        let value_approx = if q2_sign == 0 {
            f64::INFINITY
        } else {
            pair.f_value(point_approx)
        };
        out.push(CriticalPointInfo {
            point,
            point_approx,
            value_approx,
            q1_sign,
            q2_sign,
            d_sign,
            value_in_window,
        });
    }
    Ok(out)
}

/// Condition (d): no real critical value of `f` in `(0, 4)`.
pub fn check_d(pair: &RecurrencePair) -> Result<ConditionReport> {
    let cps = critical_point_analysis(pair)?;
    let offender = cps.iter().find(|cp| cp.value_in_window);
    let (status, witness, note) = match offender {
        Some(cp) => (
            ConditionStatus::Fail,
            Some(Witness::CriticalValueInWindow {
                point: cp.point.clone(),
                point_approx: cp.point_approx,
                value_approx: cp.value_approx,
            }),
            format!(
                "critical point near {:.5} has critical value near {:.5} inside (0,4)",
                cp.point_approx, cp.value_approx
            ),
        ),
        None => (
            ConditionStatus::Pass,
            None,
            format!(
                "{} real critical points, none with value in (0,4)",
                cps.len()
            ),
        ),
    };
    Ok(ConditionReport {
        id: ConditionId::D,
        status,
        witness,
        detail: ConditionDetail::CriticalPoints(cps),
        note,
    })
}

/// Condition (e): `Q2` strictly positive at each real zero of `Q1`.
pub fn check_e(pair: &RecurrencePair) -> Result<ConditionReport> {
    let mut infos = Vec::new();
    for root in isolate_real_roots(pair.q1())? {
        let q2_sign = sign_at(pair.q2(), &root)?;
        debug_assert!(q2_sign != 0, "coprimality excludes a shared zero");
        let root_approx = root.approx_f64();
        let q2_exact = root.rational_value().map(|r| pair.q2().eval(r));
        let q2_approx = match &q2_exact {
            Some(v) => rat_to_f64(v),
            None => pair.q2().eval_f64(root_approx),
        };
        infos.push(Q2SignInfo {
            root,
            root_approx,
            q2_sign,
            q2_exact,
            q2_approx,
        });
    }
    let offender = infos.iter().find(|i| i.q2_sign < 0);
    let (status, witness, note) = match offender {
        Some(i) => (
            ConditionStatus::Fail,
            Some(Witness::NegativeQ2AtRoot {
                root: i.root.clone(),
                root_approx: i.root_approx,
                q2_exact: i.q2_exact.clone(),
                q2_approx: i.q2_approx,
            }),
            match &i.q2_exact {
                Some(v) => format!("Q2({}) = {} < 0", i.root_approx, v),
                None => format!("Q2 is negative at the zero of Q1 near {:.5}", i.root_approx),
            },
        ),
        None => (
            ConditionStatus::Pass,
            None,
            format!("Q2 > 0 at all {} real zeros of Q1", infos.len()),
        ),
    };
    Ok(ConditionReport {
        id: ConditionId::E,
        status,
        witness,
        detail: ConditionDetail::Q2Signs(infos),
        note,
    })
}

/// Certified rational enclosure of the critical value `f(x_c)` for an
/// in-window critical point, strictly inside `(0, 4)`.
fn critical_value_enclosure(pair: &RecurrencePair, cp: &CriticalPointInfo) -> (BigRational, BigRational) {
    let four = big(4);
    let zero = big(0);
    let target_width = BigRational::new(1.into(), num::BigInt::from(1u64 << 40));
    let mut point = cp.point.clone();
    for _ in 0..300 {
        let iv = RatInterval::new(point.lo().clone(), point.hi().clone());
        let q1v = eval_interval(pair.q1(), &iv);
        let q2v = eval_interval(pair.q2(), &iv);
        if !q2v.contains_zero() {
            let num = q1v.mul(&q1v);
            if let Some(f_enc) = num.div(&q2v) {
                if f_enc.lo > zero && f_enc.hi < four && f_enc.width() < target_width {
                    // Round outward onto a small dyadic grid, staying inside (0,4).
                    let lo = dyadic_round(&f_enc.lo, 48, true).max(zero.clone());
                    let hi = dyadic_round(&f_enc.hi, 48, false).min(four.clone());
                    return (lo, hi);
                }
            }
        }
        point = point.refine();
        if point.rational_value().is_some() {
            // Exact rational critical point: the value is exact.
            let r = point.rational_value().unwrap();
            let v = pair.q1().eval(r);
            let v = &v * &v / pair.q2().eval(r);
            let eps = BigRational::new(1.into(), num::BigInt::from(1u64 << 48));
            return ((&v - &eps).max(zero), (&v + &eps).min(four));
        }
    }
    unreachable!("interval refinement converges: f is continuous at a non-pole point");
}

/// The certified hyperbolicity sweep across `(0, 4)`.
///
/// Cut points: certified enclosures of every real critical value of `f`
/// inside `(0,4)`, the exact leading-cancellation value `lc(Q1)^2/lc(Q2)`
/// when `deg Q2 = 2 deg Q1`, and widened numeric seeds from near-real images
/// of complex critical points (conservative extras). One simplest-rational
/// sample per gap; a full Sturm count at every sample certifies reality of
/// the whole level family.
pub fn certified_sweep(pair: &RecurrencePair, extra_grid: Option<usize>) -> Result<SweepOutcome> {
    let mut notes = Vec::new();
    let mut certified = true;
    let cps = critical_point_analysis(pair)?;

    // Certified enclosures around interior critical values.
    let mut enclosures: Vec<(BigRational, BigRational)> = cps
        .iter()
        .filter(|cp| cp.value_in_window)
        .map(|cp| critical_value_enclosure(pair, cp))
        .collect();
    enclosures.sort();
    // Equal critical values at distinct critical points produce overlapping
    // enclosures that no refinement separates; merge and degrade.
    let mut merged: Vec<(BigRational, BigRational)> = Vec::new();
    for e in enclosures {
        match merged.last_mut() {
            Some(last) if e.0 <= last.1 => {
                if e.1 > last.1 {
                    last.1 = e.1;
                }
                certified = false;
                notes.push("overlapping critical-value enclosures merged".into());
            }
            _ => merged.push(e),
        }
    }

    let mut cuts: Vec<BigRational> = vec![big(0), big(4)];
    for (lo, hi) in &merged {
        cuts.push(lo.clone());
        cuts.push(hi.clone());
    }

    // Leading-coefficient cancellation value: at s0 = lc(Q1)^2 / lc(Q2) the
    // level polynomial drops degree (a root passes through infinity), so the
    // real-root count may step there without any finite critical value.
    let d1 = pair.q1().degree_nonzero();
    let d2 = pair.q2().degree().unwrap_or(0);
    if d2 == 2 * d1 {
        let lc1 = pair.q1().leading_coeff().unwrap();
        let lc2 = pair.q2().leading_coeff().unwrap();
        let c0 = lc1 * lc1 / lc2;
        if c0 > big(0) && c0 < big(4) {
            notes.push(format!("degree-drop level at s = {}", c0));
            cuts.push(c0);
        }
    }

    // Conservative extra seeds from near-real images of complex critical
    // points, widened to dyadic bounds.
    match all_complex_roots(&pair.wronskian(), &RootFindConfig::default()) {
        Ok(wroots) => {
            for z in &wroots.roots {
                if z.im.abs() <= 1e-9 * (1.0 + z.norm()) {
                    continue;
                }
                let q1v = pair.q1().eval_complex(*z);
                let q2v = pair.q2().eval_complex(*z);
                if q2v.norm() == 0.0 {
                    continue;
                }
                let v = q1v * q1v / q2v;
                if v.im.abs() < 1e-6 * (1.0 + v.re.abs()) && v.re > 1e-9 && v.re < 4.0 - 1e-9 {
                    let center = rat_from_f64(v.re);
                    let delta = rat_from_f64(1e-4);
                    cuts.push((&center - &delta).max(big(0)));
                    cuts.push((&center + &delta).min(big(4)));
                }
            }
            if !wroots.converged {
                certified = false;
                notes.push("complex critical-point seeding did not converge".into());
            }
        }
        Err(_) => {
            certified = false;
            notes.push("complex critical-point seeding unavailable".into());
        }
    }

    cuts.sort();
    cuts.dedup();

    // One simplest-rational sample per gap between consecutive cut points.
    let mut samples: Vec<BigRational> = Vec::new();
    for pair_cuts in cuts.windows(2) {
        let (a, b) = (&pair_cuts[0], &pair_cuts[1]);
        if a < b {
            samples.push(simplest_rational_between(a, b));
        }
    }
    if let Some(m) = extra_grid {
        for j in 1..m {
            samples.push(BigRational::new((4 * j as i64).into(), (m as i64).into()));
        }
    }
    samples.sort();
    samples.dedup();

    let q1sq = pair.q1().square();
    let mut outcome_samples = Vec::with_capacity(samples.len());
    for s in samples {
        let g = &q1sq - &pair.q2().scale(&s);
        let sf = g.squarefree_part()?;
        let expected = sf.degree().unwrap_or(0);
        let real_count = if expected == 0 { 0 } else { count_real_roots(&sf)? };
        outcome_samples.push(SweepSample {
            s,
            real_count,
            expected,
        });
    }
    Ok(SweepOutcome {
        cut_points: cuts,
        samples: outcome_samples,
        certified,
        notes,
    })
}

/// Which algorithm answers condition (b).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BMode {
    /// The certified level sweep: passes only when every sampled level keeps
    /// its full real-root count (no nonreal points anywhere on the curve
    /// `f^{-1}[0,4]`), which rules out disjoint ovals a fortiori.
    Certified,
    /// Numeric curve tracing and component classification.
    Numeric,
}

/// A numerically observed oval disjoint from the real axis.
#[derive(Clone, Debug)]
pub struct OvalSighting {
    pub min_abs_im: f64,
    pub sample_point: (f64, f64),
    pub points: usize,
}

/// Hunt for ovals disjoint from the real axis.
///
/// A disjoint oval maps onto the whole real projective line, so it passes
/// through a nonreal zero of `Q1` (where `f = 0`) and a nonreal zero of `Q2`
/// (where `f = infinity`). If all zeros of `Q1` are real, no disjoint oval
/// can exist and the answer is exact; otherwise the trace window is anchored
/// on the nonreal zeros.
pub fn hunt_disjoint_ovals(pair: &RecurrencePair) -> Result<Option<OvalSighting>> {
    let config = RootFindConfig::default();
    let q1_roots = all_complex_roots(pair.q1(), &config)?;
    let mut anchors: Vec<Complex64> = q1_roots
        .roots
        .iter()
        .copied()
        .filter(|z| z.im != 0.0)
        .collect();
    if anchors.is_empty() {
        return Ok(None);
    }
    if pair.q2().degree().unwrap_or(0) >= 1 {
        let q2_roots = all_complex_roots(pair.q2(), &config)?;
        anchors.extend(q2_roots.roots.iter().copied().filter(|z| z.im != 0.0));
    }
    let max_re = anchors.iter().map(|z| z.re).fold(f64::MIN, f64::max);
    let min_re = anchors.iter().map(|z| z.re).fold(f64::MAX, f64::min);
    let max_im = anchors.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let pad_x = 1.0 + 0.8 * (max_re - min_re).abs();
    let pad_y = 1.0 + 0.8 * max_im;
    let window = Window::new(
        min_re - pad_x,
        max_re + pad_x,
        -max_im - pad_y,
        max_im + pad_y,
        512,
    )?;
    let critical_xs: Vec<f64> = critical_point_analysis(pair)?
        .iter()
        .map(|cp| cp.point_approx)
        .collect();
    let components = classify(trace_gamma_tilde(pair, &window), &critical_xs, &window);
    let oval = components
        .iter()
        .filter(|c| c.classification == Classification::DisjointOval)
        .max_by_key(|c| c.points.len());
    Ok(oval.map(|c| {
        let min_abs_im = c.points.iter().map(|p| p.1.abs()).fold(f64::INFINITY, f64::min);
        OvalSighting {
            min_abs_im,
            sample_point: c.points[0],
            points: c.points.len(),
        }
    }))
}

/// Condition (b) on its own, in the requested mode.
pub fn check_b(pair: &RecurrencePair, mode: BMode) -> Result<ConditionReport> {
    match mode {
        BMode::Certified => {
            let sweep = certified_sweep(pair, None)?;
            let report = match sweep.first_deficit() {
                None => ConditionReport {
                    id: ConditionId::B,
                    status: if sweep.certified {
                        ConditionStatus::Pass
                    } else {
                        ConditionStatus::NumericOnlyPass
                    },
                    witness: None,
                    note: format!(
                        "all {} sampled levels keep their full real-root count",
                        sweep.samples.len()
                    ),
                    detail: ConditionDetail::Sweep(sweep),
                },
                Some(deficit) => ConditionReport {
                    id: ConditionId::B,
                    status: ConditionStatus::Fail,
                    witness: Some(Witness::SweepDeficit {
                        s: deficit.s.clone(),
                        real_count: deficit.real_count,
                        expected: deficit.expected,
                    }),
                    note: format!(
                        "level s = {} has {} real roots of {} expected: nonreal points on f^-1[0,4]",
                        deficit.s, deficit.real_count, deficit.expected
                    ),
                    detail: ConditionDetail::Sweep(sweep),
                },
            };
            Ok(report)
        }
        BMode::Numeric => match hunt_disjoint_ovals(pair)? {
            Some(oval) => Ok(ConditionReport {
                id: ConditionId::B,
                status: ConditionStatus::Fail,
                note: format!(
                    "traced an oval of {} points staying {:.4} away from the real axis",
                    oval.points, oval.min_abs_im
                ),
                witness: Some(Witness::DisjointOval {
                    min_abs_im: oval.min_abs_im,
                    sample_point: oval.sample_point,
                }),
                detail: ConditionDetail::None,
            }),
            None => Ok(ConditionReport {
                id: ConditionId::B,
                status: ConditionStatus::NumericOnlyPass,
                witness: None,
                note: "no disjoint ovals detected at the trace resolution".into(),
                detail: ConditionDetail::None,
            }),
        },
    }
}

/// Endpoint of a support interval.
#[derive(Clone, Debug)]
pub enum SupportEndpoint {
    NegInf,
    Point(AlgebraicNumber),
    PosInf,
}

impl SupportEndpoint {
    pub fn approx(&self) -> f64 {
        match self {
            SupportEndpoint::NegInf => f64::NEG_INFINITY,
            SupportEndpoint::Point(a) => a.approx_f64(),
            SupportEndpoint::PosInf => f64::INFINITY,
        }
    }
}

/// A maximal closed interval of the support `{x : 0 <= f(x) <= 4}`.
#[derive(Clone, Debug)]
pub struct SupportInterval {
    pub lo: SupportEndpoint,
    pub hi: SupportEndpoint,
}

/// The support for a passing pair: exactly `{x : D(x) <= 0}`.
///
/// For such pairs `D(x) <= 0` forces `Q2(x) > 0` (coprimality excludes
/// `Q1 = Q2 = 0`), which makes `0 <= f(x) <= 4` equivalent to `D(x) <= 0`;
/// sign analysis of `D` on the partition induced by its isolated real roots
/// yields the maximal closed intervals.
fn compute_support(pair: &RecurrencePair) -> Result<Vec<SupportInterval>> {
    let d = pair.discriminant();
    let roots = isolate_real_roots(d)?;
    // Region sample points: -inf side, between consecutive roots, +inf side.
    let mut region_signs: Vec<i8> = Vec::with_capacity(roots.len() + 1);
    if roots.is_empty() {
        region_signs.push(crate::rat::sign_i8(&d.eval(&big(0))));
    } else {
        let first = roots.first().unwrap();
        region_signs.push(crate::rat::sign_i8(&d.eval(&(first.lo() - big(1)))));
        for w in roots.windows(2) {
            let sample = (w[0].hi() + w[1].lo()) / big(2);
            region_signs.push(crate::rat::sign_i8(&d.eval(&sample)));
        }
        let last = roots.last().unwrap();
        region_signs.push(crate::rat::sign_i8(&d.eval(&(last.hi() + big(1)))));
    }
    debug_assert!(region_signs.iter().all(|&s| s != 0));

    let mut intervals = Vec::new();
    let mut open_from: Option<SupportEndpoint> = None;
    for (i, &sign) in region_signs.iter().enumerate() {
        let negative = sign < 0;
        if negative && open_from.is_none() {
            open_from = Some(if i == 0 {
                SupportEndpoint::NegInf
            } else {
                SupportEndpoint::Point(roots[i - 1].clone())
            });
        }
        if !negative {
            if let Some(lo) = open_from.take() {
                intervals.push(SupportInterval {
                    lo,
                    hi: SupportEndpoint::Point(roots[i - 1].clone()),
                });
            }
        }
    }
    if let Some(lo) = open_from.take() {
        intervals.push(SupportInterval {
            lo,
            hi: SupportEndpoint::PosInf,
        });
    }
    // Degenerate points: roots where D does not change sign and is positive
    // on both sides still satisfy D = 0, i.e. f = 4.
    for (i, root) in roots.iter().enumerate() {
        if region_signs[i] > 0 && region_signs[i + 1] > 0 {
            intervals.push(SupportInterval {
                lo: SupportEndpoint::Point(root.clone()),
                hi: SupportEndpoint::Point(root.clone()),
            });
        }
    }
    intervals.sort_by(|a, b| a.lo.approx().partial_cmp(&b.lo.approx()).unwrap());
    Ok(intervals)
}

/// Support intervals for a pair that passes the full criterion; calling this
/// on a failing pair is a contract violation.
pub fn support_intervals(pair: &RecurrencePair) -> Result<Vec<SupportInterval>> {
    let verdict = full_verdict(pair)?;
    match verdict.support {
        Some(s) if verdict.overall => Ok(s),
        _ => Err(Error::ContractViolation(
            "support_intervals is defined only for pairs passing the full criterion".into(),
        )),
    }
}

/// The assembled verdict: the five condition reports, the conjunction, and
/// (for passing pairs) the support intervals with exact endpoints.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub reports: Vec<ConditionReport>,
    pub overall: bool,
    pub support: Option<Vec<SupportInterval>>,
}

impl Verdict {
    pub fn report(&self, id: ConditionId) -> &ConditionReport {
        self.reports.iter().find(|r| r.id == id).unwrap()
    }
}

/// Run all five checks and assemble the verdict.
///
/// Condition (b) is composed from the certified sweep plus exact reasoning:
/// a clean sweep rules out disjoint ovals outright (their image covers the
/// whole of `[0,4]`, so they would dent every level). When the sweep shows
/// deficits, two cases remain. If `Q1` has only real zeros, a disjoint oval
/// is impossible (its image covers `f = 0`, which would require a nonreal
/// zero of `Q1`), so (b) passes exactly and the deficits are attributed to
/// whichever of (a), (c), (d), (e) failed; if additionally none of them
/// failed, the curve can only meet the real line at infinity (only possible
/// for `deg Q2 >= 2 deg Q1 + 2`) and (b) is reported failed with the sweep
/// witness. If `Q1` does have nonreal zeros, the numeric trace hunts for the
/// ovals through them.
pub fn full_verdict(pair: &RecurrencePair) -> Result<Verdict> {
    let a = check_a(pair)?;
    let c = check_c(pair)?;
    let d = check_d(pair)?;
    let e = check_e(pair)?;
    let sweep = certified_sweep(pair, None)?;
    let others_failed: Vec<&str> = [&a, &c, &d, &e]
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.id.as_str())
        .collect();

    let b = if sweep.all_full() {
        ConditionReport {
            id: ConditionId::B,
            status: if sweep.certified {
                ConditionStatus::Pass
            } else {
                ConditionStatus::NumericOnlyPass
            },
            witness: None,
            note: format!(
                "every sampled level keeps its full real-root count ({} samples): no nonreal points on f^-1[0,4], hence no disjoint ovals",
                sweep.samples.len()
            ),
            detail: ConditionDetail::Sweep(sweep),
        }
    } else if a.passed() {
        if others_failed.is_empty() {
            let deficit = sweep.first_deficit().unwrap().clone();
            ConditionReport {
                id: ConditionId::B,
                status: ConditionStatus::Fail,
                witness: Some(Witness::SweepDeficit {
                    s: deficit.s.clone(),
                    real_count: deficit.real_count,
                    expected: deficit.expected,
                }),
                note: format!(
                    "nonreal points on f^-1[0,4] (s = {}, {} of {} real) with (a), (c), (d), (e) all passing: \
                     the curve leaves the real line through infinity (deg Q2 >= 2 deg Q1 + 2)",
                    deficit.s, deficit.real_count, deficit.expected
                ),
                detail: ConditionDetail::Sweep(sweep),
            }
        } else {
            ConditionReport {
                id: ConditionId::B,
                status: ConditionStatus::Pass,
                witness: None,
                note: format!(
                    "every zero of Q1 is real, so no oval avoids the real line (a disjoint oval would carry \
                     a nonreal zero of Q1); the level deficits are attributed to failing condition(s) {}",
                    others_failed.join(", ")
                ),
                detail: ConditionDetail::Sweep(sweep),
            }
        }
    } else {
        // Q1 has nonreal zeros: disjoint ovals are possible; look for them.
        match hunt_disjoint_ovals(pair)? {
            Some(oval) => ConditionReport {
                id: ConditionId::B,
                status: ConditionStatus::Fail,
                note: format!(
                    "oval of {} points staying {:.4} away from the real axis",
                    oval.points, oval.min_abs_im
                ),
                witness: Some(Witness::DisjointOval {
                    min_abs_im: oval.min_abs_im,
                    sample_point: oval.sample_point,
                }),
                detail: ConditionDetail::Sweep(sweep),
            },
            None => ConditionReport {
                id: ConditionId::B,
                status: ConditionStatus::NumericOnlyPass,
                witness: None,
                note: format!(
                    "level deficits present and Q1 has nonreal zeros, but no disjoint oval was traced; \
                     deficits co-occur with failing condition(s) {}",
                    if others_failed.is_empty() { "none".to_string() } else { others_failed.join(", ") }
                ),
                detail: ConditionDetail::Sweep(sweep),
            },
        }
    };

    let reports = vec![a, b, c, d, e];
    let overall = reports.iter().all(ConditionReport::passed);
    let support = if overall {
        Some(compute_support(pair)?)
    } else {
        None
    };
    Ok(Verdict {
        reports,
        overall,
        support,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::big_ratio;

    fn p(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_ints(coeffs)
    }

    fn pair(q1: &[i64], q2: &[i64]) -> RecurrencePair {
        RecurrencePair::new(p(q1), p(q2)).unwrap()
    }

    /// Q1 = -x^2 + 2x, Q2 = 5x^2 - 1.
    fn sample_e_fail() -> RecurrencePair {
        pair(&[0, 2, -1], &[-1, 0, 5])
    }

    /// Q1 = 2x^2 - 8x + 6, Q2 = -5x^3 + 37x^2 - 43x - 21.
    fn sample_d_fail() -> RecurrencePair {
        pair(&[6, -8, 2], &[-21, -43, 37, -5])
    }

    /// Q1 = 2x^2 - 8x + 6, Q2 = x^4 - 8x^3 + 21x^2 - 14x - 16.
    fn sample_e_fail_quartic() -> RecurrencePair {
        pair(&[6, -8, 2], &[-16, -14, 21, -8, 1])
    }

    /// Q1 = x^2 - 2x - 5, Q2 = x^2: passes everything.
    fn sample_pass() -> RecurrencePair {
        pair(&[-5, -2, 1], &[0, 0, 1])
    }

    /// Q1 = x^2 + 1, Q2 = x^2 + 6: disjoint ovals around +-i.
    fn sample_disjoint() -> RecurrencePair {
        pair(&[1, 0, 1], &[6, 0, 1])
    }

    #[test]
    fn condition_a() {
        assert_eq!(check_a(&sample_e_fail()).unwrap().status, ConditionStatus::Pass);
        let fail = check_a(&sample_disjoint()).unwrap();
        assert_eq!(fail.status, ConditionStatus::Fail);
        match fail.witness {
            Some(Witness::NonrealRoots { real_count, expected, .. }) => {
                assert_eq!((real_count, expected), (0, 2));
            }
            other => panic!("unexpected witness {:?}", other),
        }
        let repeated = RecurrencePair::new(p(&[1, -2, 1]), p(&[1, 1])).unwrap();
        let rep = check_a(&repeated).unwrap();
        assert_eq!(rep.status, ConditionStatus::Fail);
        assert!(matches!(rep.witness, Some(Witness::RepeatedFactor { .. })));
    }

    #[test]
    fn condition_c() {
        assert_eq!(check_c(&sample_e_fail()).unwrap().status, ConditionStatus::Pass);
        assert_eq!(check_c(&sample_d_fail()).unwrap().status, ConditionStatus::Pass);
        assert_eq!(check_c(&sample_pass()).unwrap().status, ConditionStatus::Pass);
        // Q1 = x, Q2 = 1: D = x^2 - 4 has roots +-2.
        assert_eq!(check_c(&pair(&[0, 1], &[1])).unwrap().status, ConditionStatus::Pass);
        // Q1 = x, Q2 = x^2 + 1: D = -3x^2 - 4 has no real roots of 2.
        assert_eq!(check_c(&pair(&[0, 1], &[1, 0, 1])).unwrap().status, ConditionStatus::Fail);
    }

    #[test]
    fn condition_d_critical_values() {
        // The cubic factor of W for the first sample pair has a real root
        // near -0.915 with f there about 2.23 in (0,4): condition d fails.
        let rep = check_d(&sample_e_fail()).unwrap();
        assert_eq!(rep.status, ConditionStatus::Fail);

        // Reference failure: critical point -1.66437, value 3.50783.
        let rep = check_d(&sample_d_fail()).unwrap();
        assert_eq!(rep.status, ConditionStatus::Fail);
        match rep.witness {
            Some(Witness::CriticalValueInWindow { point_approx, value_approx, .. }) => {
                assert!((point_approx + 1.66437).abs() < 1e-4, "{}", point_approx);
                assert!((value_approx - 3.50783).abs() < 1e-4, "{}", value_approx);
            }
            other => panic!("unexpected witness {:?}", other),
        }

        // Passing pair: critical points are the zeros of Q1 (value 0) and the
        // pole x = 0.
        let rep = check_d(&sample_pass()).unwrap();
        assert_eq!(rep.status, ConditionStatus::Pass);
        match rep.detail {
            ConditionDetail::CriticalPoints(cps) => {
                assert_eq!(cps.len(), 3);
                assert!(cps.iter().any(|cp| cp.q2_sign == 0 && cp.value_approx.is_infinite()));
            }
            _ => panic!("expected critical point detail"),
        }

        // f(0) = 1/6 for the disjoint-oval pair: condition d fails there.
        let rep = check_d(&sample_disjoint()).unwrap();
        assert_eq!(rep.status, ConditionStatus::Fail);
        match rep.witness {
            Some(Witness::CriticalValueInWindow { point_approx, value_approx, .. }) => {
                assert!(point_approx.abs() < 1e-9);
                assert!((value_approx - 1.0 / 6.0).abs() < 1e-9);
            }
            other => panic!("unexpected witness {:?}", other),
        }
    }

    #[test]
    fn condition_e_signs() {
        let rep = check_e(&sample_e_fail()).unwrap();
        assert_eq!(rep.status, ConditionStatus::Fail);
        match &rep.witness {
            Some(Witness::NegativeQ2AtRoot { root, q2_exact, .. }) => {
                assert!(root.equals_rational(&big(0)));
                assert_eq!(q2_exact.as_ref().unwrap(), &big(-1));
            }
            other => panic!("unexpected witness {:?}", other),
        }

        let rep = check_e(&sample_e_fail_quartic()).unwrap();
        assert_eq!(rep.status, ConditionStatus::Fail);
        match rep.detail {
            ConditionDetail::Q2Signs(infos) => {
                let vals: Vec<_> = infos.iter().filter_map(|i| i.q2_exact.clone()).collect();
                assert_eq!(vals, vec![big(-16), big(-4)]);
            }
            _ => panic!("expected sign detail"),
        }

        assert_eq!(check_e(&sample_pass()).unwrap().status, ConditionStatus::Pass);
    }

    #[test]
    fn sweep_behaviour() {
        // Disjoint-oval pair: s = 1 must appear as a deficit sample with
        // 2 of 4 real roots (x^4 + x^2 - 5).
        let sweep = certified_sweep(&sample_disjoint(), None).unwrap();
        assert!(!sweep.all_full());
        let s1 = sweep.samples.iter().find(|s| s.s == big(1)).expect("sample at s = 1");
        assert_eq!((s1.real_count, s1.expected), (2, 4));

        // Passing pair: every sample full.
        let sweep = certified_sweep(&sample_pass(), Some(16)).unwrap();
        assert!(sweep.all_full());
        assert!(sweep.certified);
        for s in &sweep.samples {
            assert_eq!(s.real_count, s.expected);
        }

        // First sample pair: Q2 < 0 at the zero x = 0 of Q1, so low levels
        // lose a pair of real roots and the sweep fails.
        let sweep = certified_sweep(&sample_e_fail(), None).unwrap();
        assert!(!sweep.all_full());
        let deficit = sweep.first_deficit().unwrap();
        assert!(deficit.s <= big(1));
        // Confirm at s = 1/100 directly.
        let g = &sample_e_fail().q1().square() - &sample_e_fail().q2().scale(&big_ratio(1, 100));
        let sf = g.squarefree_part().unwrap();
        assert!(count_real_roots(&sf).unwrap() < sf.degree().unwrap());
    }

    #[test]
    fn full_verdicts_on_reference_pairs() {
        let v = full_verdict(&sample_e_fail()).unwrap();
        assert!(!v.overall);
        assert!(v.report(ConditionId::A).passed());
        assert!(v.report(ConditionId::C).passed());
        assert_eq!(v.report(ConditionId::E).status, ConditionStatus::Fail);

        let v = full_verdict(&sample_d_fail()).unwrap();
        assert!(!v.overall);
        assert!(v.report(ConditionId::A).passed());
        assert!(v.report(ConditionId::B).passed());
        assert!(v.report(ConditionId::C).passed());
        assert_eq!(v.report(ConditionId::D).status, ConditionStatus::Fail);

        let v = full_verdict(&sample_e_fail_quartic()).unwrap();
        assert!(!v.overall);
        assert!(v.report(ConditionId::A).passed());
        assert!(v.report(ConditionId::B).passed());
        assert!(v.report(ConditionId::C).passed());
        assert!(v.report(ConditionId::D).passed());
        assert_eq!(v.report(ConditionId::E).status, ConditionStatus::Fail);

        let v = full_verdict(&sample_pass()).unwrap();
        assert!(v.overall);
        assert!(v.support.is_some());

        let v = full_verdict(&sample_disjoint()).unwrap();
        assert!(!v.overall);
        assert_eq!(v.report(ConditionId::B).status, ConditionStatus::Fail);
    }

    #[test]
    fn support_of_reference_pass_pair() {
        let support = support_intervals(&sample_pass()).unwrap();
        assert_eq!(support.len(), 2);
        // [-sqrt(5), -1] and [sqrt(5), 5]
        let sqrt5 = p(&[-5, 0, 1]);
        match (&support[0].lo, &support[0].hi) {
            (SupportEndpoint::Point(lo), SupportEndpoint::Point(hi)) => {
                assert_eq!(sign_at(&sqrt5, lo).unwrap(), 0);
                assert!(lo.approx_f64() < 0.0);
                assert!(hi.equals_rational(&big(-1)));
            }
            _ => panic!("unbounded support"),
        }
        match (&support[1].lo, &support[1].hi) {
            (SupportEndpoint::Point(lo), SupportEndpoint::Point(hi)) => {
                assert_eq!(sign_at(&sqrt5, lo).unwrap(), 0);
                assert!(lo.approx_f64() > 0.0);
                assert!(hi.equals_rational(&big(5)));
            }
            _ => panic!("unbounded support"),
        }
    }

    #[test]
    fn support_chebyshev_like() {
        // Q1 = x, Q2 = 1: support [-2, 2], and all zeros of P_5 inside.
        let cheb = pair(&[0, 1], &[1]);
        let support = support_intervals(&cheb).unwrap();
        assert_eq!(support.len(), 1);
        match (&support[0].lo, &support[0].hi) {
            (SupportEndpoint::Point(lo), SupportEndpoint::Point(hi)) => {
                assert!(lo.equals_rational(&big(-2)));
                assert!(hi.equals_rational(&big(2)));
            }
            _ => panic!("unbounded support"),
        }
        let p5 = &cheb.spec().generate(5)[5];
        let roots = all_complex_roots(p5, &RootFindConfig::default()).unwrap();
        for z in roots.roots {
            assert!(z.im == 0.0 && z.re.abs() <= 2.0 + 1e-9);
        }
    }

    #[test]
    fn support_contract_violation_on_failing_pair() {
        assert!(matches!(
            support_intervals(&sample_e_fail()),
            Err(Error::ContractViolation(_))
        ));
    }

    #[test]
    fn witnesses_recheck_exactly() {
        // E witness: sign_at(Q1, alpha) = 0 and sign_at(Q2, alpha) = -1.
        let pair = sample_e_fail();
        let v = full_verdict(&pair).unwrap();
        match &v.report(ConditionId::E).witness {
            Some(Witness::NegativeQ2AtRoot { root, .. }) => {
                assert_eq!(sign_at(pair.q1(), root).unwrap(), 0);
                assert_eq!(sign_at(pair.q2(), root).unwrap(), -1);
            }
            other => panic!("unexpected witness {:?}", other),
        }
        // D witness: Q2 > 0, Q1 != 0, D < 0 at the point.
        let pair = sample_d_fail();
        let v = full_verdict(&pair).unwrap();
        match &v.report(ConditionId::D).witness {
            Some(Witness::CriticalValueInWindow { point, .. }) => {
                assert_eq!(sign_at(pair.q2(), point).unwrap(), 1);
                assert_ne!(sign_at(pair.q1(), point).unwrap(), 0);
                assert_eq!(sign_at(pair.discriminant(), point).unwrap(), -1);
            }
            other => panic!("unexpected witness {:?}", other),
        }
    }

    #[test]
    fn curve_escaping_through_infinity_fails_b() {
        // Q1 = x - 4, Q2 = -x^4 + 6x^3 - 2x^2 - 2x + 4: conditions (a), (c),
        // (d), (e) all hold, yet Q2 -> -inf makes f negative for large |x|,
        // so every level loses a pair of roots through complex arcs meeting
        // the real line only at infinity (possible since deg Q2 >= 2 deg Q1
        // + 2). The sweep sees the deficit and condition (b) must absorb the
        // failure for the verdict to stay sound: P_5 already has zeros with
        // |Im| > 1.
        let pair = pair(&[-4, 1], &[4, -2, -2, 6, -1]);
        let v = full_verdict(&pair).unwrap();
        for id in [ConditionId::A, ConditionId::C, ConditionId::D, ConditionId::E] {
            assert!(v.report(id).passed(), "{:?} should pass", id);
        }
        assert_eq!(v.report(ConditionId::B).status, ConditionStatus::Fail);
        assert!(!v.overall);
        let zeros = crate::levels::zeros_via_levels(&pair, 5, &RootFindConfig::default()).unwrap();
        assert!(zeros.max_imag_deviation() > 1.0);
    }

    #[test]
    fn equal_critical_values_merge_and_degrade() {
        // f = (x^3 - 2x)^2 has the same critical value 32/27 at both
        // critical points +-sqrt(2/3); the two enclosures can never be
        // separated, so they merge and the sweep gives up its certification.
        let pair = pair(&[0, -2, 0, 1], &[1]);
        let sweep = certified_sweep(&pair, None).unwrap();
        assert!(!sweep.certified);
        assert!(sweep.notes.iter().any(|n| n.contains("merged")));
        // The pair fails regardless: the discriminant has nonreal zeros.
        let v = full_verdict(&pair).unwrap();
        assert_eq!(v.report(ConditionId::C).status, ConditionStatus::Fail);
        assert!(!v.overall);
    }

    #[test]
    fn numeric_mode_condition_b() {
        let rep = check_b(&sample_disjoint(), BMode::Numeric).unwrap();
        assert_eq!(rep.status, ConditionStatus::Fail);
        assert!(matches!(rep.witness, Some(Witness::DisjointOval { .. })));
        let rep = check_b(&sample_pass(), BMode::Numeric).unwrap();
        assert_eq!(rep.status, ConditionStatus::NumericOnlyPass);
    }

    #[test]
    fn unbounded_support_ray_pair() {
        // Q1 = x, Q2 = (x^2+4)/4: D = -4 everywhere, support is the whole line.
        let q2 = RatPoly::new(vec![big(1), big(0), big_ratio(1, 4)]);
        let pair = RecurrencePair::new(p(&[0, 1]), q2).unwrap();
        let v = full_verdict(&pair).unwrap();
        assert!(v.overall, "{:?}", v.reports);
        let support = v.support.unwrap();
        assert_eq!(support.len(), 1);
        assert!(matches!(support[0].lo, SupportEndpoint::NegInf));
        assert!(matches!(support[0].hi, SupportEndpoint::PosInf));
    }
}

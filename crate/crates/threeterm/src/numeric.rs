//! Simultaneous complex root finding (Aberth-Ehrlich) with Newton polishing.
//!
//! This backend serves figures and cross-validation oracles. Verdicts never
//! depend on it; the certified path lives in [`crate::algebraic`].

use num::complex::Complex64;
use num::{BigRational, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::RatPoly;
use crate::rat::{approx_log2, rat_from_f64};

/// Tuning for the root finder. Defaults match the CLI defaults.
#[derive(Clone, Debug)]
pub struct RootFindConfig {
    /// Stop when the largest relative Aberth correction drops below this.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Roots with |Im| below this (relative to magnitude) are snapped onto
    /// the real axis when doing so does not degrade the residual.
    pub pairing_threshold: f64,
}

impl Default for RootFindConfig {
    fn default() -> Self {
        RootFindConfig {
            tolerance: 1e-12,
            max_iterations: 400,
            pairing_threshold: 1e-8,
        }
    }
}

/// All complex roots of a polynomial, with multiplicity, plus convergence
/// metadata.
#[derive(Clone, Debug)]
pub struct ComplexRootSet {
    /// Length equals the degree of the input; multiple roots repeat.
    pub roots: Vec<Complex64>,
    /// `max |p(z_i)| / max |c_j|` over the returned roots.
    pub residual: f64,
    pub converged: bool,
    /// Power-of-two variable rescale applied before conversion to `f64`
    /// (roots were already mapped back; this is reporting only).
    pub rescale_log2: i64,
}

impl ComplexRootSet {
    /// Largest |Im| over the root set; zero for an empty set.
    pub fn max_imag_deviation(&self) -> f64 {
        self.roots.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Group roots within `eps` mutual distance and report cluster centroids
    /// with their sizes. Numeric multiplicity hinting only; exact
    /// multiplicity questions belong to gcd.
    pub fn clusters(&self, eps: f64) -> Vec<(Complex64, usize)> {
        let n = self.roots.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, i: usize) -> usize {
            if parent[i] != i {
                let r = find(parent, parent[i]);
                parent[i] = r;
            }
            parent[i]
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if (self.roots[i] - self.roots[j]).norm() <= eps {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri] = rj;
                    }
                }
            }
        }
        let mut groups: Vec<(Complex64, usize)> = Vec::new();
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            match reps.iter().position(|&x| x == r) {
                Some(k) => {
                    groups[k].0 += self.roots[i];
                    groups[k].1 += 1;
                }
                None => {
                    reps.push(r);
                    groups.push((self.roots[i], 1));
                }
            }
        }
        for g in &mut groups {
            g.0 /= g.1 as f64;
        }
        groups.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
        groups
    }
}

fn eval(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Horner evaluation together with a running bound on the f64 rounding
/// error; once |p(z)| sits below that floor, no further iteration can
/// improve the root.
fn eval_with_noise(coeffs: &[f64], z: Complex64) -> (Complex64, f64) {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut mag = 0.0f64;
    let zn = z.norm();
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
        mag = mag * zn + c.abs();
    }
    let n = coeffs.len() as f64;
    (acc, f64::EPSILON * mag * 2.0 * n)
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect()
}

fn cauchy_bound(coeffs: &[f64]) -> f64 {
    let lc = coeffs.last().copied().unwrap_or(1.0).abs();
    1.0 + coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| c.abs() / lc)
        .fold(0.0, f64::max)
}

/// Fujiwara root bound: much tighter than Cauchy when the leading
/// coefficient is small relative to the rest.
fn fujiwara_bound(coeffs: &[f64]) -> f64 {
    let n = coeffs.len() - 1;
    let lc = coeffs[n].abs();
    let mut best = 0.0f64;
    for k in 1..=n {
        let mut ratio = coeffs[n - k].abs() / lc;
        if k == n {
            ratio /= 2.0;
        }
        best = best.max(ratio.powf(1.0 / k as f64));
    }
    2.0 * best
}

/// Convert exact coefficients to `f64`, guarding against overflow.
///
/// The whole polynomial is first divided by a power of two so the largest
/// coefficient sits near 1 (roots unchanged). If the dynamic range is still
/// too large for `f64`, the variable is rescaled by a power of two chosen to
/// balance the two ends, and the resulting roots are mapped back by the
/// caller using the returned exponent.
fn to_f64_normalized(p: &RatPoly) -> (Vec<f64>, i64) {
    let logs: Vec<Option<i64>> = p.coeffs().iter().map(approx_log2).collect();
    let deg = p.degree_nonzero();
    let mut work = p.clone();
    let mut rescale = 0i64;
    let l0 = logs.iter().flatten().next().copied().unwrap_or(0);
    let ln = logs.last().and_then(|x| *x).unwrap_or(0);
    if (l0 - ln).abs() > 900 && deg > 0 {
        rescale = (l0 - ln) / deg as i64;
        if rescale != 0 {
            work = work.scale_variable_pow2(rescale);
        }
    }
    let shift = work
        .coeffs()
        .iter()
        .filter_map(approx_log2)
        .max()
        .unwrap_or(0);
    if shift.abs() > 500 {
        let two = BigRational::from_integer(2.into());
        let factor = if shift > 0 {
            num::pow::pow(two, shift as usize).recip()
        } else {
            num::pow::pow(two, (-shift) as usize)
        };
        work = work.scale(&factor);
    }
    (work.to_f64_coeffs(), rescale)
}

/// Find all complex roots of `p` (degree >= 1).
///
/// Initial guesses sit on a circle scaled by the Cauchy bound; Jacobi-style
/// Aberth-Ehrlich sweeps run until the largest correction falls under the
/// tolerance, followed by per-root Newton polishing. Failure to converge is
/// reported through the `converged` flag, not an error.
pub fn all_complex_roots(p: &RatPoly, config: &RootFindConfig) -> Result<ComplexRootSet> {
    let deg = match p.degree() {
        None | Some(0) => {
            return Err(Error::InvalidInput(
                "root finding needs a polynomial of degree at least 1".into(),
            ))
        }
        Some(d) => d,
    };

    // Peel off exact roots at the origin first.
    let zero_mult = p
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .unwrap_or(0);
    let reduced = RatPoly::new(p.coeffs()[zero_mult..].to_vec());
    let mut roots = vec![Complex64::new(0.0, 0.0); zero_mult];

    let mut residual = 0.0f64;
    let mut converged = true;
    let mut rescale = 0i64;
    if reduced.degree_nonzero() > 0 {
        let (coeffs, rs) = to_f64_normalized(&reduced);
        rescale = rs;
        if coeffs.last().is_none_or(|lc| *lc == 0.0 || !lc.is_finite()) {
            return Err(Error::NonConvergence(
                "coefficient dynamic range exceeds f64 even after rescaling".into(),
            ));
        }
        let (mut inner, ok) = aberth(&coeffs, config);
        converged = ok;
        polish(&coeffs, &mut inner);
        if reduced.degree_nonzero() <= 64 {
            // Exact-evaluation polish removes the f64 Horner noise floor
            // (and its repulsion keeps genuinely distinct close roots on
            // distinct limits); collapse decisions are then gated on exact
            // residual comparisons. Only worth the big-integer arithmetic at
            // moderate degrees.
            let evaluator = ExactEvaluator::new(&reduced.scale_variable_pow2(rescale));
            polish_exact(&evaluator, &mut inner);
            split_false_conjugate_pairs(&evaluator, &mut inner);
            collapse_clusters(&coeffs, Some(&evaluator), &mut inner);
        } else {
            collapse_clusters(&coeffs, None, &mut inner);
        }
        snap_and_pair(&coeffs, &mut inner, config.pairing_threshold);
        let scale_back = 2f64.powi(rescale as i32);
        for z in &mut inner {
            roots.push(*z * scale_back);
        }
        let scale_p = coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max);
        residual = inner
            .iter()
            .map(|&z| eval(&coeffs, z).norm())
            .fold(0.0, f64::max)
            / scale_p.max(f64::MIN_POSITIVE);
        // Documented residual scale for converged output.
        let bound = config.tolerance * (1.0 + cauchy_bound(&coeffs)).powi(deg.min(300) as i32);
        if residual > bound {
            converged = false;
        }
    }

    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    debug_assert_eq!(roots.len(), deg);
    Ok(ComplexRootSet {
        roots,
        residual,
        converged,
        rescale_log2: rescale,
    })
}

fn aberth(coeffs: &[f64], config: &RootFindConfig) -> (Vec<Complex64>, bool) {
    let deg = coeffs.len() - 1;
    let dcoeffs = derivative(coeffs);
    let radius = cauchy_bound(coeffs).min(fujiwara_bound(coeffs)) * 0.8;
    let mut zs: Vec<Complex64> = (0..deg)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / deg as f64 + 0.45;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut next = zs.clone();
    for _ in 0..config.max_iterations {
        let mut max_correction = 0.0f64;
        for i in 0..deg {
            let z = zs[i];
            let (pv, noise) = eval_with_noise(coeffs, z);
            if pv.norm() <= 4.0 * noise {
                next[i] = z;
                continue;
            }
            let mut dv = eval(&dcoeffs, z);
            if !pv.is_finite() || !dv.is_finite() {
                // Escaped iterate: pull it back toward the root circle.
                next[i] = z * 0.25;
                max_correction = f64::INFINITY;
                continue;
            }
            if dv.norm() == 0.0 {
                dv = Complex64::new(f64::MIN_POSITIVE.sqrt(), 0.0);
            }
            let newton = pv / dv;
            let mut sum = Complex64::new(0.0, 0.0);
            for (j, &zj) in zs.iter().enumerate() {
                if j != i {
                    let diff = z - zj;
                    if diff.norm() > 0.0 {
                        sum += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * sum;
            let w = if denom.norm() > 0.0 { newton / denom } else { newton };
            let w = if w.is_finite() { w } else { newton };
            next[i] = z - w;
            max_correction = max_correction.max(w.norm() / (1.0 + z.norm()));
        }
        std::mem::swap(&mut zs, &mut next);
        if max_correction < config.tolerance {
            return (zs, true);
        }
    }
    (zs, false)
}

/// Per-root Newton steps, accepted only while the residual improves.
fn polish(coeffs: &[f64], roots: &mut [Complex64]) {
    let dcoeffs = derivative(coeffs);
    for z in roots.iter_mut() {
        let mut best = *z;
        let mut best_res = eval(coeffs, best).norm();
        for _ in 0..16 {
            let dv = eval(&dcoeffs, best);
            if dv.norm() == 0.0 {
                break;
            }
            let cand = best - eval(coeffs, best) / dv;
            let res = eval(coeffs, cand).norm();
            if res < best_res {
                best = cand;
                best_res = res;
            } else {
                break;
            }
        }
        *z = best;
    }
}

/// Exact Horner evaluation over scaled integers.
///
/// The coefficients are integerized once; the evaluation point is the exact
/// dyadic value of the `f64` root. Everything stays in integer arithmetic
/// (no per-operation gcd), and the result only becomes a float at the final
/// ratio, so the evaluation carries no rounding noise at all.
struct ExactEvaluator {
    ints: Vec<num::BigInt>,
    dints: Vec<num::BigInt>,
    ddints: Vec<num::BigInt>,
}

fn big_mant_exp(n: &num::BigInt) -> (f64, i64) {
    use num::ToPrimitive;
    if n.is_zero() {
        return (0.0, 0);
    }
    let shift = (n.bits() as i64 - 64).max(0);
    ((n >> shift as usize).to_f64().unwrap_or(f64::NAN), shift)
}

fn pow2(e: i64) -> f64 {
    if e > 2000 {
        f64::INFINITY
    } else if e < -2000 {
        0.0
    } else {
        2f64.powi(e as i32)
    }
}

impl ExactEvaluator {
    fn new(p: &RatPoly) -> Self {
        use num::Integer;
        let mut lcm = num::BigInt::from(1);
        for c in p.coeffs() {
            let d = c.denom();
            lcm = &lcm / lcm.gcd(d) * d;
        }
        let ints: Vec<num::BigInt> = p
            .coeffs()
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let dints: Vec<num::BigInt> = ints
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * num::BigInt::from(i))
            .collect();
        let ddints: Vec<num::BigInt> = dints
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * num::BigInt::from(i))
            .collect();
        ExactEvaluator { ints, dints, ddints }
    }

    /// `z = (a + ib) / 2^k` with integer `a`, `b`.
    fn dyadic(z: Complex64) -> Option<(num::BigInt, num::BigInt, i64)> {
        if !z.is_finite() {
            return None;
        }
        let ra = rat_from_f64(z.re);
        let rb = rat_from_f64(z.im);
        let ka = ra.denom().bits() as i64 - 1;
        let kb = rb.denom().bits() as i64 - 1;
        let k = ka.max(kb).max(0);
        if k > 600 {
            return None;
        }
        let a = ra.numer() << (k - ka) as usize;
        let b = rb.numer() << (k - kb) as usize;
        Some((a, b, k))
    }

    /// The Newton correction `p(z)/p'(z)`, exactly evaluated. `None` when the
    /// point cannot be polished (derivative zero, degenerate scales).
    fn newton_correction(&self, z: Complex64) -> Option<Complex64> {
        let (a, b, k) = Self::dyadic(z)?;
        let pv = horner_scaled(&self.ints, &a, &b, k as usize);
        let pd = horner_scaled(&self.dints, &a, &b, k as usize);
        // pv is p(z) * L * 2^(k deg), pd is p'(z) * L * 2^(k (deg-1)):
        // p/p' = (pv / pd) * 2^(-k).
        complex_big_ratio(pv, pd, -k)
    }

    /// `log2 |p(z)|` up to the constant `-log2 L`, exact enough to compare
    /// residual magnitudes across points without overflow.
    fn log2_abs(&self, z: Complex64) -> Option<f64> {
        let (a, b, k) = Self::dyadic(z)?;
        let (re, im) = horner_scaled(&self.ints, &a, &b, k as usize);
        let sq = &re * &re + &im * &im;
        if sq.is_zero() {
            return Some(f64::NEG_INFINITY);
        }
        let (mant, exp) = big_mant_exp(&sq);
        let deg = (self.ints.len() - 1) as i64;
        Some(0.5 * (mant.log2() + exp as f64) - (k * deg) as f64)
    }

    /// Exact sign of `p` at a real point.
    fn sign_real(&self, x: f64) -> Option<i8> {
        let (a, b, k) = Self::dyadic(Complex64::new(x, 0.0))?;
        let (re, _) = horner_scaled(&self.ints, &a, &b, k as usize);
        Some(match re.sign() {
            num::bigint::Sign::Minus => -1,
            num::bigint::Sign::NoSign => 0,
            num::bigint::Sign::Plus => 1,
        })
    }

    /// Real critical point of `p` near `x0`: Newton on `p'` with exact
    /// evaluations. `None` when it wanders or stalls.
    fn critical_near(&self, x0: f64) -> Option<f64> {
        if self.ddints.is_empty() {
            return None;
        }
        let mut x = x0;
        for _ in 0..60 {
            let (a, b, k) = Self::dyadic(Complex64::new(x, 0.0))?;
            let (dv, _) = horner_scaled(&self.dints, &a, &b, k as usize);
            let (ddv, _) = horner_scaled(&self.ddints, &a, &b, k as usize);
            let step = complex_big_ratio(
                (dv, num::BigInt::from(0)),
                (ddv, num::BigInt::from(0)),
                -k,
            )?
            .re;
            if !step.is_finite() || step.abs() > 0.1 * (1.0 + x.abs()) {
                return None;
            }
            x -= step;
            if step.abs() <= f64::EPSILON * (1.0 + x.abs()) {
                return Some(x);
            }
        }
        Some(x)
    }

    /// Bisect `[lo, hi]` with exact signs; `s_hi` is the sign at `hi`.
    /// Assumes one sign change in the interval.
    fn bisect_real(&self, mut lo: f64, mut hi: f64, s_hi: i8) -> f64 {
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            match self.sign_real(mid) {
                Some(0) => return mid,
                Some(s) if s == s_hi => hi = mid,
                Some(_) => lo = mid,
                None => break,
            }
        }
        0.5 * (lo + hi)
    }
}

/// Resolve false conjugate pairs hugging the real axis.
///
/// When two nearby simple real roots are reported as a conjugate pair, the
/// iterates sit by the critical point of `p` between the true roots, where
/// plain iteration separates them too slowly. The critical point betrays the
/// truth exactly: if `p` there has the opposite sign to `p` on both flanks,
/// two real roots straddle it and exact bisection pins them; otherwise the
/// pair is genuinely complex and stays put.
fn split_false_conjugate_pairs(eval: &ExactEvaluator, roots: &mut [Complex64]) {
    let scale = 1.0 + roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let n = roots.len();
    let mut paired: Vec<bool> = vec![false; n];
    for i in 0..n {
        if paired[i] || roots[i].im <= 0.0 || roots[i].im > 1e-5 * scale {
            continue;
        }
        let z = roots[i];
        let partner = (0..n)
            .filter(|&j| !paired[j] && roots[j].im < 0.0)
            .min_by(|&a, &b| {
                (roots[a] - z.conj())
                    .norm()
                    .total_cmp(&(roots[b] - z.conj()).norm())
            });
        let Some(j) = partner else { continue };
        if (roots[j] - z.conj()).norm() > 4.0 * z.im + 1e-12 * scale {
            continue;
        }
        let Some(c) = eval.critical_near(z.re) else { continue };
        if (c - z.re).abs() > 64.0 * z.im + 1e-9 * scale {
            continue;
        }
        let Some(sc) = eval.sign_real(c) else { continue };
        if sc == 0 {
            // The critical point is itself a (double) root.
            roots[i] = Complex64::new(c, 0.0);
            roots[j] = roots[i];
            paired[i] = true;
            paired[j] = true;
            continue;
        }
        let mut h = (4.0 * z.im).max((1.0 + c.abs()) * 1e-15);
        let mut span = None;
        for _ in 0..60 {
            if h > 1e-3 * scale {
                break;
            }
            match (eval.sign_real(c - h), eval.sign_real(c + h)) {
                (Some(sl), Some(sr)) if sl == -sc && sr == -sc => {
                    span = Some(h);
                    break;
                }
                _ => h *= 2.0,
            }
        }
        let Some(h) = span else { continue };
        let r1 = eval.bisect_real(c - h, c, sc);
        let r2 = eval.bisect_real(c, c + h, -sc);
        roots[i] = Complex64::new(r1.min(r2), 0.0);
        roots[j] = Complex64::new(r1.max(r2), 0.0);
        paired[i] = true;
        paired[j] = true;
    }
}

/// Horner over integers: returns `p(z) * 2^(k * deg p)` as a complex big
/// integer, for `z = (a + ib)/2^k`.
fn horner_scaled(
    ints: &[num::BigInt],
    a: &num::BigInt,
    b: &num::BigInt,
    k: usize,
) -> (num::BigInt, num::BigInt) {
    let d = ints.len() - 1;
    let mut re = ints[d].clone();
    let mut im = num::BigInt::from(0);
    let mut pow = num::BigInt::from(1);
    for i in (0..d).rev() {
        let nre = &re * a - &im * b;
        let nim = &re * b + &im * a;
        pow <<= k;
        re = nre + &ints[i] * &pow;
        im = nim;
    }
    (re, im)
}

/// `(n_re + i n_im) / (d_re + i d_im) * 2^extra`, via mantissa/exponent
/// windows so arbitrarily large integers stay finite.
fn complex_big_ratio(
    num: (num::BigInt, num::BigInt),
    den: (num::BigInt, num::BigInt),
    extra: i64,
) -> Option<Complex64> {
    let parts = [
        big_mant_exp(&num.0),
        big_mant_exp(&num.1),
        big_mant_exp(&den.0),
        big_mant_exp(&den.1),
    ];
    let emax = parts.iter().map(|p| p.1).max().unwrap();
    let v: Vec<f64> = parts.iter().map(|(m, e)| m * pow2(e - emax)).collect();
    let n = Complex64::new(v[0], v[1]);
    let d = Complex64::new(v[2], v[3]);
    if d.norm() == 0.0 {
        return None;
    }
    let q = (n / d) * pow2(extra);
    q.is_finite().then_some(q)
}

/// Aberth sweeps driven by exact evaluation.
///
/// The `f64` coefficient image of a high-degree expanded polynomial is
/// already a perturbed polynomial, so plain iteration cannot do better than
/// its roots; these sweeps use the exact coefficients instead. The pairwise
/// repulsion term keeps close roots on distinct limits (a lone Newton polish
/// would happily merge a nearly-real conjugate pair onto one real root, and
/// true multiple roots settle into a tight ring for the collapse pass).
fn polish_exact(eval: &ExactEvaluator, roots: &mut [Complex64]) {
    if eval.ints.len() < 2 {
        return;
    }
    let mut next = roots.to_vec();
    for _ in 0..48 {
        let mut max_step = 0.0f64;
        for i in 0..roots.len() {
            let z = roots[i];
            next[i] = z;
            if !z.is_finite() {
                continue;
            }
            let Some(newton) = eval.newton_correction(z) else {
                continue;
            };
            let mut sum = Complex64::new(0.0, 0.0);
            for (j, zj) in roots.iter().enumerate() {
                if j != i {
                    let diff = z - zj;
                    if diff.norm() > 0.0 {
                        sum += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * sum;
            let mut w = if denom.norm() > 0.0 { newton / denom } else { newton };
            if !w.is_finite() {
                continue;
            }
            // Refinement only: never leave the local neighbourhood.
            let cap = 0.2 * (1.0 + z.norm());
            if w.norm() > cap {
                w *= cap / w.norm();
            }
            next[i] = z - w;
            max_step = max_step.max(w.norm() / (1.0 + z.norm()));
        }
        roots.copy_from_slice(&next);
        if max_step < 1e-15 {
            break;
        }
    }
}

/// Refine numeric multiple roots: a cluster of m nearby iterates around an
/// m-fold root converges like eps^(1/m), but the (m-1)-th derivative has a
/// simple root there, so polishing the centroid against it restores full
/// precision. Clusters of merely close (distinct) roots are left alone: the
/// residual gate rejects them — exactly, when an evaluator is supplied.
fn collapse_clusters(
    coeffs: &[f64],
    exact: Option<&ExactEvaluator>,
    roots: &mut [Complex64],
) {
    let scale = 1.0 + roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    // Without exact polish, Aberth iterates stall about eps^(1/m) away from
    // an m-fold root, so the candidate grouping must be much wider than the
    // reporting tolerance. After exact polish, distinct roots sit at their
    // true separations and only genuine multiples still huddle.
    let eps = if exact.is_some() { 1e-5 } else { 1e-3 } * scale;
    let set = ComplexRootSet {
        roots: roots.to_vec(),
        residual: 0.0,
        converged: true,
        rescale_log2: 0,
    };
    for (centroid, size) in set.clusters(eps) {
        if size < 2 {
            continue;
        }
        let mut dk = coeffs.to_vec();
        for _ in 0..size - 1 {
            dk = derivative(&dk);
        }
        if dk.len() < 2 {
            continue;
        }
        let ddk = derivative(&dk);
        let mut z = centroid;
        for _ in 0..40 {
            let dv = eval(&ddk, z);
            if dv.norm() == 0.0 {
                break;
            }
            let step = eval(&dk, z) / dv;
            z -= step;
            if step.norm() <= 1e-16 * (1.0 + z.norm()) {
                break;
            }
        }
        let members: Vec<usize> = roots
            .iter()
            .enumerate()
            .filter(|(_, r)| (**r - centroid).norm() <= eps)
            .map(|(i, _)| i)
            .collect();
        if members.len() != size {
            continue;
        }
        let improves = match exact {
            Some(evaluator) => {
                let candidate = evaluator.log2_abs(z);
                let best_member = members
                    .iter()
                    .filter_map(|&i| evaluator.log2_abs(roots[i]))
                    .fold(f64::INFINITY, f64::min);
                matches!(candidate, Some(c) if c <= best_member - 1.0)
            }
            None => {
                let min_member_res = members
                    .iter()
                    .map(|&i| eval(coeffs, roots[i]).norm())
                    .fold(f64::INFINITY, f64::min);
                eval(coeffs, z).norm() <= 0.5 * min_member_res
            }
        };
        if improves {
            for &i in &members {
                roots[i] = z;
            }
        }
    }
}

/// Enforce conjugate structure for real-coefficient input: snap near-real
/// roots onto the axis when the residual allows, then average the remaining
/// roots into exact conjugate pairs.
fn snap_and_pair(coeffs: &[f64], roots: &mut [Complex64], pairing_threshold: f64) {
    for z in roots.iter_mut() {
        if z.im != 0.0 && z.im.abs() <= pairing_threshold * (1.0 + z.norm()) {
            let snapped = Complex64::new(z.re, 0.0);
            if eval(coeffs, snapped).norm() <= 10.0 * eval(coeffs, *z).norm() + f64::MIN_POSITIVE {
                *z = snapped;
            }
        }
    }
    let mut pos: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].im > 0.0).collect();
    let mut neg: Vec<usize> = (0..roots.len()).filter(|&i| roots[i].im < 0.0).collect();
    pos.sort_by(|&a, &b| roots[a].re.total_cmp(&roots[b].re).then(roots[a].im.total_cmp(&roots[b].im)));
    for &i in &pos {
        if neg.is_empty() {
            break;
        }
        let conj = roots[i].conj();
        let (slot, _) = neg
            .iter()
            .enumerate()
            .min_by(|(_, &a), (_, &b)| {
                (roots[a] - conj).norm().total_cmp(&(roots[b] - conj).norm())
            })
            .map(|(k, &j)| (k, j))
            .unwrap();
        let j = neg.remove(slot);
        let avg = (roots[i] + roots[j].conj()) * 0.5;
        roots[i] = avg;
        roots[j] = avg.conj();
    }
}

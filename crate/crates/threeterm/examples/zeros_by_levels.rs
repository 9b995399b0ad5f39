//! Compute the zeros of P_n through the level decomposition
//! `P_n = prod_k (Q1^2 - c_k Q2) * (-Q1)^(n odd)`, `c_k = 4cos^2(pi k/(n+1))`,
//! instead of expanding coefficients of degree n * deg Q1.
//!
//! ```bash
//! cargo run --release --example zeros_by_levels
//! ```

use threeterm::levels::{levels, zeros_via_levels, LevelValue};
use threeterm::numeric::RootFindConfig;
use threeterm::poly::RatPoly;
use threeterm::recurrence::RecurrencePair;

fn main() -> threeterm::Result<()> {
    // The level values for small n; a few are exact rationals.
    for n in [1usize, 2, 3, 5] {
        let set = levels(n);
        let rendered: Vec<String> = set
            .levels
            .iter()
            .map(|l| match &l.value {
                LevelValue::Exact(c) => format!("{}{}", c, if l.self_paired { " (self-paired)" } else { "" }),
                LevelValue::Approx(v) => format!("{:.6}", v),
            })
            .collect();
        println!("n = {}: levels {{{}}}", n, rendered.join(", "));
    }

    let config = RootFindConfig::default();

    // A real-rooted pair: all 400 zeros of P_200 are real and confined to
    // two intervals.
    let pair = RecurrencePair::new(RatPoly::from_ints(&[-5, -2, 1]), RatPoly::from_ints(&[0, 0, 1]))?;
    let zeros = zeros_via_levels(&pair, 200, &config)?;
    let (min, max) = zeros
        .roots
        .iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), z| (lo.min(z.re), hi.max(z.re)));
    println!(
        "\nQ1 = {}, Q2 = {}: P_200 has {} zeros, max |Im| = {:.2e}, real range [{:.6}, {:.6}]",
        pair.q1(),
        pair.q2(),
        zeros.roots.len(),
        zeros.max_imag_deviation(),
        min,
        max
    );

    // A pair with nonreal zeros: the deviation is visible.
    let pair = RecurrencePair::new(RatPoly::from_ints(&[0, 2, -1]), RatPoly::from_ints(&[-1, 0, 5]))?;
    let zeros = zeros_via_levels(&pair, 100, &config)?;
    println!(
        "Q1 = {}, Q2 = {}: P_100 has {} zeros, max |Im| = {:.4}",
        pair.q1(),
        pair.q2(),
        zeros.roots.len(),
        zeros.max_imag_deviation()
    );
    Ok(())
}

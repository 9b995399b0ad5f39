//! End-to-end consistency: the exact criterion verdict against the measured
//! imaginary deviation of the computed zeros of P_n.
//!
//! ```bash
//! cargo run --release --example verify_reality
//! ```

use threeterm::criterion::full_verdict;
use threeterm::levels::zeros_via_levels;
use threeterm::numeric::RootFindConfig;
use threeterm::parse::parse_poly;
use threeterm::recurrence::RecurrencePair;

fn main() -> threeterm::Result<()> {
    let config = RootFindConfig::default();
    for (q1, q2) in [
        ("x^2-2x-5", "x^2"),
        ("-x^2+2x", "5x^2-1"),
        ("2x^2-8x+6", "x^4-8x^3+21x^2-14x-16"),
    ] {
        let pair = RecurrencePair::new(parse_poly(q1)?, parse_poly(q2)?)?;
        let verdict = full_verdict(&pair)?;
        println!("Q1 = {}, Q2 = {} -> verdict {}", pair.q1(), pair.q2(),
                 if verdict.overall { "PASS" } else { "FAIL" });
        let mut worst = 0.0f64;
        for n in [5usize, 20, 60] {
            let zeros = zeros_via_levels(&pair, n, &config)?;
            let dev = zeros.max_imag_deviation();
            worst = worst.max(dev);
            println!("  P_{:<3} max |Im root| = {:.3e}", n, dev);
        }
        let empirically_real = worst < 1e-8;
        println!(
            "  empirically real: {} (consistent: {})\n",
            empirically_real,
            empirically_real == verdict.overall
        );
    }
    Ok(())
}

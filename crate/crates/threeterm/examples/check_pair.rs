//! Run the five-condition reality criterion on a few pairs (Q1, Q2) and
//! print the per-condition reports with their witnesses.
//!
//! ```bash
//! cargo run --example check_pair
//! ```

use threeterm::criterion::full_verdict;
use threeterm::parse::parse_poly;
use threeterm::recurrence::RecurrencePair;
use threeterm::report;

fn main() -> threeterm::Result<()> {
    // A pair that fails only the positivity condition (e), one that fails the
    // critical-value condition (d), one that passes everything, and one whose
    // curve has ovals disjoint from the real axis.
    let inputs = [
        ("-x^2+2x", "5x^2-1"),
        ("2x^2-8x+6", "-5x^3+37x^2-43x-21"),
        ("x^2-2x-5", "x^2"),
        ("x^2+1", "x^2+6"),
    ];
    for (q1_text, q2_text) in inputs {
        let pair = RecurrencePair::new(parse_poly(q1_text)?, parse_poly(q2_text)?)?;
        let verdict = full_verdict(&pair)?;
        println!("Q1 = {}, Q2 = {}", pair.q1(), pair.q2());
        for report in &verdict.reports {
            println!(
                "  {} [{}] {}",
                report.id.as_str(),
                report.status.as_str(),
                report.note
            );
        }
        match &verdict.support {
            Some(support) => println!(
                "  => every P_n is real-rooted; zeros live in {}",
                report::support_text(support)
            ),
            None => println!("  => some P_n has nonreal zeros"),
        }
        println!();
    }

    // Validation rejects pairs with a common zero: such a zero would belong
    // to every P_i.
    let shared = RecurrencePair::new(parse_poly("x-1")?, parse_poly("x-1")?);
    println!("shared-root pair: {}", shared.unwrap_err());
    Ok(())
}

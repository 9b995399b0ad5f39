//! For pairs passing the criterion, compute the closed real intervals that
//! carry every zero of every P_n, with exact algebraic endpoints.
//!
//! ```bash
//! cargo run --example support_intervals
//! ```

use threeterm::criterion::{support_intervals, SupportEndpoint};
use threeterm::parse::parse_poly;
use threeterm::rat::big_ratio;
use threeterm::recurrence::RecurrencePair;
use threeterm::report;

fn main() -> threeterm::Result<()> {
    let pairs = [
        ("x^2-2x-5", "x^2"),      // two bounded intervals
        ("x", "1"),               // one interval, rational endpoints
        ("x", "1/4x^2+1"),        // unbounded: the whole real line
    ];
    for (q1, q2) in pairs {
        let pair = RecurrencePair::new(parse_poly(q1)?, parse_poly(q2)?)?;
        let support = support_intervals(&pair)?;
        println!("Q1 = {}, Q2 = {}", pair.q1(), pair.q2());
        println!("  support = {}", report::support_text(&support));
        for interval in &support {
            if let SupportEndpoint::Point(a) = &interval.lo {
                let tight = a.refined_to_width(&big_ratio(1, 1i64 << 40));
                println!(
                    "  left endpoint: root of {} in [{}, {}]",
                    tight.defining(),
                    tight.lo(),
                    tight.hi()
                );
            }
        }
        println!();
    }

    // Asking for the support of a failing pair is a contract violation.
    let failing = RecurrencePair::new(parse_poly("-x^2+2x")?, parse_poly("5x^2-1")?)?;
    println!("failing pair: {}", support_intervals(&failing).unwrap_err());
    Ok(())
}

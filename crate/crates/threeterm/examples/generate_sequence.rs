//! Generate the polynomial sequence P_0..P_n exactly, for an order-2 pair
//! and for a longer recurrence, and confirm the generating-function identity.
//!
//! ```bash
//! cargo run --example generate_sequence
//! ```

use threeterm::poly::RatPoly;
use threeterm::recurrence::RecurrenceSpec;

fn main() -> threeterm::Result<()> {
    let spec = RecurrenceSpec::new(vec![
        RatPoly::from_ints(&[-5, -2, 1]), // Q1 = x^2 - 2x - 5
        RatPoly::from_ints(&[0, 0, 1]),   // Q2 = x^2
    ])?;
    println!("order-2 recurrence, first terms:");
    for (i, p) in spec.generate(5).iter().enumerate() {
        println!("  P_{} = {}", i, p);
    }

    // The same sequence falls out of inverting 1 + Q1 t + Q2 t^2 as a formal
    // power series in t.
    assert_eq!(spec.generate(12), spec.generating_series(12));
    println!("series inversion agrees with the recurrence up to t^12");

    // Generation works for any order; the criterion itself is order-2 only.
    let cubic = RecurrenceSpec::new(vec![
        RatPoly::from_ints(&[1, 1]),
        RatPoly::from_ints(&[0, 1]),
        RatPoly::from_ints(&[2]),
    ])?;
    println!("order-3 recurrence, first terms:");
    for (i, p) in cubic.generate(4).iter().enumerate() {
        println!("  P_{} = {}", i, p);
    }
    Ok(())
}

//! Trace the curve Im(Q1^2/Q2) = 0, classify its components, sample the
//! level point cloud, and write an SVG picture.
//!
//! ```bash
//! cargo run --release --example trace_curve
//! ```

use threeterm::algebraic::isolate_real_roots;
use threeterm::criterion::critical_point_analysis;
use threeterm::curve::{classify, gamma_point_cloud, render_svg, trace_gamma_tilde, Window};
use threeterm::numeric::RootFindConfig;
use threeterm::poly::RatPoly;
use threeterm::recurrence::RecurrencePair;

fn main() -> threeterm::Result<()> {
    // This pair's curve has a pair of ovals disjoint from the real axis.
    let pair = RecurrencePair::new(RatPoly::from_ints(&[1, 0, 1]), RatPoly::from_ints(&[6, 0, 1]))?;
    let window = Window::new(-4.0, 4.0, -4.0, 4.0, 512)?;

    let cps = critical_point_analysis(&pair)?;
    let critical_xs: Vec<f64> = cps.iter().map(|cp| cp.point_approx).collect();
    let components = classify(trace_gamma_tilde(&pair, &window), &critical_xs, &window);
    for (i, c) in components.iter().enumerate() {
        println!(
            "component {}: {} points, {}, crossings at {:?}",
            i,
            c.points.len(),
            c.classification.as_str(),
            c.crossing_points
        );
    }

    // Points of the curve f^-1([0,4]) at 41 levels.
    let cloud = gamma_point_cloud(&pair, 41, &RootFindConfig::default())?;
    let off_axis = cloud
        .iter()
        .flat_map(|s| s.roots.iter())
        .filter(|z| z.im.abs() > 0.5)
        .count();
    println!("level cloud: {} points with |Im| > 0.5", off_axis);

    let d_roots: Vec<f64> = isolate_real_roots(pair.discriminant())?
        .iter()
        .map(|r| r.approx_f64())
        .collect();
    let svg = render_svg(&components, &window, &d_roots, &critical_xs);
    let path = std::env::temp_dir().join("threeterm-curve.svg");
    std::fs::write(&path, svg)?;
    println!("wrote {}", path.display());
    Ok(())
}

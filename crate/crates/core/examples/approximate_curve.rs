//! Polyline approximation of the intersection of a cone and an elliptic
//! cylinder: a circle and a line meeting at the tangential point (0,1,1).
//! Writes the result as Wavefront OBJ to stdout.
//!
//! ```bash
//! cargo run --release --example approximate_curve > curve.obj
//! ```

use std::path::Path;

use intercurve::approx::approximate;
use intercurve::geom::BBox;
use intercurve::implicitize::{implicitize, plane_curve};
use intercurve::io::{curve_obj, load_surface};
use intercurve::rat::{rat, rat_i};
use intercurve::space_topology::space_topology;

fn main() -> intercurve::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let s1 = load_surface(&dir.join("ex61_s1.json"))?.surface()?;
    let s2 = load_surface(&dir.join("ex61_s2.json"))?.surface()?;

    let f = implicitize(&s1.projectable_form()?)?;
    let pc = plane_curve(&f, &s2)?;
    let bbox = BBox::new(rat_i(-3), rat_i(3), rat_i(-3), rat_i(3))?;
    let st = space_topology(&s2, &pc, &bbox)?;
    let lines = approximate(&st, &s2, &rat(1, 20))?;

    eprintln!("{} polylines", lines.len());
    for l in &lines {
        eprintln!("  {} points, closed: {}", l.points.len(), l.is_closed());
    }
    print!("{}", curve_obj(&lines));
    Ok(())
}

//! Topology graph of the plane curve G(v,t) = 0 obtained by substituting
//! the second surface into the implicit form of the first.
//!
//! ```bash
//! cargo run --release --example plane_curve_graph
//! ```

use std::path::Path;

use intercurve::geom::BBox;
use intercurve::implicitize::{implicitize, plane_curve};
use intercurve::io::load_surface;
use intercurve::plane_topology::plane_graph;
use intercurve::rat::rat_i;

fn main() -> intercurve::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let s1 = load_surface(&dir.join("ex63_s1.json"))?.surface()?;
    let s2 = load_surface(&dir.join("ex63_s2.json"))?.surface()?;

    let f = implicitize(&s1.projectable_form()?)?;
    println!("F = {f}");
    let pc = plane_curve(&f, &s2)?;
    println!("G main = {}", pc.main);
    println!("G vertical part = {}", pc.vertical);

    let bbox = BBox::new(rat_i(-2), rat_i(2), rat_i(-2), rat_i(2))?;
    let pg = plane_graph(&pc, &bbox)?;
    println!(
        "graph: {} vertices, {} edges, {} components, cycle rank {}",
        pg.vertices.len(),
        pg.edges.len(),
        pg.components(),
        pg.cycle_rank()
    );
    for (i, c) in pg.columns.iter().enumerate() {
        println!("column {i}: v ~ {}", intercurve::rat::rat_to_f64(&c.approx()));
    }
    Ok(())
}

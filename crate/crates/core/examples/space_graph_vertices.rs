//! Character points and the lifted space graph for a curve with two
//! self-intersections: parameter pairs (0,0),(0,1) and (32,0),(32,1) map
//! to the space points (0,0,0) and (32,-8,0), which become fused vertices.
//!
//! ```bash
//! cargo run --release --example space_graph_vertices
//! ```

use std::path::Path;

use intercurve::geom::BBox;
use intercurve::implicitize::{implicitize, plane_curve};
use intercurve::io::load_surface;
use intercurve::rat::{rat_i, rat_to_f64};
use intercurve::space_topology::space_topology;

fn main() -> intercurve::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let s1 = load_surface(&dir.join("ex41_s1.json"))?.surface()?;
    let s2 = load_surface(&dir.join("ex41_s2.json"))?.surface()?;

    let f = implicitize(&s1.projectable_form()?)?;
    let pc = plane_curve(&f, &s2)?;
    let bbox = BBox::new(rat_i(-1), rat_i(33), rat_i(-2), rat_i(2))?;
    let st = space_topology(&s2, &pc, &bbox)?;

    for (i, g) in st.chars.groups.iter().enumerate() {
        let p = g.space_point.rep();
        println!(
            "self-intersection {i}: space point ({}, {}, {}) with {} preimages",
            p[0],
            p[1],
            p[2],
            g.points.len()
        );
    }
    println!(
        "space graph: {} vertices, {} edges, {} components, cycle rank {}",
        st.graph.vertices.len(),
        st.graph.edges.len(),
        st.graph.components(),
        st.graph.cycle_rank()
    );
    for v in &st.graph.vertices {
        if v.preimages.len() > 1 {
            let p = v.point.rep();
            println!(
                "fused vertex at ({}, {}, {})",
                rat_to_f64(&p[0]),
                rat_to_f64(&p[1]),
                rat_to_f64(&p[2])
            );
        }
    }
    Ok(())
}

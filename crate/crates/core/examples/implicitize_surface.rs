//! Implicitize two fixture surfaces: a ruled one (reparametrized first)
//! and a tube surface that is projectable as given.
//!
//! ```bash
//! cargo run --release --example implicitize_surface
//! ```

use std::path::Path;

use intercurve::implicitize::implicitize;
use intercurve::io::{load_surface, SurfaceInput};

fn main() -> intercurve::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");

    // ruled surface: reparametrize so the z coordinate becomes a parameter
    let ruled = match load_surface(&dir.join("ex22_s1.json"))? {
        SurfaceInput::Ruled(r) => r,
        _ => unreachable!("fixture declares kind = ruled"),
    };
    let (ps, map) = ruled.reparametrize()?;
    println!("reparametrized params: {:?}", ps.surface.params);
    println!("inverse s = {}", map.inverse[1].numer());
    let f = implicitize(&ps)?;
    println!("cylinder implicit: {f}");

    // tube around the space curve (s^3 + s, s^2, s): the x coordinate only
    // involves s, so the surface projects along u without any transformation
    let tube = load_surface(&dir.join("ex62_s1.json"))?.surface()?;
    let ps = tube.projectable_form()?;
    let f = implicitize(&ps)?;
    println!(
        "tube implicit: degree {} with {} terms",
        f.total_degree(),
        f.num_terms()
    );
    Ok(())
}

//! The .surf text format: parse, self-check, print, round-trip.

use origami_stairs::format::{parse_surface, print_surface};

const DOC: &str = "\
# a Z^2 staircase over the two-row surface
name = two-row-staircase
k = 6
h = (1 2 3)(4 5 6)
v = (2 4)(3 5)
stratum = H(1,1)
group = Z^2

cut square=4 start=0,0 dir=0,1 len=1 value=[-1,0]
cut square=3 start=0,0 dir=0,1 len=1 value=[1,0]
cut square=5 start=0,0 dir=0,1 len=1 value=[0,1]
cut square=1 start=0,0 dir=0,1 len=1 value=[0,-1]
";

fn main() {
    let doc = parse_surface(DOC).unwrap();
    println!("parsed '{}': k = {}", doc.name.as_deref().unwrap_or("?"), doc.origami.square_count());
    let spec = doc.spec_or_trivial();
    println!("group {:?}, {} cuts", spec.group, spec.cuts.len());
    for (c, info) in spec.cuts.iter().zip(&spec.info) {
        println!(
            "  cut in square {}: value {:?}, endpoints {:?}",
            c.square, c.value.lift(), info.endpoints
        );
    }

    let printed = print_surface(&doc);
    println!("\nprinted back:\n{printed}");
    let again = parse_surface(&printed).unwrap();
    assert_eq!(again.origami.sigma_h(), doc.origami.sigma_h());
    assert_eq!(again.origami.sigma_v(), doc.origami.sigma_v());
    println!("round-trip ok");

    // errors carry line and column
    for bad in [
        "k = 2\nh = (1 2\nv = ()",
        "k = 2\nh = (1 2)\nv = (1 3)",
        "k = 2\nh = (1 2)\nv = ()\nstratum = H(2)",
    ] {
        println!("--\n{}", parse_surface(bad).unwrap_err());
    }
}

//! Cylinder decompositions in a handful of rational directions.

use origami_stairs::cylinders::cylinder_decomposition;
use origami_stairs::fixtures;
use origami_stairs::q;
use origami_stairs::Slope;

fn main() {
    let o = fixtures::wollmilchsau();
    println!("Wollmilchsau, k = {}", o.square_count());
    for (rise, run) in [(1, 1), (1, 2), (2, 1), (3, 2), (1, 0), (0, 1)] {
        let s = Slope::new(rise, run).unwrap();
        let d = cylinder_decomposition(&o, s).unwrap();
        println!("direction {s}: {} cylinder(s), total area {}", d.cylinders.len(), d.total_area);
        for (i, c) in d.cylinders.iter().enumerate() {
            println!(
                "  #{i}: area {}  height {}  width {}  cycle {:?}",
                c.area, c.height, c.width, c.cycle
            );
        }
        // locate the center of square 1
        let idx = d.cylinder_of_point(1, q(1, 2), q(1, 2));
        println!("  center of square 1 sits in cylinder #{idx}");
    }
}

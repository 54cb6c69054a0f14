//! Runs every built-in fixture end to end against the quadrature oracle.
//!
//! `cargo run --release -p gkz-core --example fixtures [name ...]`

fn main() {
    let names: Vec<String> = std::env::args().skip(1).collect();
    for (name, mut spec) in gkz_core::fixtures() {
        if !names.is_empty() && !names.contains(&name) {
            continue;
        }
        spec.verify = true;
        let start = std::time::Instant::now();
        let r = gkz_core::run(&spec);
        println!("{name} ({:.2?}), codim {}, w = {:?}", start.elapsed(), r.codim, r.weight);
        for s in &r.series {
            println!("  {}", s.display);
        }
        for w in &r.warnings {
            println!("  warning: {w}");
        }
        if let Some(e) = &r.error {
            println!("  error in {}: {}", e.stage, e.message);
        }
        if let Some(n) = &r.numeric {
            match (n.oracle.as_ref(), n.relative_deviation) {
                (Some(o), Some(d)) => println!("  value {:.12e}, oracle {:.12e}, deviation {d:.2e}", n.value, o.value),
                _ => println!("  value {:.12e}", n.value),
            }
        }
    }
}

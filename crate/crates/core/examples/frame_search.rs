//! Runs the numerical ETF search for the shapes given on the command line
//! (`d,n` pairs, default a small table) and prints what it finds.
//!
//! cargo run --release -p etf-core --example frame_search -- 3,9 4,7

use std::time::Instant;

use etf_core::frames::{optimize_etf, OptimizeOptions};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let shapes: Vec<(usize, usize)> = if args.is_empty() {
        vec![(2, 3), (2, 4), (3, 4), (3, 6), (3, 7), (3, 9), (4, 7), (4, 16)]
    } else {
        args.iter()
            .map(|a| {
                let (d, n) = a.split_once(',').expect("shape as d,n");
                (d.trim().parse().expect("d"), n.trim().parse().expect("n"))
            })
            .collect()
    };
    for (d, n) in shapes {
        let t = Instant::now();
        match optimize_etf::<f64>(d, n, 0, &OptimizeOptions::default()) {
            Ok(found) => println!(
                "({d},{n}) restart {} iterations {} residual {:.2e} in {:.2?}",
                found.restart,
                found.iterations,
                found.residual,
                t.elapsed()
            ),
            Err(e) => println!("({d},{n}) {e} after {:.2?}", t.elapsed()),
        }
    }
}

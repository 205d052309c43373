use isocodes::classify::{classify_odd_lagrangians, duplicate_weight_distributions, table_row};
use isocodes::selfdual::generate_selfdual_reps;
use std::time::Instant;

fn main() {
    for n in [12usize, 14, 16] {
        let t0 = Instant::now();
        let sd = generate_selfdual_reps(n).unwrap();
        let t1 = Instant::now();
        let classes = classify_odd_lagrangians(&sd).unwrap();
        let t2 = Instant::now();
        let row = table_row(&classes, n);
        let dups = duplicate_weight_distributions(&classes);
        println!(
            "n={n}: sd={} classes={} row={} dups={} gen={:?} classify={:?}",
            sd.reps.len(),
            classes.len(),
            row.csv_line(),
            dups.len(),
            t1 - t0,
            t2 - t1
        );
    }
}

//! The table of solutions for triples over 4, written as tuples in 4^k.

use bdm::solver::solution_table;

fn main() {
    for e in solution_table() {
        let tuple: Vec<&str> = e.solution.iter().map(|c| c.name()).collect();
        let tag = if e.derived { " (mirrored)" } else { "" };
        println!(
            "{}  x = ({}) in 4^{}{tag}",
            e.triple(),
            tuple.join(","),
            tuple.len()
        );
    }
}

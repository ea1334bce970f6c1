//! Builds T(K_4) and prints its labels and edge list.

use pairwalk::graph::{complete_graph, Origin};

fn main() -> pairwalk::Result<()> {
    let g = complete_graph(4)?;
    let (total, labels) = g.total_graph();
    println!(
        "T(K4): {} vertices, {} edges, {}-regular",
        total.vertex_count(),
        total.edge_count(),
        total.regular_degree().unwrap_or(0)
    );
    for label in &labels {
        match label.origin {
            Origin::BaseVertex(v) => println!("  {:>2}  vertex {v}", label.index),
            Origin::BaseEdge(j) => {
                let (u, v) = g.edges()[j];
                println!("  {:>2}  edge {u}-{v}", label.index);
            }
        }
    }
    print!("{}", total.to_edge_list());
    Ok(())
}

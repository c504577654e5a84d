//! Alexander polynomials of plane MOY graphs.
//!
//! Three independent evaluations are provided: the Kauffman state sum
//! ([`kauffman`]), the spanning-tree lattice model ([`spanning`]) and a weighted
//! matrix-tree determinant. The [`clock`] module studies clock moves between
//! spanning trees and their decomposition into rectangles, and [`crowell`]
//! handles knot diagrams.
//!
//! ```
//! use moy::{alexander, generate, Method};
//!
//! let g = generate(5, 4).unwrap();
//! let a = alexander(&g, Method::StateSum).unwrap();
//! let b = alexander(&g, Method::Spanning).unwrap();
//! assert_eq!(a, b);
//! ```

pub mod cli;
pub mod clock;
pub mod crowell;
pub mod error;
pub mod generate;
pub mod kauffman;
pub mod laurent;
pub mod matrix;
pub mod plane_graph;
pub mod spanning;
pub mod theorems;

pub use error::{Error, Result, Violation};
pub use generate::generate;
pub use laurent::{CoeffSeq, HalfPoly};
pub use plane_graph::PlaneGraph;
pub use spanning::LatticePoint;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    StateSum,
    Spanning,
    MatrixTree,
}

/// Reduces to trivial colors and moves the base edge onto the outer face if needed.
pub fn spanning_ready(g: &PlaneGraph) -> Result<PlaneGraph> {
    g.ensure_valid()?;
    if !g.base_on_outer_face() {
        return Err(Error::Precondition("base edge must border the outer face".into()));
    }
    g.reduce_to_trivial()
}

/// Canonical Alexander polynomial by the chosen method.
pub fn alexander(g: &PlaneGraph, method: Method) -> Result<HalfPoly> {
    match method {
        Method::StateSum => {
            g.ensure_valid()?;
            kauffman::state_sum(g)
        }
        Method::Spanning => spanning::alexander_spanning(&spanning_ready(g)?),
        Method::MatrixTree => spanning::alexander_matrix_tree(&spanning_ready(g)?),
    }
}

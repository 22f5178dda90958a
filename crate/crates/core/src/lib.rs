//! Small quasi-kernels in sourceless digraphs.
//!
//! A quasi-kernel is an independent set that reaches every vertex within
//! two steps. [`solver::solve`] runs greedy phases around well-chosen
//! witness vertices and returns a quasi-kernel together with a per-phase
//! trace; on the classes certified by [`detect::certify`] the result has at
//! most `t/(t+1)·n` vertices for the class threshold `t`.
//!
//! ```
//! use qkernel::generate::directed_cycle;
//! use qkernel::solver::{solve, Strategy};
//!
//! let g = directed_cycle(8);
//! let res = solve(&g, &Strategy::outdeg3()).unwrap();
//! assert!(g.is_quasi_kernel(&res.quasi_kernel));
//! assert_eq!(res.within_bound(), Some(true));
//! ```

pub mod detect;
pub mod digraph;
pub mod exact;
pub mod format;
pub mod generate;
pub mod ratio;
pub mod solver;

pub use detect::{certify, ClassCertificate, GraphClass, Pattern};
pub use digraph::{Digraph, GraphError, Vertex, VertexSet};
pub use ratio::Rational;
pub use solver::{solve, SolveError, SolveResult, Strategy};

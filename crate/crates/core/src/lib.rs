//! Exact pebbling numbers, optimal pebbling numbers and their bounds on
//! small graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] — immutable simple graphs, family generators, collapsing.
//! * [`pebble`] — distributions, moves, weights, move multigraphs and the
//!   squishing/smoothing transforms.
//! * [`solver`] — exhaustive reachability and the pebbling parameters.
//! * [`tree`] — path partitions and the linear-time tree pebbling number.
//! * [`bounds`] — closed forms, bound formulas and constructive witnesses.
//! * [`verify`] — seeded property suites cross-checking all of the above.
//!
//! ```
//! use pebblekit::graph::{generate, FamilySpec};
//! use pebblekit::solver::{Solver, SolverConfig};
//!
//! let c5 = generate(&FamilySpec::Cycle { n: 5 }).unwrap();
//! let solver = Solver::new(&c5, SolverConfig::default()).unwrap();
//! assert_eq!(solver.pebbling_number().unwrap().value, 5);
//! assert_eq!(solver.optimal_pebbling_number().unwrap().value, 4);
//! ```

pub mod bounds;
pub mod graph;
pub mod pebble;
pub mod rational;
pub mod solver;
pub mod tree;
pub mod verify;

pub use graph::{Graph, GraphError, VertexPartition};
pub use pebble::{Distribution, MoveSequence, PebbleMove};

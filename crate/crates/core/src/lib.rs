//! A CDCL satisfiability solver for discrete CNFs.
//!
//! Variables range over finite domains and a literal is any nonempty proper
//! subset of its variable's states. The engine propagates with watched
//! literals and watched states, learns first-UIP asserting clauses, and
//! chooses decisions by VSIDS-style scores over variables and states.
//!
//! ```
//! use dsat::formats::parse_dcnf;
//! use dsat::solver::{solve_default, Status};
//!
//! let cnf = parse_dcnf("p dcnf 2 2\nd 4 4\n1:1,3 2:1,2 0\n1:2,4 0\n").unwrap();
//! let r = solve_default(&cnf).unwrap();
//! assert_eq!(r.status, Status::Sat);
//! ```

pub mod bench;
pub mod formats;
pub mod gen;
pub mod heuristics;
pub mod learn;
pub mod logic;
pub mod nnf2cnf;
pub mod oracle;
pub mod propagate;
pub mod solver;
pub mod stateset;

pub use logic::{Clause, Cnf, Literal, World};
pub use solver::{SolveResult, Solver, SolverConfig, Status};
pub use stateset::StateSet;

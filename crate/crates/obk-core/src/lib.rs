//! Constructive solutions to the two-table directed Oberwolfach problem,
//! with independent verification of every intermediate and final object.
//!
//! The pipeline factors the complete symmetric digraph on t1+t2 vertices
//! into spanning unions of one t1-cycle and one t2-cycle (t1 in {4,6}, t2
//! even, t1+t2 >= 14): a sparse doubled host is factored from tabulated
//! seed tuples (or a shipped special case), the complete graph on the
//! columns splits into Hamilton cycles plus a reserved circulant, each
//! blown-up Hamilton cycle contributes four more factors, and the union is
//! re-verified before a certificate leaves the library.
//!
//! With the default `parallel` feature, verification and per-tuple assembly
//! fan out over rayon; disabling it yields a fully sequential build.

#![forbid(unsafe_code)]

pub mod cert;
pub mod digraph;
pub mod haggkvist;
pub mod hamdecomp;
pub mod path;
pub mod solver;
pub mod tuple_engine;
pub mod tuple_store;
pub mod util;
pub mod verify;

pub use cert::Certificate;
pub use digraph::{Arc, HostSpec, Row, Vertex};
pub use path::{DiCycle, DiPath, TwoFactor};
pub use solver::{SolveRequest, Solver};
pub use verify::{verify_factorization, verify_two_factor, VerifyOutcome};

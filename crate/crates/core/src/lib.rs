//! Exact norm-principle calculus for simply-laced simple algebraic groups.
//!
//! Starting from the center character group of `G₁`, the crate computes the
//! sets `X(φ)` and `Ω(φ)` attached to an exact sequence
//! `1 → G₁ → G → G_m → 1`. It then checks degree-map divisibility
//! statements by exhaustive case analysis over a finite model of field
//! extensions.

pub mod abgroup;
pub mod error;

pub use abgroup::{AbHom, Element, FinAbGroup, Subset};
pub use error::{Error, Result};
pub mod rootdata;

pub use rootdata::{DiagramAut, Kind, RootSystem, VertexSet};
pub mod galois;
pub mod titsalg;

pub use galois::GaloisAction;
pub use titsalg::{beta_eval, tits_table, BrauerContext, SplitnessPattern, TitsAlgebraTable};
pub mod normprinciple;
pub mod verifier;
pub use normprinciple::{is_f_special, omega, x_phi, Cocharacter, Omega, Scenario, ScenarioKind, TitsIndex};
pub use verifier::{verify_all, verify_corollary, Corollary, FieldState, Report, Verdict, Verifier};

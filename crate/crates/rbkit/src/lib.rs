//! Rook-Brauer diagram algebra toolkit.
//!
//! The rook-Brauer algebra RB_k(x) is spanned by partial matchings of 2k
//! vertices arranged in two rows of k. Multiplication stacks two diagrams,
//! traces the middle row, and scales by x per closed middle loop. This crate
//! provides:
//!
//! - exact diagram arithmetic with big-integer polynomial coefficients
//!   ([`diagrams`], [`algebra`]),
//! - a checker for the defining presentation by generators s_i, t_i, p_i
//!   ([`algebra::check_presentation`]),
//! - the representation on tensor space V^⊗k with dim V = n+1 at x = n+1,
//!   with exact homomorphism/faithfulness checks and numeric commutation
//!   tests against sampled orthogonal matrices ([`schur_weyl`]),
//! - partition/path combinatorics for the associated branching graph and the
//!   insertion bijection from diagrams to same-shape path pairs
//!   ([`combinatorics`]),
//! - hook-content dimension polynomials and explicit seminormal matrices for
//!   the irreducible modules, with relation/restriction/completeness
//!   verification ([`seminormal`]),
//! - plain-text and SVG rendering of diagrams ([`render`]).

pub mod algebra;
pub mod combinatorics;
pub mod diagrams;
pub mod linalg;
pub mod render;
pub mod schur_weyl;
pub mod seminormal;

mod error;

pub use error::RbError;

use serde::Serialize;

/// Outcome of one verification: what was claimed, with which parameters,
/// and how close the computation came. Exact checks report a residual of
/// zero; rank checks report the rank instead.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub claim: String,
    pub params: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub pass: bool,
}

impl std::fmt::Display for CheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{}] {}",
            if self.pass { "pass" } else { "FAIL" },
            self.claim
        )?;
        if let Some(r) = self.residual {
            write!(f, " (residual {r:.3e})")?;
        }
        if let Some(r) = self.rank {
            write!(f, " (rank {r})")?;
        }
        Ok(())
    }
}

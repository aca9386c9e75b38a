//! Soft-edge statistics of sample covariance matrices.
//!
//! The crate has three layers:
//!
//! * exact combinatorics: Dyck paths classified by odd up-steps and returns
//!   to zero, Narayana and Catalan numbers, and the identities relating them
//!   ([`combinatorics`]);
//! * analytic references: the Marchenko-Pastur law with moments computed by
//!   two independent routes ([`mp_law`]) and the Tracy-Widom distributions
//!   F1/F2 obtained from the Hastings-McLeod solution of Painleve II
//!   ([`special_functions`]);
//! * a seeded Monte Carlo harness ([`experiments`]) built on a from-scratch
//!   symmetric/Hermitian eigensolver ([`linalg`]), reproducible matrix
//!   ensembles ([`ensembles`]) and the soft-edge rescalings ([`rescaling`]).
//!
//! Every experiment is a pure function of its configuration and a 64-bit
//! master seed; replications may run on any number of threads without
//! changing a single output bit.

pub mod combinatorics;
pub mod ensembles;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod mp_law;
pub mod rescaling;
pub mod rng;
pub mod special_functions;

pub(crate) mod quad;

pub use error::{Error, Result};

//! Spectra of Cayley graphs of the generalized quaternion groups
//! `Q_{4m} = <x, y | x^{2m} = 1, x^m = y^2, y^{-1} x y = x^{-1}>`.
//!
//! The crate computes exact representation-theoretic spectra of Cayley
//! graphs `X(S)`, decides the Ramanujan property, determines how many
//! elements can be removed from `Q_{4m} \ {1}` while every Cayley graph at
//! that covalency stays Ramanujan, and classifies the primes for which that
//! bound exceeds the trivial one through 54 quadratic prime families.
//!
//! Module map:
//!
//! * [`group`]: arithmetic in `Q_{4m}`, conjugacy classes, generation test.
//! * [`subset`]: structural symmetric subsets, profiles, enumeration and the
//!   extremal window subsets.
//! * [`spectra`]: eigenvalues from the character table, Ramanujan verdicts.
//! * [`oracle`]: dense adjacency matrices and a Jacobi eigensolver used as an
//!   independent check of [`spectra`].
//! * [`bounds`]: covalency bounds, extremal `|mu_2|` analysis, the closed-form
//!   exceptional-prime test and the interpolation function.
//! * [`families`]: the quadratic families `f_{r,c}`, thresholds, prime scans
//!   and Hardy-Littlewood constants.
//! * [`primes`]: deterministic primality, Legendre symbols, sieving.
//! * [`dd`]: double-double arithmetic for near-tie re-evaluation.
//! * [`exec`]: sequential / rayon execution switch.

pub mod bounds;
pub mod dd;
mod error;
pub mod exec;
pub mod families;
pub mod fixture;
pub mod group;
pub mod oracle;
pub mod primes;
pub mod spectra;
pub mod subset;

pub use error::{Error, Result};
pub use exec::Execution;
pub use group::{Element, QuaternionGroup};
pub use subset::{CayleySubset, CovalencyProfile, Family, SigmaCounts};

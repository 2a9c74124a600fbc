//! Exact symbolic kernel for the associative conformal algebras `Cend_N`,
//! their subalgebras `Cend_{N,P}`, and the Lie conformal algebra `gc_N`
//! together with the orthogonal/symplectic families `oc_{N,P}`, `spc_{N,P}`.
//!
//! Elements of `Cend_N` are handled through their *symbol*: an `N x N` matrix
//! of polynomials in `∂` and `x`. All products become polynomial
//! substitutions, so everything here is exact arithmetic over `ℚ`.
//!
//! Layout:
//! * [`poly`]: rationals, sparse polynomials over `{∂, x, λ, μ}`, dense
//!   univariate polynomials, gcds and the text grammar.
//! * [`polymat`]: matrices over `ℚ[x]`: determinants, Smith and Hermite
//!   forms with certificates, the `*` involution and congruence tools.
//! * [`cend`]: symbols, λ-products, brackets, module actions,
//!   automorphisms, anti-involutions and axiom verifiers.
//! * [`structure`]: ideals, isomorphism and anti-involution decisions,
//!   extension modules and the unital closure probe.
//! * [`cend1`]: subalgebra closure and classification in `Cend_1`.
//! * [`gclie`]: `oc`/`spc` generators, conformal bilinear forms,
//!   invariance and irreducibility probes.
//! * [`json`]: the JSON encodings shared with the command-line tool.

pub mod cend;
pub mod cend1;
pub mod error;
pub mod gclie;
pub mod json;
pub mod poly;
pub mod polymat;
pub mod structure;

pub use cend::{CendElem, LambdaSeries, ModSeries, ModVec};
pub use error::{CendError, Result};
pub use polymat::{PolyMat, SmithCert};
pub use poly::{MPoly, Rat, UPoly, Var};


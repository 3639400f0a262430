//! Exact symbolic kernel and verification suites for graded Hopf-Galois
//! extensions: strong connections in their four equivalent forms,
//! line-bundle projector matrices, module isomorphism and freeness
//! certificates, gauge actions, and the numeric pairing with the classical
//! first Chern class.
//!
//! ```
//! use hopfgal::connection::{galois_certificate, TranslationLift};
//! use hopfgal::ncpoly::parse_ncpoly;
//! use hopfgal::preset::super_s3;
//!
//! let preset = super_s3();
//! // The super determinant relation reduces to zero in normal form.
//! let rel = parse_ncpoly(&preset.pres.table, "a*d - b*c + l+*l- - 1").unwrap();
//! assert!(preset.pres.normal_form(&rel).is_zero());
//! // The translation lift certifies the Galois property on z^{+-1}.
//! let tau = TranslationLift::new(&preset);
//! let report = galois_certificate(&tau, &[1, -1]).unwrap();
//! assert!(report.pass);
//! ```

pub mod error;
pub mod scalar;
pub mod ncpoly;
pub mod rewrite;
pub mod tensor;
pub mod hopf;
pub mod preset;
pub mod report;
pub mod connection;
pub mod bundles;
pub mod chern;
pub mod suites;

pub use error::HgError;

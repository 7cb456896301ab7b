//! Indecomposable decompositions of `V_m ⊗ V_n` for a cyclic p-group acting by
//! full Jordan blocks, together with an explicit generator for every summand.
//!
//! The crate works in the diagonal basis `v_{i,j}`, where the tensor product
//! splits into graded pieces `D_k` and `g - 1` lowers the grade by one. The
//! production path computes the block structure from the non-vanishing of the
//! binomial determinants `det A_k mod p`, inverts `A_k` with a closed-form
//! adjugate and builds the generators from there. Every result can be audited
//! independently by [`verify::verify_all`], which realises the module in the
//! standard tensor basis and checks the claims by dense linear algebra.
//!
//! ```
//! use jordan_tensor::{build_generators, decompose, verify_all, Params};
//!
//! let params = Params::new(5, 6, 9).unwrap();
//! let dec = decompose(&params).unwrap();
//! assert_eq!(dec.lambda(), &[14, 10, 10, 10, 6, 4]);
//!
//! let gens = build_generators(&params).unwrap();
//! assert!(verify_all(&params, &dec, &gens).total_ok);
//! ```

pub mod decomp;
pub mod error;
pub mod exactnum;
pub mod gens;
pub mod gfp;
pub mod tensorspace;
pub mod verify;

pub use decomp::{
    decompose, lambda_from_endpoints, leading_endpoints, rank_profile_lambda, Block,
    Decomposition,
};
pub use error::{Error, Result};
pub use gens::{build_generators, GenCase, Generator, GeneratorSet, NyInverse};
pub use gfp::{FpElem, FpMatrix, PrimeField, Solution};
pub use tensorspace::{DiagIndex, DiagVector, Params};
pub use verify::{verify_all, FullVector, VerifyReport, DEFAULT_SIZE_GUARD};

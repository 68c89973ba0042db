//! Exact linear algebra over `Q` and `F_p` for conjugacy classes of `GL_n`.
//!
//! For a noncentral class `C`, `m(C)` is the least `m` such that some product
//! `C^{±1} ⋯ C^{±1}` of `m` factors contains the elementary transvections. The crate
//! classifies `m(C)`, builds verified witnesses `t_12(1) = ∏ (σ^{±1})^{ε_k}` with
//! `ε_k ∈ SL_n(K)`, and checks small cases against brute-force enumeration.

pub mod classify;
pub mod error;
pub mod field;
pub mod json;
pub mod matrix;
pub mod normal_forms;
pub mod oracle;
pub mod poly;
pub mod stable;
pub mod witness;

pub use classify::{classify, MReport, Sign, Verdict};
pub use error::{Error, Result};
pub use field::{FieldSpec, Scalar};
pub use matrix::Mat;
pub use poly::{Irreducibility, Poly};
pub use witness::{verify_witness, witness, Witness};

//! Exact composition algebras, Vinberg-type Lie algebras and Killing-form
//! analysis.

pub mod cd;
pub mod linalg;
pub mod rational;
pub mod atlas;
pub mod descriptor;
pub mod liealg;
pub mod metric;
pub mod tensor;
pub mod vinberg;

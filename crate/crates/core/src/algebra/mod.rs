//! Exact polynomial algebra used by the section analysis: fields, univariate
//! polynomials, factorization over Q and over number fields.

pub mod field;
pub mod trager;
pub mod upoly;
pub mod zfactor;

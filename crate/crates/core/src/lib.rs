pub mod exponents;
pub mod par;
pub mod tensors;
pub mod normest;
pub mod constructions;
pub mod experiments;

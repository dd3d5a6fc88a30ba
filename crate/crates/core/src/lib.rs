pub mod analysis;
pub mod constructions;
pub mod fqmatrix;
pub mod gf;
pub mod repair;

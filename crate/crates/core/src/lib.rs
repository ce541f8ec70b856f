pub mod dsl;
pub mod error;
pub mod harness;
pub mod numeric;
pub mod params;
pub mod qformal;
pub mod qtrig;
pub mod theta;

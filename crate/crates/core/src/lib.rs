#![allow(clippy::needless_range_loop)]

pub mod constructions;
pub mod exactnum;
pub mod exec;
pub mod feasibility;
pub mod scheme;
pub mod spectra;

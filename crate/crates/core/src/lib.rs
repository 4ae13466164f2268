//! Minimal free resolutions of modules over the Cox ring of a product of
//! projective spaces, and the search for multidegrees where truncations of
//! a module have linear resolutions.

pub mod cli;
pub mod demos;
pub mod error;
pub mod field;
pub mod groebner;
pub mod regions;
pub mod resolution;
pub mod ring;
pub mod truncation;

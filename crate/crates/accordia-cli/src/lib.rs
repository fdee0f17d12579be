//! Command-line machinery for the accordion-complex library: DOT and SVG
//! emitters and the exhaustive self-test driver.

pub mod dot;
pub mod selftest;
pub mod svg;

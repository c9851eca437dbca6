//! Command-line front end: argument handling, JSON reports and SVG figures
//! of the `(s, q)` plane.

pub mod app;
pub mod commands;
pub mod output;
pub mod scene;
pub mod svg;

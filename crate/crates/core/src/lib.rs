pub mod bench;
pub mod cases;
pub mod circle;
pub mod cli;
pub mod dbm;
pub mod dubins;
pub mod error;
pub mod geom;
pub mod instance;
pub mod quartic;
pub mod report;
pub mod svg;
pub mod tol;

pub mod engine;
pub mod gf2;
pub mod group;
pub mod rep;
pub mod weights;

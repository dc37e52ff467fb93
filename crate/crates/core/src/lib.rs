pub mod braid;
pub mod decomp;
pub mod hwspace;
pub mod lkb;
pub mod matrix;
pub mod par;
pub mod report;
pub mod ring;
pub mod solve;
pub mod verma;

mod cache;

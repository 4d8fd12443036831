#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod arith;
pub mod certify;
pub mod error;
pub mod graph;
pub mod lab;
pub mod linalg;
pub mod matrix;
pub mod poly;

pub use error::{Error, Result};

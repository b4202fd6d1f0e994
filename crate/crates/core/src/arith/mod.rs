//! Exact scalar arithmetic: rationals, cyclotomic numbers, and matrices over them.

pub mod cyclotomic;
pub mod matrix;
pub mod poly;
pub mod rational;

pub use cyclotomic::Cyc;
pub use rational::{q, qf, Rational};

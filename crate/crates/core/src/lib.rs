#![no_std]

extern crate alloc;

pub mod calculus;
pub mod countermodel;
pub mod gen;
pub mod prover;
pub mod relmodel;
pub mod syntax;
pub mod unigraph;

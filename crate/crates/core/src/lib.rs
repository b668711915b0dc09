//! GFSPX-64/128: reference cipher, reversible circuit synthesis, a
//! basis-state simulator and Grover key-search resource estimates.

pub mod cipher;
pub mod circuit;
pub mod grover;
pub mod published;
pub mod resources;
pub mod sim;
pub mod synth;
pub mod verify;

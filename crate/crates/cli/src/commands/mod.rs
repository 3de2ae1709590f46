pub mod algebra;
pub mod blackhole;
pub mod discrete;
pub mod eos;
pub mod occupation;
pub mod virial;

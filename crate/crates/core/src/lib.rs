pub mod numtheory;
pub mod curve;
pub mod reptheory;
pub mod galoislocal;
pub mod congruence;
pub mod parity;
pub mod alc;

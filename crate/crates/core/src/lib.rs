pub mod approx;
pub mod compress;
pub mod exactmat;
pub mod freealg;
pub mod rational;
pub mod sample;
pub mod stabilize;
pub mod witness;

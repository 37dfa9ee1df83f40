pub mod arith;
pub mod cli;
pub mod finmod;
pub mod finring;
pub mod groebner;
pub mod poly;
pub mod props;
pub mod symbolic;

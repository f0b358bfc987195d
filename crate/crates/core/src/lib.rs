pub mod difficulty;
pub mod error;
pub mod seed;
pub mod special;
pub mod vote;
pub mod records;
pub mod select;
pub mod report;
pub mod synth;
pub mod cli;

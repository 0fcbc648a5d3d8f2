pub mod cli;
pub mod config;
pub mod group;
pub mod hnf;
pub mod ideal;
pub mod matrix;
pub mod ring;
pub mod tadic;
pub mod theorems;

pub mod bench;
pub mod boss;
pub mod build;
pub mod bwt;
pub mod dump;
pub mod mutate;
pub mod query;

pub mod error;
pub mod exact;
pub mod families;
pub mod deltabases;
pub mod macwilliams;
pub mod bounds;
pub mod extremal;
pub mod report;
pub mod cli;

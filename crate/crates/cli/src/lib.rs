//! Batch front end for `corona-core`: instance files in, certified reports out.

pub mod commands;
pub mod files;

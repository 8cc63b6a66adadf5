//! Library side of the `factorum` command line tool: the report envelope,
//! the subcommands and the regression suite over the worked examples.

pub mod commands;
pub mod regression;
pub mod report;

//! Document formats and reports behind the `supercardy` command-line tool.

pub mod doc;
pub mod report;

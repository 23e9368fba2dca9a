//! Command-line tool and verification suites on top of `hwnorm-core`:
//! JSON/CSV serialization, numeric oracles (quadrature, log-Gamma), and the
//! `hwnorm` binary.

pub mod cli;
pub mod json;
pub mod oracle;

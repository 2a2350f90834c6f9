//! JSON front end for `hypstokes`: the input and output documents and the
//! subcommands of the `hypstokes` binary.
//!
//! Exit statuses of the binary: 0 on success, 1 when a verification check
//! fails or a quadrature does not converge, 2 for malformed input or an
//! impossible request, 3 when the arrangement is not in generic position.

pub mod commands;
pub mod wire;

pub use commands::{IntegralKind, IntegralRequest, Options, VerifyRequest};
pub use wire::{ArrangementSpec, CliError, ResultBundle};

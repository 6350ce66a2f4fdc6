//! Command implementations behind the `trimask` binary.
//!
//! Each command writes to caller-supplied streams and returns a process exit
//! code, so the binary stays a thin argument parser.

pub mod apply;
pub mod eval;
pub mod interactive;
pub mod web;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const INVALID_CHOICE: i32 = 2;
    pub const NO_IMAGES: i32 = 3;
    pub const RECORD_FAILED: i32 = 4;
    pub const UNPAIRED: i32 = 5;
}

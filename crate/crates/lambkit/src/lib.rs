//! File formats, reporting and the reproduction suite behind the `lambkit` binary.

pub mod claims;
pub mod dot;
pub mod hypfile;
pub mod json;

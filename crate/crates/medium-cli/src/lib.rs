//! JSON documents, reports and subcommands behind the `medium` binary.

pub mod document;
pub mod report;
pub mod run;

pub use document::{parse_tensor_document, DocumentError, Number, RawDocument, Tensor, TensorDocument};
pub use report::{CliError, Failure, Report};
pub use run::{classify_tensor, Flags, GenerateArgs};

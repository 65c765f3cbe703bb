pub mod bracket;
pub mod error;
pub mod linalg;
pub mod scalars;
pub mod span;
pub mod roots;
pub mod realizations;
pub mod quaternification;
pub mod relations;
pub mod report;
pub mod rho;
pub mod json;

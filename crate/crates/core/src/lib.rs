pub mod algebras;
pub mod graphs;
pub mod groups;
pub mod linalg;
pub mod pipeline;
pub mod structure;

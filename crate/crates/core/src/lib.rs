pub mod graph;
pub mod normal;
pub mod oracle;
pub mod rank;
pub mod surface;

pub mod constrained;
pub mod error;
pub mod format;
pub mod gen;
pub mod graph;
pub mod important;
pub mod linkage;
pub mod mincut;
pub mod oracle;
pub mod par;
pub mod sndp;
pub mod verify;

pub mod amalgamation;
pub mod classgen;
pub mod drawing;
pub mod error;
pub mod inflation;
pub mod oracle;
pub mod par;
pub mod perm;
pub mod splitting;
pub mod verify;

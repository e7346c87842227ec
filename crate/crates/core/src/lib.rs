pub mod cp1;
pub mod error;
pub mod exact;
pub mod flagspec;
pub mod fock;
#[cfg(any(test, feature = "oracles"))]
pub mod oracle;
pub mod par;
pub mod reps;
pub mod rootsys;
pub mod surface;

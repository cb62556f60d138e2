pub mod chartable;
pub mod exactnum;
pub mod invariants;
pub mod linsolve;
pub mod matgroup;
pub mod obstruction;
pub mod sympow;

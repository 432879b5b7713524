//! Exact determinants of symmetrization maps on tensor powers and of the
//! refined Gram matrices of their isotypic components.

pub mod combinat;
pub mod exact;
pub mod golden;
pub mod gram;
pub mod par;
pub mod refined;
pub mod symmetrizer;

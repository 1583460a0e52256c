//! Exact arithmetic for split metabelian groups `A ⋊ Z`: Laurent polynomials,
//! quadratic orders and their ideal classes, lower central series and the
//! classification of groups with the same nilpotent quotients.

pub mod class_group;
pub mod cyclotomic;
pub mod error;
pub mod ideal_lattice;
pub mod lattice;
pub mod laurent_poly;
pub mod metabelian;
pub mod para_class;
pub mod quad_order;
pub mod scalar;

pub use error::{Error, Result};

/// Default exact integer type.
pub type Int = num_bigint::BigInt;
pub type Poly = laurent_poly::LaurentPoly<Int>;
pub type GroupStructure = laurent_poly::AbelianGroupStructure<Int>;
pub type Matrix = lattice::IntMatrix<Int>;
pub type Ring = quad_order::MonogenicRing<Int>;
pub type Element = quad_order::RingElement<Int>;
pub type Ideal = ideal_lattice::IdealLattice<Int>;

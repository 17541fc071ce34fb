pub mod abelian;
pub mod exact_determinant;
pub mod group_cohomology;
pub mod number_field;
pub mod weil_cohomology;
pub mod zeta;

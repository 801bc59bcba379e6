//! Numerical kernels shared by the physics modules.

pub mod ode;
pub mod quadrature;

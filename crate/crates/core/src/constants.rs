//! Physical constants pinned for SI conversions (2019 SI exact values).

/// Planck constant, J·s.
pub const PLANCK_H: f64 = 6.626_070_15e-34;

/// Boltzmann constant, J/K.
pub const BOLTZMANN_K: f64 = 1.380_649e-23;

//! Ideal quantum gases whose statistics interpolate between Bose and Fermi.
//!
//! The interpolation is controlled by a single fermionic weight `δ ∈ [0, 1]`:
//! the squared amplitude of the particles' shared internal state on the
//! antisymmetric (−1) eigensector of the exchange operator. `δ = 0` recovers
//! bosons, `δ = 1` recovers fermions, and intermediate values give a gas whose
//! multiply-occupied configurations carry weight `1 − δ`.
//!
//! The crate has three layers:
//!
//! * [`exchange_algebra`] — an exact finite-dimensional realization of the
//!   operator algebra: sector-resolved symmetrizer, symmetrized states,
//!   ladder operators on a truncated occupation basis, and a brute-force
//!   grand-canonical trace used as an oracle for everything downstream.
//! * [`thermo_discrete`] — closed-form grand-canonical thermodynamics over an
//!   arbitrary discrete spectrum: partition function, occupations, the
//!   admissible chemical-potential domain, state functions, and μ inversion.
//! * [`thermo_continuum`] — the 3D continuum gas: Bose–Einstein integrals
//!   (series plus a quadrature oracle), equation of state with ground-state
//!   terms, fugacity solving, cluster/virial expansion and the
//!   attraction/repulsion regime classification.
//!
//! Everything works in reduced units (k = 1, energies in units of 1/β unless
//! stated); [`constants`] carries the CODATA values used by SI conversions.

pub mod constants;
pub mod exchange_algebra;
pub mod thermo_continuum;
pub mod thermo_discrete;

mod bracket;

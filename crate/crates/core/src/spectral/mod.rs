//! Grid, transforms and the Fourier-multiplier/commutator algebra.

mod field;
mod grid;
mod multiplier;
mod product;

pub use field::{to_spectral, SpectralField};
pub use grid::Grid;
pub use multiplier::{
    apply_multiplier, dx, dx_pow, dxx, hilbert, hilbert_symbol, lambda, lambda_pow, n_symbol,
    op_n, op_p, p_symbol, sgn,
};
pub use product::{commutator_dxx, commutator_h, dealiased_product, naive_convolution};

pub(crate) use multiplier::{abs_pow, lambda_pow_unchecked};
pub(crate) use product::{comm_dxx, comm_h, product};

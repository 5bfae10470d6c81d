//! Finite sections of `T(φ)`, `H(φ)`, `M(φ)`, `Φ(φ)`, `Ψ(φ)`.

mod formal_inverse;
mod sections;

pub use formal_inverse::{
    apply_formal_inverse, convolve, divide_one_plus_tinv, minus_inverse_series, x1_weight, FormalInverse,
    FormalInverseImage, X1Element,
};

pub use sections::{
    build_hankel_section, build_m_rect, build_m_section, build_phi_section, build_psi_section, build_section,
    build_toeplitz_section, j_basis_matrix, j_section, laurent_block, p_section, BasisNote, OperatorKind,
    OperatorSection,
};

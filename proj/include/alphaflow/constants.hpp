#pragma once

// Fixed tolerances used across the library and its verification suites.
// All values are relative unless noted.

namespace alphaflow::tol {

inline constexpr double fft_roundtrip = 1e-12;
inline constexpr double hermitian = 1e-13;
inline constexpr double form_symmetry = 1e-13;
inline constexpr double orthogonality = 1e-10;   // Hodge component pairwise orthogonality
inline constexpr double reconstruction = 1e-10;  // Hodge component sum vs input
inline constexpr double weak_divergence = 1e-10;
inline constexpr double normal_trace = 1e-10;
inline constexpr double projector_idempotence = 1e-12;
inline constexpr double eigen_residual = 1e-8;
inline constexpr double eigen_floor = 1e-12;     // eigenvalues admitted down to 1 - eigen_floor
inline constexpr double mass_orthonormality = 1e-10;
inline constexpr double vsb_nsb_agreement = 1e-12;
inline constexpr double stokes_weak_residual = 1e-10;
inline constexpr double robin_weak_residual = 1e-9;
inline constexpr double robin_contraction = 0.9;
inline constexpr double filter_residual = 1e-10;
inline constexpr double filter_spectral = 1e-12;
inline constexpr double skew_orthogonality = 1e-11;
inline constexpr double galerkin_residual = 1e-10;
inline constexpr double span_residual = 1e-8;    // fractional-power expansion warning threshold
inline constexpr double gd_flat = 1e-12;
inline constexpr double gd_curved = 1e-8;
inline constexpr double blowup_coefficient = 1e12;

}  // namespace alphaflow::tol

#pragma once

// ---------------------------------------------------------------------------
// Energy diagnostics: the quantities traced across solver iterations and the
// frequency-dominance classifier built on them.
//
//   dirichlet_energy     raw-degree gradient energy (the p = 2 Dirichlet form)
//   rayleigh_...._energy normalized spectral energy 1/2 <F, L~ F> / ||F||^2,
//                        bounded by rho(L~)/2; 0 on the kernel of L~
//   generalized_energy_epf   propagation-flexibility energy of an iterate
//   framelet_energy_efr      filtered spectral-domain energy of a framelet bank
// ---------------------------------------------------------------------------

#include "plufg/framelet.hpp"
#include "plufg/graph.hpp"
#include "plufg/plap.hpp"
#include "plufg/trace.hpp"

#include <vector>

namespace plufg {

/// Raw-degree Dirichlet energy: (1/2) sum over ordered pairs (i, j) of
/// ||(grad F)[i, j]||_2^2. Equals p_dirichlet_form(g, F, 2).
double dirichlet_energy(const Graph& g, const Matrix& F);

/// Normalized spectral energy (1/2) sum_c F_c^T L~ F_c / ||F||_F^2 with the
/// augmented normalized Laplacian. Zero exactly on span{D~^{1/2} 1}; at the
/// top eigenvector it reaches rho(L~)/2. Throws std::invalid_argument on a
/// zero matrix.
double rayleigh_normalized_energy(const Graph& g, const Matrix& F);

/// Propagation-flexibility energy of the iterate F_next given the source
/// term F0 and solver state (M, alpha evaluated at F_next):
///   < vec(F_next), 1/2 (vec(F_next) - vec(alpha D^{-1/2} M D^{-1/2} F_next))
///                  + vec(2 mu alpha . F0) >.
/// Computed channel-by-channel; no Kronecker products are formed.
double generalized_energy_epf(const Graph& g, const Matrix& F_next, const Matrix& F0,
                              const IterationState& state, double mu);

/// Filtered spectral energy of the framelet bank at F:
///   sum_k 1/2 Tr((W_k F)^T (W_k F) Omega)
///        - 1/2 Tr((W_k F)^T diag(theta_k) (W_k F) W_hat),
/// with one nonnegative per-node theta vector per bank entry. Omega and
/// W_hat must be symmetric (c x c); throws std::invalid_argument otherwise
/// or on shape mismatches. With theta == 1 and Omega == W_hat == I the sum
/// telescopes to zero by frame tightness.
double framelet_energy_efr(const FrameletSystem& sys, const Matrix& F,
                           const std::vector<Vector>& theta, const Matrix& W_hat,
                           const Matrix& Omega);

/// Classifies the terminal rayleigh value of a trace against rho = rho(L~):
/// LFD when it is within lfd_eps of 0, HFD when within hfd_eps of rho/2,
/// Indeterminate otherwise or when the trace has fewer than 10 records.
DynamicsVerdict classify_dynamics(const EnergyTrace& trace, double rho,
                                  double lfd_eps = 1e-3, double hfd_eps = 1e-3);

}  // namespace plufg

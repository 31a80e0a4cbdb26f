#pragma once

// ---------------------------------------------------------------------------
// The implicit p-Laplacian layer: fixed-point solver for
//
//   F* = argmin_F  S_p^phi(F) + mu ||F - Y||_F^2,
//
// where S_p^phi(F) = (1/2) sum_{i,j} w_ij^{p/2} phi'(a_i)/(p a_i^{p-1})
// generalizes the p-Dirichlet form through a penalty profile phi. The
// minimizer is reached by the diagonally-preconditioned iteration
//
//   F^{(k+1)} = alpha^{(k)} D^{-1/2} M^{(k)} D^{-1/2} F^{(k)} + beta^{(k)} Y,
//
// with raw degrees D, edge coefficients
//
//   M_ij = zeta_ij * w_ij * max(||(grad F)[i,j]||, eps)^{p-2},
//   zeta_ij = 1/2 [ phi'(a_i)/a_i^{p-1} + phi'(a_j)/a_j^{p-1} ],
//   a_i = max(node_gradient_pnorm(F, p)_i, eps),
//
// alpha_ii = 1 / (sum_j M_ij / d_ii + 2 mu) and beta = 2 mu alpha. Both zeta
// and M are evaluated at the current iterate.
// ---------------------------------------------------------------------------

#include "plufg/graph.hpp"
#include "plufg/trace.hpp"

#include <string>
#include <utility>
#include <vector>

namespace plufg {

enum class PhiKind { PowerP, Tikhonov, Identity, LogDiffusion, SoftAbs };

/// Penalty profile phi(xi) applied to node gradient norms. Each variant is
/// admissible only on the p-range for which zeta stays bounded:
///   PowerP        xi^p                          p >= 1 (zeta == p)
///   Tikhonov      xi^2                          p <= 2
///   Identity      xi                            p <= 1
///   LogDiffusion  r^2 log(1 + xi^2 / r^2)       p <= 2
///   SoftAbs       sqrt(xi^2 + eps^2) - eps      p <= 2
struct PhiVariant {
    PhiKind kind = PhiKind::PowerP;
    double param = 0.0;  // r for LogDiffusion, eps for SoftAbs; unused otherwise

    static PhiVariant power_p() { return {PhiKind::PowerP, 0.0}; }
    static PhiVariant tikhonov() { return {PhiKind::Tikhonov, 0.0}; }
    static PhiVariant identity() { return {PhiKind::Identity, 0.0}; }
    static PhiVariant log_diffusion(double r = 1.0) { return {PhiKind::LogDiffusion, r}; }
    static PhiVariant soft_abs(double eps = 1e-3) { return {PhiKind::SoftAbs, eps}; }
};

const char* phi_kind_name(PhiKind kind);
/// Parses "powerp" / "tikhonov" / "identity" / "logdiff" / "softabs".
PhiVariant parse_phi(const std::string& name);

/// (phi(xi), phi'(xi)). PowerP needs the exponent p; other variants ignore it.
std::pair<double, double> phi_eval(const PhiVariant& phi, double xi, double p);

/// True when the (phi, p) pair keeps zeta bounded (table above).
bool phi_admissible(const PhiVariant& phi, double p);

struct PLapConfig {
    double p = 2.0;
    double mu = 1.0;
    PhiVariant phi = PhiVariant::power_p();
    int max_iters = 50;
    double tol = 1e-6;
    double eps_grad = 1e-8;

    /// Throws std::invalid_argument on p < 1, mu <= 0, eps_grad <= 0,
    /// max_iters < 1, tol <= 0, or an inadmissible (phi, p) pair (the error
    /// cites the zeta boundedness requirement).
    void validate() const;
};

/// Solver state attached to a specific iterate F: the edge coefficients M
/// (aligned with CSR entries), the diagonal step sizes alpha, beta = 2 mu
/// alpha, and the iteration counter.
struct IterationState {
    Matrix F;
    std::vector<double> M;
    Vector alpha;
    Vector beta;
    int k = 0;
};

/// zeta_ij per CSR entry, evaluated at F. Symmetric across mirrored entries.
std::vector<double> zeta_values(const Graph& g, const Matrix& F, const PLapConfig& cfg);

/// M_ij per CSR entry, evaluated at F (p == 2 short-circuits the gradient
/// magnitude power to exactly 1).
std::vector<double> m_values(const Graph& g, const Matrix& F, const PLapConfig& cfg);

/// (alpha, beta) from edge coefficients: alpha_ii = 1/(sum_j M_ij/d_ii + 2mu),
/// beta = 2 mu alpha. beta <= 1 with equality iff row i of M vanishes.
std::pair<Vector, Vector> alpha_beta(const Graph& g, const std::vector<double>& M, double mu);

/// One fixed-point update. Returns the next iterate and the state (M, alpha,
/// beta) evaluated at the *input* F. Throws std::runtime_error naming the
/// first offending node if the update produces a non-finite value.
std::pair<Matrix, IterationState> iterate_step(const Graph& g, const Matrix& F, const Matrix& Y,
                                               const PLapConfig& cfg);

/// Generalized smoothness penalty S_p^phi(F).
double phi_regularizer(const Graph& g, const Matrix& F, const PLapConfig& cfg);

/// Plain p-Dirichlet form S_p(F) = (1/2p) sum_i a_i^p ... expressed through
/// the ordered-pair sum (1/2) sum_{i,j} ||grad F[i,j]||^p evaluated with the
/// same edge convention as the solver; equals phi_regularizer for PowerP.
double p_dirichlet_form(const Graph& g, const Matrix& F, double p);

/// S_p^phi(F) + mu ||F - Y||_F^2.
double objective(const Graph& g, const Matrix& F, const Matrix& Y, const PLapConfig& cfg);

/// Exact Euclidean gradient of the objective at F (smooth phi assumed):
/// row i equals (F_i - iterate_step(F)_i) / alpha_ii.
Matrix analytic_gradient(const Graph& g, const Matrix& F, const Matrix& Y,
                         const PLapConfig& cfg);

struct SolveResult {
    Matrix F;           // terminal iterate
    EnergyTrace trace;  // one record per iterate, k = 0 .. K
    int iterations = 0;
    bool converged = false;
};

/// Runs the fixed-point iteration from F0 (default: Y) until the relative
/// Frobenius change drops below cfg.tol or cfg.max_iters steps pass. The
/// trace holds every iterate's energies; objective increases beyond a 1e-9
/// relative slack are recorded in trace.descent_warnings, never thrown.
SolveResult solve_implicit(const Graph& g, const Matrix& Y, const PLapConfig& cfg,
                           const Matrix* F0 = nullptr);

}  // namespace plufg

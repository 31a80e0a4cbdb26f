#pragma once

// ---------------------------------------------------------------------------
// Quasi-framelet transforms on graphs.
//
// A scaling set {g_0, ..., g_R} with sum_r g_r(xi)^2 = 1 on [0, pi] induces a
// tight frame of node-space operators built from the augmented normalized
// Laplacian L~. With U diag(lambda) U^T = L~, dilation s > 1, and coarsest
// scale m (smallest nonneg integer with lambda_max / s^m <= pi), the bank is
//
//   W_{0,J}    = U g_0(Lambda / s^{m+J}) ... g_0(Lambda / s^m) U^T
//   W_{r,l}    = U g_r(Lambda / s^{m+l}) g_0(Lambda / s^{m+l-1}) ...
//                                        g_0(Lambda / s^m) U^T   (l >= 1)
//   W_{r,0}    = U g_r(Lambda / s^m) U^T
//
// indexed (0,J) first, then (r,l) for r = 1..R, l = 0..J. Tightness
// sum W^T W = I holds for any lambda by telescoping the partition of unity.
//
// Two evaluation modes: Exact (dense eigendecomposition, guarded to N <=
// 3000) and Chebyshev (each factor replaced by a cosine-collocation
// polynomial in L~, applied matrix-free).
// ---------------------------------------------------------------------------

#include "plufg/graph.hpp"

#include <functional>
#include <string>
#include <vector>

namespace plufg {

/// A partition-of-unity filter bank on [0, pi]: g_0 is the low-pass
/// (g_0(0) = 1, g_0(pi) = 0) and g_R the terminal high-pass (g_R(0) = 0,
/// g_R(pi) = 1).
struct ScalingSet {
    std::string name;
    std::vector<std::function<double(double)>> g;

    int R() const { return static_cast<int>(g.size()) - 1; }
};

/// The entropy pair g_0 = cos(xi/2), g_1 = sin(xi/2).
ScalingSet haar_scaling_set();

/// Checks sum_r g_r^2 = 1 on a 1024-point uniform grid over [0, pi] together
/// with the endpoint conditions on g_0 and g_R. Returns the maximum deviation
/// of the squared sum from 1; throws std::invalid_argument if that deviation
/// exceeds 1e-6 or an endpoint condition fails by more than 1e-6.
double validate_identity(const ScalingSet& set);

/// Smallest nonnegative integer m with lambda_max / s^m <= pi.
/// Requires lambda_max > 0 and s > 1.
int coarsest_scale(double lambda_max, double s);

/// Chebyshev approximation of f on [0, scale * pi], collocation flavor:
/// interpolates f at the degree+1 Chebyshev nodes mapped to the interval.
/// Returns degree + 1 coefficients c_j for sum_j c_j T_j(t), with the j = 0
/// term already halved (so f == 1 yields (1, 0, ..., 0)).
std::vector<double> chebyshev_coefficients(const std::function<double(double)>& f,
                                           int degree, double scale);

/// Evaluates a coefficient vector from chebyshev_coefficients at xi.
double chebyshev_evaluate(const std::vector<double>& coeffs, double xi, double scale);

class FrameletSystem {
  public:
    enum class Mode { Exact, Chebyshev };

    struct Index {
        int r = 0;      // filter index, 0 = low-pass chain
        int level = 0;  // dilation level l (fixed to J for r = 0)
    };

    /// Dense eigendecomposition construction. Throws std::invalid_argument
    /// when the graph exceeds 3000 nodes (use the Chebyshev mode instead),
    /// when s <= 1, or when J < 0.
    static FrameletSystem exact(const Graph& g, const ScalingSet& set, int J, double s);

    /// Matrix-free construction: every spectral factor becomes a Chebyshev
    /// polynomial in L~ of the given degree (>= 1, default 3). lambda_max is
    /// estimated by a deterministic power iteration.
    static FrameletSystem chebyshev(const Graph& g, const ScalingSet& set, int J, double s,
                                    int degree = 3);

    Mode mode() const { return mode_; }
    int levels() const { return J_; }
    double dilation() const { return s_; }
    int coarsest() const { return m_; }
    double lambda_max() const { return lambda_max_; }
    int degree() const { return degree_; }
    const ScalingSet& scaling_set() const { return set_; }
    const Graph& graph() const { return graph_; }

    /// Operator bank order: (0, J), then (r, l) for r = 1..R, l = 0..J.
    const std::vector<Index>& indices() const { return indices_; }
    std::size_t size() const { return indices_.size(); }

    /// Position of (r, level) in the bank; throws std::out_of_range with the
    /// offending pair named if it is not part of the system.
    std::size_t find_index(int r, int level) const;

    /// W_{r,l} F for bank position k.
    Matrix apply(std::size_t k, const Matrix& F) const;
    /// W_{r,l}^T F. The operators are symmetric polynomials in L~, so this
    /// equals apply() up to factor ordering; kept separate for clarity at
    /// call sites that mean the adjoint.
    Matrix apply_transpose(std::size_t k, const Matrix& F) const;

    /// All coefficient blocks W_{r,l} F in bank order.
    std::vector<Matrix> analyze(const Matrix& F) const;
    /// sum_k W_k^T C_k. Requires exactly one block per bank entry with
    /// matching shape; throws std::invalid_argument naming the missing or
    /// mismatched index otherwise.
    Matrix synthesize(const std::vector<Matrix>& coeffs) const;

    /// Scalar spectral response of bank entry k at eigenvalue xi (the
    /// product of its factors; in Chebyshev mode, of their approximants).
    double response(std::size_t k, double xi) const;

    /// Exact mode only: the eigenpairs of L~ the bank was built from.
    const Matrix& eigenvectors() const;
    const Vector& eigenvalues() const;

    /// Writes one CSV matrix per bank entry into `dir`, named
    /// coeff_r{r}_l{level}.csv, containing analyze(F)[k].
    void save_coefficients(const Matrix& F, const std::string& dir) const;

  private:
    FrameletSystem(const Graph& g, const ScalingSet& set, int J, double s);
    void build_factors();

    // Factor chain for bank entry k, outermost factor last: filter ids and
    // the scale *power* each is evaluated at (xi / s^{m + power}).
    struct Factor {
        int filter = 0;
        int power = 0;
        std::vector<double> cheb;  // Chebyshev mode: coefficients over [0, s^? pi]
    };

    Matrix apply_chain(std::size_t k, const Matrix& F, bool reversed) const;

    Graph graph_;
    ScalingSet set_;
    Mode mode_ = Mode::Exact;
    int J_ = 1;
    double s_ = 2.0;
    int m_ = 0;
    int degree_ = 0;
    double lambda_max_ = 0.0;
    std::vector<Index> indices_;
    std::vector<std::vector<Factor>> factors_;  // per bank entry

    // Exact mode caches.
    Matrix U_;
    Vector lam_;
    std::vector<Matrix> ops_;  // dense W_{r,l}
};

}  // namespace plufg

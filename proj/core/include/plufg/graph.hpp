#pragma once

// ---------------------------------------------------------------------------
// Weighted undirected graphs in CSR form, plus the first-order calculus the
// rest of the library is built on: degree vectors under both normalization
// conventions, edge-wise gradients, divergence, per-node gradient norms,
// label homophily, and the symmetric normalized operators.
//
// Two degree conventions coexist deliberately:
//   * raw degrees  d_ii = sum_j w_ij          — used by the gradient /
//     divergence / p-Laplacian calculus, so that discrete integration by
//     parts holds exactly;
//   * augmented degrees  d~_ii = d_ii + 1      — used by the normalized
//     adjacency/Laplacian that the framelet transform is built on, keeping
//     the spectrum inside [0, 2).
// ---------------------------------------------------------------------------

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace plufg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// One undirected edge of the input list. Duplicates (in either orientation)
/// are merged by summing weights at construction time.
struct Edge {
    int i = 0;
    int j = 0;
    double w = 1.0;
};

/// Immutable weighted undirected graph, stored as a symmetric CSR structure.
/// Every undirected edge {i, j} appears as the two directed entries (i, j)
/// and (j, i) with equal weight; neighbor lists are sorted ascending, and
/// `reverse_entry` maps each directed entry to its mirror, which lets the
/// edge-calculus routines walk antisymmetric edge fields in O(nnz).
class Graph {
  public:
    /// Empty placeholder; real graphs come from from_edges / read_edge_list.
    Graph() = default;

    /// Builds a graph on `n` nodes from an edge list.
    /// Throws std::invalid_argument on: out-of-range endpoints, self-loops,
    /// non-positive weights, or any node left with no neighbor (isolated
    /// nodes are rejected by name so the caller can fix the data).
    static Graph from_edges(int n, const std::vector<Edge>& edges);

    int num_nodes() const { return n_; }
    /// Number of undirected edges (half the CSR entry count).
    int num_edges() const { return static_cast<int>(col_.size() / 2); }
    /// Number of directed CSR entries (2x undirected edge count).
    int num_entries() const { return static_cast<int>(col_.size()); }

    const std::vector<int>& row_ptr() const { return row_; }
    const std::vector<int>& col_idx() const { return col_; }
    const std::vector<double>& weights() const { return w_; }
    /// Index of the mirrored directed entry (j, i) for entry e = (i, j).
    int reverse_entry(int e) const { return rev_[static_cast<std::size_t>(e)]; }

    /// Row index (source node) of directed entry e.
    int entry_row(int e) const { return erow_[static_cast<std::size_t>(e)]; }

    /// Raw weighted degrees d_ii = sum_j w_ij (strictly positive).
    const Vector& degrees_raw() const { return deg_raw_; }
    /// Augmented degrees d~_ii = d_ii + 1 (self-loop added).
    const Vector& degrees_aug() const { return deg_aug_; }

    /// y = A_hat x with A_hat = D~^{-1/2} (W + I) D~^{-1/2}, applied
    /// column-by-column without forming the dense operator.
    Matrix adjacency_normalized_apply(const Matrix& F) const;
    /// y = L~ x = (I - A_hat) x, matrix-free.
    Matrix laplacian_normalized_apply(const Matrix& F) const;

    /// Dense A_hat (for eigendecompositions at desk scale).
    Matrix adjacency_normalized_dense() const;
    /// Dense L~ = I - A_hat.
    Matrix laplacian_normalized_dense() const;

  private:
    int n_ = 0;
    std::vector<int> row_;     // size n + 1
    std::vector<int> col_;     // size nnz
    std::vector<double> w_;    // size nnz
    std::vector<int> rev_;     // size nnz
    std::vector<int> erow_;    // size nnz
    Vector deg_raw_;
    Vector deg_aug_;
};

/// Values attached to directed CSR entries: one row per entry (aligned with
/// Graph::col_idx ordering), one column per signal channel.
struct EdgeField {
    Matrix values;  // num_entries x channels

    int channels() const { return static_cast<int>(values.cols()); }
};

/// Edge-wise gradient under raw-degree normalization:
///   (grad F)[i, j] = sqrt(w_ij / d_jj) F_j - sqrt(w_ij / d_ii) F_i,
/// stored on every directed entry; antisymmetric by construction.
EdgeField graph_gradient(const Graph& g, const Matrix& F);

/// Divergence, the negative adjoint of the gradient:
///   div(h)(i) = sum_j sqrt(w_ij / d_ii) (h[i, j] - h[j, i]).
Matrix graph_divergence(const Graph& g, const EdgeField& h);

/// Per-node p-norm of the local gradient rows:
///   a_i = ( sum_j || (grad F)[i, j] ||_2^p )^{1/p},  p >= 1,
/// where the inner norm runs over channels.
Vector node_gradient_pnorm(const Graph& g, const Matrix& F, double p);
/// Same, reusing a precomputed gradient field.
Vector node_gradient_pnorm(const Graph& g, const EdgeField& grad, double p);

/// Mean over nodes of the fraction of a node's neighbors that share its
/// label: (1/N) * sum_v |{u ~ v : label(u) == label(v)}| / deg(v). Lies in
/// [0, 1]; equals 1 on uniformly labeled graphs and 0 when no edge joins
/// same-labeled nodes. Requires labels for all nodes (labels[v] >= 0) and at
/// least one neighbor per node (guaranteed by Graph construction).
double homophily_index(const Graph& g, const std::vector<int>& labels);

/// Largest eigenvalue of a symmetric operator, to absolute accuracy 1e-8.
double spectral_radius(const Matrix& sym);

/// Reads a tab-separated edge list ("i<TAB>j<TAB>w" per line, 0-based ids,
/// '#' starts a comment line) and builds the graph on `n` nodes. If n < 0 the
/// node count is inferred as max id + 1.
Graph read_edge_list(const std::string& path, int n = -1);

/// Writes the graph back out in the same format (each undirected edge once,
/// smaller endpoint first).
void write_edge_list(const Graph& g, const std::string& path);

}  // namespace plufg

#include "plufg/graph.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace plufg {

namespace {

std::string edge_str(int i, int j) {
    std::ostringstream os;
    os << "(" << i << ", " << j << ")";
    return os.str();
}

}  // namespace

Graph Graph::from_edges(int n, const std::vector<Edge>& edges) {
    if (n <= 0) {
        throw std::invalid_argument("graph needs a positive node count, got " +
                                    std::to_string(n));
    }

    // Merge duplicate undirected edges (either orientation) by weight sum.
    std::map<std::pair<int, int>, double> merged;
    for (const Edge& e : edges) {
        if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n) {
            throw std::invalid_argument("edge endpoint out of range: " + edge_str(e.i, e.j) +
                                        " with n = " + std::to_string(n));
        }
        if (e.i == e.j) {
            throw std::invalid_argument("self-loop not allowed at node " + std::to_string(e.i));
        }
        if (!(e.w > 0.0)) {
            throw std::invalid_argument("edge weight must be positive, got w = " +
                                        std::to_string(e.w) + " on " + edge_str(e.i, e.j));
        }
        const auto key = std::minmax(e.i, e.j);
        merged[{key.first, key.second}] += e.w;
    }

    Graph g;
    g.n_ = n;
    g.row_.assign(static_cast<std::size_t>(n) + 1, 0);

    for (const auto& [key, w] : merged) {
        (void)w;
        ++g.row_[static_cast<std::size_t>(key.first) + 1];
        ++g.row_[static_cast<std::size_t>(key.second) + 1];
    }
    for (int v = 0; v < n; ++v) {
        if (g.row_[static_cast<std::size_t>(v) + 1] == 0) {
            throw std::invalid_argument("isolated node " + std::to_string(v) +
                                        ": every node needs at least one neighbor");
        }
        g.row_[static_cast<std::size_t>(v) + 1] += g.row_[static_cast<std::size_t>(v)];
    }

    const std::size_t nnz = static_cast<std::size_t>(g.row_[static_cast<std::size_t>(n)]);
    g.col_.assign(nnz, 0);
    g.w_.assign(nnz, 0.0);
    g.erow_.assign(nnz, 0);

    // map iteration is ordered by (min, max); within a row, insertion below
    // therefore lands ascending for the "min" endpoint but not for "max" —
    // fill then sort each row by column to pin the neighbor order.
    std::vector<int> cursor(g.row_.begin(), g.row_.end() - 1);
    for (const auto& [key, w] : merged) {
        const auto [a, b] = key;
        int ca = cursor[static_cast<std::size_t>(a)]++;
        int cb = cursor[static_cast<std::size_t>(b)]++;
        g.col_[static_cast<std::size_t>(ca)] = b;
        g.w_[static_cast<std::size_t>(ca)] = w;
        g.col_[static_cast<std::size_t>(cb)] = a;
        g.w_[static_cast<std::size_t>(cb)] = w;
    }
    for (int v = 0; v < n; ++v) {
        const int lo = g.row_[static_cast<std::size_t>(v)];
        const int hi = g.row_[static_cast<std::size_t>(v) + 1];
        std::vector<std::pair<int, double>> nb;
        nb.reserve(static_cast<std::size_t>(hi - lo));
        for (int e = lo; e < hi; ++e) {
            nb.emplace_back(g.col_[static_cast<std::size_t>(e)], g.w_[static_cast<std::size_t>(e)]);
        }
        std::sort(nb.begin(), nb.end());
        for (int e = lo; e < hi; ++e) {
            g.col_[static_cast<std::size_t>(e)] = nb[static_cast<std::size_t>(e - lo)].first;
            g.w_[static_cast<std::size_t>(e)] = nb[static_cast<std::size_t>(e - lo)].second;
            g.erow_[static_cast<std::size_t>(e)] = v;
        }
    }

    // Mirror lookup via binary search in the (sorted) target row.
    g.rev_.assign(nnz, 0);
    for (int v = 0; v < n; ++v) {
        for (int e = g.row_[static_cast<std::size_t>(v)];
             e < g.row_[static_cast<std::size_t>(v) + 1]; ++e) {
            const int u = g.col_[static_cast<std::size_t>(e)];
            const auto lo = g.col_.begin() + g.row_[static_cast<std::size_t>(u)];
            const auto hi = g.col_.begin() + g.row_[static_cast<std::size_t>(u) + 1];
            const auto it = std::lower_bound(lo, hi, v);
            g.rev_[static_cast<std::size_t>(e)] = static_cast<int>(it - g.col_.begin());
        }
    }

    g.deg_raw_ = Vector::Zero(n);
    for (int v = 0; v < n; ++v) {
        double d = 0.0;
        for (int e = g.row_[static_cast<std::size_t>(v)];
             e < g.row_[static_cast<std::size_t>(v) + 1]; ++e) {
            d += g.w_[static_cast<std::size_t>(e)];
        }
        g.deg_raw_[v] = d;
    }
    g.deg_aug_ = g.deg_raw_.array() + 1.0;
    return g;
}

Matrix Graph::adjacency_normalized_apply(const Matrix& F) const {
    if (F.rows() != n_) {
        throw std::invalid_argument("signal has " + std::to_string(F.rows()) +
                                    " rows, graph has " + std::to_string(n_) + " nodes");
    }
    Matrix out(n_, F.cols());
    const Vector dinv_sqrt = deg_aug_.array().rsqrt();
    for (int v = 0; v < n_; ++v) {
        Eigen::RowVectorXd acc = F.row(v) / deg_aug_[v];  // the implicit self-loop
        for (int e = row_[static_cast<std::size_t>(v)];
             e < row_[static_cast<std::size_t>(v) + 1]; ++e) {
            const int u = col_[static_cast<std::size_t>(e)];
            acc += (w_[static_cast<std::size_t>(e)] * dinv_sqrt[v] * dinv_sqrt[u]) * F.row(u);
        }
        out.row(v) = acc;
    }
    return out;
}

Matrix Graph::laplacian_normalized_apply(const Matrix& F) const {
    return F - adjacency_normalized_apply(F);
}

Matrix Graph::adjacency_normalized_dense() const {
    Matrix A = Matrix::Zero(n_, n_);
    const Vector dinv_sqrt = deg_aug_.array().rsqrt();
    for (int v = 0; v < n_; ++v) {
        A(v, v) = 1.0 / deg_aug_[v];
        for (int e = row_[static_cast<std::size_t>(v)];
             e < row_[static_cast<std::size_t>(v) + 1]; ++e) {
            const int u = col_[static_cast<std::size_t>(e)];
            A(v, u) = w_[static_cast<std::size_t>(e)] * dinv_sqrt[v] * dinv_sqrt[u];
        }
    }
    return A;
}

Matrix Graph::laplacian_normalized_dense() const {
    return Matrix::Identity(n_, n_) - adjacency_normalized_dense();
}

EdgeField graph_gradient(const Graph& g, const Matrix& F) {
    if (F.rows() != g.num_nodes()) {
        throw std::invalid_argument("signal row count does not match node count");
    }
    const Vector& d = g.degrees_raw();
    const Vector dinv_sqrt = d.array().rsqrt();
    EdgeField out;
    out.values.resize(g.num_entries(), F.cols());
    for (int v = 0; v < g.num_nodes(); ++v) {
        for (int e = g.row_ptr()[static_cast<std::size_t>(v)];
             e < g.row_ptr()[static_cast<std::size_t>(v) + 1]; ++e) {
            const int u = g.col_idx()[static_cast<std::size_t>(e)];
            const double sw = std::sqrt(g.weights()[static_cast<std::size_t>(e)]);
            out.values.row(e) = sw * (dinv_sqrt[u] * F.row(u) - dinv_sqrt[v] * F.row(v));
        }
    }
    return out;
}

Matrix graph_divergence(const Graph& g, const EdgeField& h) {
    if (h.values.rows() != g.num_entries()) {
        throw std::invalid_argument("edge field has " + std::to_string(h.values.rows()) +
                                    " entries, graph has " + std::to_string(g.num_entries()));
    }
    Matrix out = Matrix::Zero(g.num_nodes(), h.values.cols());
    const Vector dinv_sqrt = g.degrees_raw().array().rsqrt();
    for (int v = 0; v < g.num_nodes(); ++v) {
        for (int e = g.row_ptr()[static_cast<std::size_t>(v)];
             e < g.row_ptr()[static_cast<std::size_t>(v) + 1]; ++e) {
            const double sw = std::sqrt(g.weights()[static_cast<std::size_t>(e)]);
            out.row(v) += (sw * dinv_sqrt[v]) *
                          (h.values.row(e) - h.values.row(g.reverse_entry(e)));
        }
    }
    return out;
}

Vector node_gradient_pnorm(const Graph& g, const EdgeField& grad, double p) {
    if (p < 1.0) {
        throw std::invalid_argument("gradient p-norm needs p >= 1, got " + std::to_string(p));
    }
    Vector out = Vector::Zero(g.num_nodes());
    for (int v = 0; v < g.num_nodes(); ++v) {
        double acc = 0.0;
        for (int e = g.row_ptr()[static_cast<std::size_t>(v)];
             e < g.row_ptr()[static_cast<std::size_t>(v) + 1]; ++e) {
            acc += std::pow(grad.values.row(e).norm(), p);
        }
        out[v] = std::pow(acc, 1.0 / p);
    }
    return out;
}

Vector node_gradient_pnorm(const Graph& g, const Matrix& F, double p) {
    return node_gradient_pnorm(g, graph_gradient(g, F), p);
}

double homophily_index(const Graph& g, const std::vector<int>& labels) {
    if (static_cast<int>(labels.size()) != g.num_nodes()) {
        throw std::invalid_argument("labels size " + std::to_string(labels.size()) +
                                    " does not match node count " +
                                    std::to_string(g.num_nodes()));
    }
    for (int v = 0; v < g.num_nodes(); ++v) {
        if (labels[static_cast<std::size_t>(v)] < 0) {
            throw std::invalid_argument("homophily needs every node labeled; node " +
                                        std::to_string(v) + " is unlabeled");
        }
    }
    double acc = 0.0;
    for (int v = 0; v < g.num_nodes(); ++v) {
        const int begin = g.row_ptr()[static_cast<std::size_t>(v)];
        const int end = g.row_ptr()[static_cast<std::size_t>(v) + 1];
        int same = 0;
        for (int e = begin; e < end; ++e) {
            const int u = g.col_idx()[static_cast<std::size_t>(e)];
            if (labels[static_cast<std::size_t>(v)] == labels[static_cast<std::size_t>(u)]) {
                ++same;
            }
        }
        acc += static_cast<double>(same) / static_cast<double>(end - begin);
    }
    return acc / static_cast<double>(g.num_nodes());
}

double spectral_radius(const Matrix& sym) {
    if (sym.rows() != sym.cols() || sym.rows() == 0) {
        throw std::invalid_argument("spectral_radius expects a nonempty square matrix");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    return es.eigenvalues().maxCoeff();
}

Graph read_edge_list(const std::string& path, int n) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open edge list: " + path);
    }
    std::vector<Edge> edges;
    int max_id = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        Edge e;
        if (!(ls >> e.i >> e.j)) {
            // Blank or comment-only line.
            std::istringstream probe(line);
            std::string tok;
            if (probe >> tok) {
                throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                            ": malformed edge line");
            }
            continue;
        }
        if (!(ls >> e.w)) e.w = 1.0;
        edges.push_back(e);
        max_id = std::max({max_id, e.i, e.j});
    }
    if (edges.empty()) {
        throw std::invalid_argument("edge list is empty: " + path);
    }
    if (n < 0) n = max_id + 1;
    return Graph::from_edges(n, edges);
}

void write_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write edge list: " + path);
    }
    out << std::setprecision(17);
    for (int v = 0; v < g.num_nodes(); ++v) {
        for (int e = g.row_ptr()[static_cast<std::size_t>(v)];
             e < g.row_ptr()[static_cast<std::size_t>(v) + 1]; ++e) {
            const int u = g.col_idx()[static_cast<std::size_t>(e)];
            if (u < v) continue;
            out << v << '\t' << u << '\t' << g.weights()[static_cast<std::size_t>(e)] << '\n';
        }
    }
}

}  // namespace plufg

#include "plufg/plap.hpp"

#include "plufg/energy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace plufg {

namespace {

constexpr double kDescentSlack = 1e-9;

std::string phi_pair_str(const PhiVariant& phi, double p) {
    std::ostringstream os;
    os << "phi variant '" << phi_kind_name(phi.kind) << "' with p = " << p;
    return os.str();
}

/// phi'(a) / a^{p-1} with `a` already floored away from zero.
double zeta_half_term(const PhiVariant& phi, double a, double p) {
    const double deriv = phi_eval(phi, a, p).second;
    return deriv / std::pow(a, p - 1.0);
}

}  // namespace

const char* phi_kind_name(PhiKind kind) {
    switch (kind) {
        case PhiKind::PowerP: return "powerp";
        case PhiKind::Tikhonov: return "tikhonov";
        case PhiKind::Identity: return "identity";
        case PhiKind::LogDiffusion: return "logdiff";
        case PhiKind::SoftAbs: return "softabs";
    }
    return "?";
}

PhiVariant parse_phi(const std::string& name) {
    if (name == "powerp") return PhiVariant::power_p();
    if (name == "tikhonov") return PhiVariant::tikhonov();
    if (name == "identity") return PhiVariant::identity();
    if (name == "logdiff") return PhiVariant::log_diffusion();
    if (name == "softabs") return PhiVariant::soft_abs();
    throw std::invalid_argument("unknown phi variant '" + name +
                                "' (expected powerp|tikhonov|identity|logdiff|softabs)");
}

std::pair<double, double> phi_eval(const PhiVariant& phi, double xi, double p) {
    switch (phi.kind) {
        case PhiKind::PowerP:
            return {std::pow(xi, p), p * std::pow(xi, p - 1.0)};
        case PhiKind::Tikhonov:
            return {xi * xi, 2.0 * xi};
        case PhiKind::Identity:
            return {xi, 1.0};
        case PhiKind::LogDiffusion: {
            const double r = phi.param;
            if (!(r > 0.0)) {
                throw std::invalid_argument("logdiff needs a positive bandwidth r");
            }
            const double q = xi * xi / (r * r);
            return {r * r * std::log1p(q), 2.0 * xi / (1.0 + q)};
        }
        case PhiKind::SoftAbs: {
            const double eps = phi.param;
            if (!(eps > 0.0)) {
                throw std::invalid_argument("softabs needs a positive smoothing eps");
            }
            const double root = std::sqrt(xi * xi + eps * eps);
            return {root - eps, xi / root};
        }
    }
    throw std::logic_error("unreachable phi kind");
}

bool phi_admissible(const PhiVariant& phi, double p) {
    switch (phi.kind) {
        case PhiKind::PowerP: return p >= 1.0;
        case PhiKind::Tikhonov: return p <= 2.0;
        case PhiKind::Identity: return p <= 1.0;
        case PhiKind::LogDiffusion: return p <= 2.0;
        case PhiKind::SoftAbs: return p <= 2.0;
    }
    return false;
}

void PLapConfig::validate() const {
    if (!(p >= 1.0)) {
        throw std::invalid_argument("p must satisfy p >= 1, got " + std::to_string(p));
    }
    if (!(mu > 0.0)) {
        throw std::invalid_argument("mu must be positive, got " + std::to_string(mu));
    }
    if (max_iters < 1) {
        throw std::invalid_argument("max_iters must be >= 1, got " + std::to_string(max_iters));
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("tol must be positive");
    }
    if (!(eps_grad > 0.0)) {
        throw std::invalid_argument("eps_grad must be positive");
    }
    if (phi.kind == PhiKind::LogDiffusion && !(phi.param > 0.0)) {
        throw std::invalid_argument("logdiff needs a positive bandwidth r");
    }
    if (phi.kind == PhiKind::SoftAbs && !(phi.param > 0.0)) {
        throw std::invalid_argument("softabs needs a positive smoothing eps");
    }
    if (!phi_admissible(phi, p)) {
        throw std::invalid_argument(
            phi_pair_str(phi, p) +
            " is inadmissible: zeta = (phi'(a)/a^{p-1} + ...)/2 must stay bounded as the "
            "gradient norm grows, which this pairing violates");
    }
}

std::vector<double> zeta_values(const Graph& g, const Matrix& F, const PLapConfig& cfg) {
    cfg.validate();
    const EdgeField grad = graph_gradient(g, F);
    Vector a = node_gradient_pnorm(g, grad, cfg.p);
    a = a.cwiseMax(cfg.eps_grad);
    Vector half(g.num_nodes());
    for (int v = 0; v < g.num_nodes(); ++v) {
        half[v] = zeta_half_term(cfg.phi, a[v], cfg.p);
    }
    std::vector<double> zeta(static_cast<std::size_t>(g.num_entries()));
    for (int e = 0; e < g.num_entries(); ++e) {
        const int i = g.entry_row(e);
        const int j = g.col_idx()[static_cast<std::size_t>(e)];
        zeta[static_cast<std::size_t>(e)] = 0.5 * (half[i] + half[j]);
    }
    return zeta;
}

std::vector<double> m_values(const Graph& g, const Matrix& F, const PLapConfig& cfg) {
    cfg.validate();
    const EdgeField grad = graph_gradient(g, F);
    Vector a = node_gradient_pnorm(g, grad, cfg.p);
    a = a.cwiseMax(cfg.eps_grad);
    Vector half(g.num_nodes());
    for (int v = 0; v < g.num_nodes(); ++v) {
        half[v] = zeta_half_term(cfg.phi, a[v], cfg.p);
    }
    std::vector<double> M(static_cast<std::size_t>(g.num_entries()));
    for (int e = 0; e < g.num_entries(); ++e) {
        const int i = g.entry_row(e);
        const int j = g.col_idx()[static_cast<std::size_t>(e)];
        const double zeta = 0.5 * (half[i] + half[j]);
        double power = 1.0;  // p == 2 short-circuits: magnitude^0 == 1 exactly
        if (cfg.p != 2.0) {
            const double mag = std::max(grad.values.row(e).norm(), cfg.eps_grad);
            power = std::pow(mag, cfg.p - 2.0);
        }
        M[static_cast<std::size_t>(e)] = zeta * g.weights()[static_cast<std::size_t>(e)] * power;
    }
    return M;
}

std::pair<Vector, Vector> alpha_beta(const Graph& g, const std::vector<double>& M, double mu) {
    if (static_cast<int>(M.size()) != g.num_entries()) {
        throw std::invalid_argument("edge coefficient vector does not match the CSR layout");
    }
    if (!(mu > 0.0)) {
        throw std::invalid_argument("mu must be positive");
    }
    Vector alpha(g.num_nodes());
    Vector beta(g.num_nodes());
    for (int v = 0; v < g.num_nodes(); ++v) {
        double row_sum = 0.0;
        for (int e = g.row_ptr()[static_cast<std::size_t>(v)];
             e < g.row_ptr()[static_cast<std::size_t>(v) + 1]; ++e) {
            row_sum += M[static_cast<std::size_t>(e)];
        }
        const double denom = row_sum / g.degrees_raw()[v] + 2.0 * mu;
        alpha[v] = 1.0 / denom;
        // Dividing directly keeps beta == 1 exact when the M row vanishes.
        beta[v] = 2.0 * mu / denom;
    }
    return {alpha, beta};
}

namespace {

IterationState make_state(const Graph& g, const Matrix& F, const PLapConfig& cfg, int k) {
    IterationState st;
    st.F = F;
    st.M = m_values(g, F, cfg);
    auto ab = alpha_beta(g, st.M, cfg.mu);
    st.alpha = std::move(ab.first);
    st.beta = std::move(ab.second);
    st.k = k;
    return st;
}

Matrix apply_step(const Graph& g, const IterationState& st, const Matrix& Y) {
    const Vector dinv_sqrt = g.degrees_raw().array().rsqrt();
    Matrix out(g.num_nodes(), Y.cols());
    for (int v = 0; v < g.num_nodes(); ++v) {
        Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(Y.cols());
        for (int e = g.row_ptr()[static_cast<std::size_t>(v)];
             e < g.row_ptr()[static_cast<std::size_t>(v) + 1]; ++e) {
            const int u = g.col_idx()[static_cast<std::size_t>(e)];
            acc += (st.M[static_cast<std::size_t>(e)] * dinv_sqrt[v] * dinv_sqrt[u]) *
                   st.F.row(u);
        }
        out.row(v) = st.alpha[v] * acc + st.beta[v] * Y.row(v);
    }
    if (!out.allFinite()) {
        for (int v = 0; v < out.rows(); ++v) {
            if (!out.row(v).allFinite()) {
                throw std::runtime_error("fixed-point step produced a non-finite value at node " +
                                         std::to_string(v) + " (iteration " +
                                         std::to_string(st.k) + ")");
            }
        }
    }
    return out;
}

}  // namespace

std::pair<Matrix, IterationState> iterate_step(const Graph& g, const Matrix& F, const Matrix& Y,
                                               const PLapConfig& cfg) {
    cfg.validate();
    if (F.rows() != g.num_nodes() || Y.rows() != g.num_nodes() || F.cols() != Y.cols()) {
        throw std::invalid_argument("iterate_step: F and Y must both be n x c");
    }
    IterationState st = make_state(g, F, cfg, 0);
    Matrix next = apply_step(g, st, Y);
    return {std::move(next), std::move(st)};
}

double phi_regularizer(const Graph& g, const Matrix& F, const PLapConfig& cfg) {
    cfg.validate();
    Vector a = node_gradient_pnorm(g, F, cfg.p);
    a = a.cwiseMax(cfg.eps_grad);
    double acc = 0.0;
    for (int v = 0; v < g.num_nodes(); ++v) {
        acc += phi_eval(cfg.phi, a[v], cfg.p).first;
    }
    return 0.5 * acc;
}

double p_dirichlet_form(const Graph& g, const Matrix& F, double p) {
    if (p < 1.0) {
        throw std::invalid_argument("p-Dirichlet form needs p >= 1");
    }
    const EdgeField grad = graph_gradient(g, F);
    double acc = 0.0;
    for (int e = 0; e < g.num_entries(); ++e) {
        acc += std::pow(grad.values.row(e).norm(), p);
    }
    return 0.5 * acc;
}

double objective(const Graph& g, const Matrix& F, const Matrix& Y, const PLapConfig& cfg) {
    return phi_regularizer(g, F, cfg) + cfg.mu * (F - Y).squaredNorm();
}

Matrix analytic_gradient(const Graph& g, const Matrix& F, const Matrix& Y,
                         const PLapConfig& cfg) {
    auto [next, st] = iterate_step(g, F, Y, cfg);
    Matrix grad = F - next;
    for (int v = 0; v < g.num_nodes(); ++v) {
        grad.row(v) /= st.alpha[v];
    }
    return grad;
}

namespace {

TraceRecord trace_record(const Graph& g, const Matrix& F, const Matrix& Y,
                         const IterationState& st, const PLapConfig& cfg, int k) {
    TraceRecord rec;
    rec.k = k;
    rec.regularizer = phi_regularizer(g, F, cfg);
    rec.fidelity = cfg.mu * (F - Y).squaredNorm();
    rec.objective = rec.regularizer + rec.fidelity;
    rec.dirichlet = dirichlet_energy(g, F);
    rec.epf = generalized_energy_epf(g, F, Y, st, cfg.mu);
    rec.rayleigh = F.squaredNorm() > 0.0 ? rayleigh_normalized_energy(g, F) : 0.0;
    return rec;
}

}  // namespace

SolveResult solve_implicit(const Graph& g, const Matrix& Y, const PLapConfig& cfg,
                           const Matrix* F0) {
    cfg.validate();
    if (Y.rows() != g.num_nodes()) {
        throw std::invalid_argument("source term has " + std::to_string(Y.rows()) +
                                    " rows, graph has " + std::to_string(g.num_nodes()));
    }
    if (F0 != nullptr && (F0->rows() != Y.rows() || F0->cols() != Y.cols())) {
        throw std::invalid_argument("start iterate must match the source term's shape");
    }

    SolveResult res;
    Matrix F = (F0 != nullptr) ? *F0 : Y;
    for (int k = 0; k < cfg.max_iters; ++k) {
        IterationState st = make_state(g, F, cfg, k);
        res.trace.records.push_back(trace_record(g, F, Y, st, cfg, k));
        Matrix next = apply_step(g, st, Y);
        const double denom = std::max(F.norm(), 1e-30);
        const double rel = (next - F).norm() / denom;
        F = std::move(next);
        res.iterations = k + 1;
        if (rel <= cfg.tol) {
            res.converged = true;
            break;
        }
    }
    {
        IterationState st = make_state(g, F, cfg, res.iterations);
        res.trace.records.push_back(trace_record(g, F, Y, st, cfg, res.iterations));
    }
    for (std::size_t i = 1; i < res.trace.records.size(); ++i) {
        const double prev = res.trace.records[i - 1].objective;
        if (res.trace.records[i].objective > prev + kDescentSlack * (1.0 + std::abs(prev))) {
            res.trace.descent_warnings.push_back(res.trace.records[i].k);
        }
    }
    res.F = std::move(F);
    return res;
}

}  // namespace plufg

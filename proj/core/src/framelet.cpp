#include "plufg/framelet.hpp"

#include "plufg/rng.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace plufg {

namespace {

constexpr double kPi = std::numbers::pi;

std::string index_str(int r, int level) {
    std::ostringstream os;
    os << "(r=" << r << ", l=" << level << ")";
    return os.str();
}

}  // namespace

ScalingSet haar_scaling_set() {
    ScalingSet set;
    set.name = "haar";
    set.g.push_back([](double xi) { return std::cos(xi / 2.0); });
    set.g.push_back([](double xi) { return std::sin(xi / 2.0); });
    return set;
}

double validate_identity(const ScalingSet& set) {
    if (set.g.size() < 2) {
        throw std::invalid_argument("scaling set needs at least two filters");
    }
    constexpr int kGrid = 1024;
    double worst = 0.0;
    for (int k = 0; k < kGrid; ++k) {
        const double xi = kPi * static_cast<double>(k) / (kGrid - 1);
        double sq = 0.0;
        for (const auto& g : set.g) {
            const double v = g(xi);
            sq += v * v;
        }
        worst = std::max(worst, std::abs(sq - 1.0));
    }
    if (worst > 1e-6) {
        std::ostringstream os;
        os << "scaling set '" << set.name << "' violates the partition of unity: max |sum g^2 - 1| = "
           << worst;
        throw std::invalid_argument(os.str());
    }
    const double g00 = set.g.front()(0.0);
    const double g0pi = set.g.front()(kPi);
    const double gR0 = set.g.back()(0.0);
    const double gRpi = set.g.back()(kPi);
    if (std::abs(g00 - 1.0) > 1e-6 || std::abs(g0pi) > 1e-6) {
        throw std::invalid_argument("scaling set '" + set.name +
                                    "' fails the low-pass endpoint conditions g_0(0)=1, g_0(pi)=0");
    }
    if (std::abs(gR0) > 1e-6 || std::abs(gRpi - 1.0) > 1e-6) {
        throw std::invalid_argument("scaling set '" + set.name +
                                    "' fails the high-pass endpoint conditions g_R(0)=0, g_R(pi)=1");
    }
    return worst;
}

int coarsest_scale(double lambda_max, double s) {
    if (!(lambda_max > 0.0)) {
        throw std::invalid_argument("coarsest_scale needs lambda_max > 0");
    }
    if (!(s > 1.0)) {
        throw std::invalid_argument("dilation must satisfy s > 1, got " + std::to_string(s));
    }
    int m = 0;
    double scaled = lambda_max;
    while (scaled > kPi) {
        scaled /= s;
        ++m;
    }
    return m;
}

std::vector<double> chebyshev_coefficients(const std::function<double(double)>& f, int degree,
                                           double scale) {
    if (degree < 1) {
        throw std::invalid_argument("Chebyshev degree must be >= 1, got " +
                                    std::to_string(degree));
    }
    if (!(scale > 0.0)) {
        throw std::invalid_argument("Chebyshev domain scale must be positive");
    }
    const int K = degree + 1;
    const double half = scale * kPi / 2.0;
    std::vector<double> fx(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        const double t = std::cos(kPi * (k + 0.5) / K);
        fx[static_cast<std::size_t>(k)] = f(half * (t + 1.0));
    }
    std::vector<double> c(static_cast<std::size_t>(K), 0.0);
    for (int j = 0; j < K; ++j) {
        double acc = 0.0;
        for (int k = 0; k < K; ++k) {
            acc += fx[static_cast<std::size_t>(k)] * std::cos(kPi * j * (k + 0.5) / K);
        }
        c[static_cast<std::size_t>(j)] = 2.0 * acc / K;
    }
    c[0] /= 2.0;
    return c;
}

double chebyshev_evaluate(const std::vector<double>& coeffs, double xi, double scale) {
    if (coeffs.empty()) {
        throw std::invalid_argument("empty Chebyshev coefficient vector");
    }
    const double half = scale * kPi / 2.0;
    const double t = xi / half - 1.0;
    double tkm1 = 1.0;
    double tk = t;
    double acc = coeffs[0];
    if (coeffs.size() > 1) acc += coeffs[1] * t;
    for (std::size_t j = 2; j < coeffs.size(); ++j) {
        const double tnext = 2.0 * t * tk - tkm1;
        acc += coeffs[j] * tnext;
        tkm1 = tk;
        tk = tnext;
    }
    return acc;
}

FrameletSystem::FrameletSystem(const Graph& g, const ScalingSet& set, int J, double s)
    : graph_(g), set_(set), J_(J), s_(s) {
    if (J < 0) {
        throw std::invalid_argument("framelet level count J must be >= 0, got " +
                                    std::to_string(J));
    }
    if (!(s > 1.0)) {
        throw std::invalid_argument("dilation must satisfy s > 1, got " + std::to_string(s));
    }
    validate_identity(set);
    indices_.push_back({0, J});
    for (int r = 1; r <= set.R(); ++r) {
        for (int l = 0; l <= J; ++l) {
            indices_.push_back({r, l});
        }
    }
}

FrameletSystem FrameletSystem::exact(const Graph& g, const ScalingSet& set, int J, double s) {
    if (g.num_nodes() > 3000) {
        throw std::invalid_argument(
            "exact framelet systems are limited to 3000 nodes (got " +
            std::to_string(g.num_nodes()) + "); use the Chebyshev mode for larger graphs");
    }
    FrameletSystem sys(g, set, J, s);
    sys.mode_ = Mode::Exact;

    Eigen::SelfAdjointEigenSolver<Matrix> es(g.laplacian_normalized_dense());
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition of the normalized Laplacian failed");
    }
    sys.U_ = es.eigenvectors();
    sys.lam_ = es.eigenvalues();
    sys.lambda_max_ = sys.lam_.maxCoeff();
    sys.m_ = coarsest_scale(std::max(sys.lambda_max_, 1e-12), s);
    sys.build_factors();
    return sys;
}

FrameletSystem FrameletSystem::chebyshev(const Graph& g, const ScalingSet& set, int J, double s,
                                         int degree) {
    if (degree < 1) {
        throw std::invalid_argument("Chebyshev degree must be >= 1, got " +
                                    std::to_string(degree));
    }
    FrameletSystem sys(g, set, J, s);
    sys.mode_ = Mode::Chebyshev;
    sys.degree_ = degree;

    // Deterministic power iteration; only the coarsest-scale threshold
    // consumes this, and the augmented spectrum is always below 2 < pi.
    Rng rng(0x9e3779b97f4a7c15ULL);
    Vector v(g.num_nodes());
    for (int i = 0; i < g.num_nodes(); ++i) v[i] = rng.normal();
    v.normalize();
    double ray = 0.0;
    for (int it = 0; it < 300; ++it) {
        Vector w = g.laplacian_normalized_apply(v);
        const double nw = w.norm();
        if (nw == 0.0) break;
        ray = v.dot(w);
        v = w / nw;
    }
    sys.lambda_max_ = std::min(1.01 * std::max(ray, 1e-12), 2.0);
    sys.m_ = coarsest_scale(sys.lambda_max_, s);
    sys.build_factors();
    return sys;
}

void FrameletSystem::build_factors() {
    factors_.clear();
    factors_.resize(indices_.size());
    for (std::size_t k = 0; k < indices_.size(); ++k) {
        const Index idx = indices_[k];
        std::vector<Factor>& chain = factors_[k];
        if (idx.r == 0) {
            for (int power = 0; power <= J_; ++power) {
                chain.push_back({0, power, {}});
            }
        } else {
            for (int power = 0; power < idx.level; ++power) {
                chain.push_back({0, power, {}});
            }
            chain.push_back({idx.r, idx.level, {}});
        }
        if (mode_ == Mode::Chebyshev) {
            for (Factor& f : chain) {
                const double scale = std::pow(s_, m_ + f.power);
                const auto& g = set_.g[static_cast<std::size_t>(f.filter)];
                f.cheb = chebyshev_coefficients(
                    [&g, scale](double xi) { return g(xi / scale); }, degree_, scale);
            }
        }
    }
}

std::size_t FrameletSystem::find_index(int r, int level) const {
    for (std::size_t k = 0; k < indices_.size(); ++k) {
        if (indices_[k].r == r && indices_[k].level == level) return k;
    }
    throw std::out_of_range("no framelet bank entry " + index_str(r, level));
}

double FrameletSystem::response(std::size_t k, double xi) const {
    if (k >= factors_.size()) {
        throw std::out_of_range("bank position " + std::to_string(k) + " out of range");
    }
    double acc = 1.0;
    for (const Factor& f : factors_[k]) {
        const double scale = std::pow(s_, m_ + f.power);
        if (mode_ == Mode::Exact) {
            acc *= set_.g[static_cast<std::size_t>(f.filter)](xi / scale);
        } else {
            acc *= chebyshev_evaluate(f.cheb, xi, scale);
        }
    }
    return acc;
}

Matrix FrameletSystem::apply_chain(std::size_t k, const Matrix& F, bool reversed) const {
    if (k >= factors_.size()) {
        throw std::out_of_range("bank position " + std::to_string(k) + " out of range");
    }
    if (F.rows() != graph_.num_nodes()) {
        throw std::invalid_argument("signal has " + std::to_string(F.rows()) +
                                    " rows, graph has " + std::to_string(graph_.num_nodes()) +
                                    " nodes");
    }
    if (mode_ == Mode::Exact) {
        // One spectral multiply with the full product response.
        Vector resp(lam_.size());
        for (Eigen::Index i = 0; i < lam_.size(); ++i) {
            resp[i] = response(k, lam_[i]);
        }
        return U_ * (resp.asDiagonal() * (U_.transpose() * F));
    }
    Matrix cur = F;
    const auto& chain = factors_[k];
    const std::size_t nf = chain.size();
    for (std::size_t step = 0; step < nf; ++step) {
        const Factor& f = chain[reversed ? nf - 1 - step : step];
        const double scale = std::pow(s_, m_ + f.power);
        const double inv_half = 2.0 / (scale * kPi);
        // Clenshaw-free forward recurrence: T_0 = cur, T_1 = t(L~) cur, ...
        Matrix t0 = cur;
        Matrix t1 = inv_half * graph_.laplacian_normalized_apply(cur) - cur;
        Matrix acc = f.cheb[0] * t0;
        if (f.cheb.size() > 1) acc += f.cheb[1] * t1;
        for (std::size_t j = 2; j < f.cheb.size(); ++j) {
            Matrix t2 = 2.0 * (inv_half * graph_.laplacian_normalized_apply(t1) - t1) - t0;
            acc += f.cheb[j] * t2;
            t0.swap(t1);
            t1.swap(t2);
        }
        cur = std::move(acc);
    }
    return cur;
}

Matrix FrameletSystem::apply(std::size_t k, const Matrix& F) const {
    return apply_chain(k, F, /*reversed=*/false);
}

Matrix FrameletSystem::apply_transpose(std::size_t k, const Matrix& F) const {
    return apply_chain(k, F, /*reversed=*/true);
}

std::vector<Matrix> FrameletSystem::analyze(const Matrix& F) const {
    std::vector<Matrix> out;
    out.reserve(indices_.size());
    for (std::size_t k = 0; k < indices_.size(); ++k) {
        out.push_back(apply(k, F));
    }
    return out;
}

Matrix FrameletSystem::synthesize(const std::vector<Matrix>& coeffs) const {
    if (coeffs.size() != indices_.size()) {
        const std::size_t pos = std::min(coeffs.size(), indices_.size() - 1);
        throw std::invalid_argument(
            "synthesis needs one coefficient block per bank entry (" +
            std::to_string(indices_.size()) + "), got " + std::to_string(coeffs.size()) +
            "; first absent entry " + index_str(indices_[pos].r, indices_[pos].level));
    }
    Matrix acc;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k].rows() != graph_.num_nodes()) {
            throw std::invalid_argument("coefficient block " +
                                        index_str(indices_[k].r, indices_[k].level) +
                                        " has wrong row count");
        }
        if (k > 0 && coeffs[k].cols() != acc.cols()) {
            throw std::invalid_argument("coefficient block " +
                                        index_str(indices_[k].r, indices_[k].level) +
                                        " has inconsistent channel count");
        }
        Matrix part = apply_transpose(k, coeffs[k]);
        if (k == 0) {
            acc = std::move(part);
        } else {
            acc += part;
        }
    }
    return acc;
}

const Matrix& FrameletSystem::eigenvectors() const {
    if (mode_ != Mode::Exact) {
        throw std::logic_error("eigenvectors are only available in exact mode");
    }
    return U_;
}

const Vector& FrameletSystem::eigenvalues() const {
    if (mode_ != Mode::Exact) {
        throw std::logic_error("eigenvalues are only available in exact mode");
    }
    return lam_;
}

void FrameletSystem::save_coefficients(const Matrix& F, const std::string& dir) const {
    std::filesystem::create_directories(dir);
    const std::vector<Matrix> coeffs = analyze(F);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        std::ostringstream name;
        name << "coeff_r" << indices_[k].r << "_l" << indices_[k].level << ".csv";
        std::ofstream out(std::filesystem::path(dir) / name.str());
        if (!out) {
            throw std::runtime_error("cannot write coefficient file in " + dir);
        }
        out << std::setprecision(17);
        const Matrix& C = coeffs[k];
        for (Eigen::Index i = 0; i < C.rows(); ++i) {
            for (Eigen::Index j = 0; j < C.cols(); ++j) {
                if (j > 0) out << ',';
                out << C(i, j);
            }
            out << '\n';
        }
    }
}

}  // namespace plufg

#include "plufg/energy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace plufg {

const char* dynamics_tag_name(DynamicsTag tag) {
    switch (tag) {
        case DynamicsTag::LFD: return "LFD";
        case DynamicsTag::HFD: return "HFD";
        case DynamicsTag::Indeterminate: return "Indeterminate";
    }
    return "?";
}

double dirichlet_energy(const Graph& g, const Matrix& F) {
    return p_dirichlet_form(g, F, 2.0);
}

double rayleigh_normalized_energy(const Graph& g, const Matrix& F) {
    const double n2 = F.squaredNorm();
    if (!(n2 > 0.0)) {
        throw std::invalid_argument("normalized spectral energy is undefined for a zero signal");
    }
    const Matrix LF = g.laplacian_normalized_apply(F);
    const double quad = (F.array() * LF.array()).sum();
    return 0.5 * quad / n2;
}

double generalized_energy_epf(const Graph& g, const Matrix& F_next, const Matrix& F0,
                              const IterationState& state, double mu) {
    if (F_next.rows() != g.num_nodes() || F0.rows() != g.num_nodes() ||
        F_next.cols() != F0.cols()) {
        throw std::invalid_argument("epf: F_next and F0 must both be n x c");
    }
    if (static_cast<int>(state.M.size()) != g.num_entries() ||
        state.alpha.size() != g.num_nodes()) {
        throw std::invalid_argument("epf: solver state does not match the graph");
    }
    const Vector dinv_sqrt = g.degrees_raw().array().rsqrt();
    double acc = 0.0;
    for (int v = 0; v < g.num_nodes(); ++v) {
        Eigen::RowVectorXd prop = Eigen::RowVectorXd::Zero(F_next.cols());
        for (int e = g.row_ptr()[static_cast<std::size_t>(v)];
             e < g.row_ptr()[static_cast<std::size_t>(v) + 1]; ++e) {
            const int u = g.col_idx()[static_cast<std::size_t>(e)];
            prop += (state.M[static_cast<std::size_t>(e)] * dinv_sqrt[v] * dinv_sqrt[u]) *
                    F_next.row(u);
        }
        const Eigen::RowVectorXd inner =
            0.5 * (F_next.row(v) - state.alpha[v] * prop) +
            (2.0 * mu * state.alpha[v]) * F0.row(v);
        acc += F_next.row(v).dot(inner);
    }
    return acc;
}

namespace {

void require_symmetric(const Matrix& A, const char* name) {
    if (A.rows() != A.cols()) {
        throw std::invalid_argument(std::string(name) + " must be square");
    }
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument(std::string(name) + " must be symmetric");
    }
}

}  // namespace

double framelet_energy_efr(const FrameletSystem& sys, const Matrix& F,
                           const std::vector<Vector>& theta, const Matrix& W_hat,
                           const Matrix& Omega) {
    if (theta.size() != sys.size()) {
        throw std::invalid_argument("one theta vector per framelet bank entry required (" +
                                    std::to_string(sys.size()) + "), got " +
                                    std::to_string(theta.size()));
    }
    require_symmetric(W_hat, "W_hat");
    require_symmetric(Omega, "Omega");
    if (W_hat.rows() != F.cols() || Omega.rows() != F.cols()) {
        throw std::invalid_argument("W_hat and Omega must be c x c for a n x c signal");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k < sys.size(); ++k) {
        if (theta[k].size() != F.rows()) {
            const auto idx = sys.indices()[k];
            std::ostringstream os;
            os << "theta vector for bank entry (r=" << idx.r << ", l=" << idx.level
               << ") has length " << theta[k].size() << ", expected " << F.rows();
            throw std::invalid_argument(os.str());
        }
        const Matrix C = sys.apply(k, F);
        // 1/2 Tr(C^T C Omega) - 1/2 Tr(C^T diag(theta) C W_hat)
        acc += 0.5 * (C.array() * (C * Omega).array()).sum();
        const Matrix TC = theta[k].asDiagonal() * C;
        acc -= 0.5 * (TC.array() * (C * W_hat).array()).sum();
    }
    return acc;
}

DynamicsVerdict classify_dynamics(const EnergyTrace& trace, double rho, double lfd_eps,
                                  double hfd_eps) {
    DynamicsVerdict verdict;
    verdict.rho_half = rho / 2.0;
    if (trace.records.size() < 10) {
        verdict.tag = DynamicsTag::Indeterminate;
        verdict.terminal_rayleigh = trace.records.empty() ? 0.0 : trace.records.back().rayleigh;
        return verdict;
    }
    verdict.terminal_rayleigh = trace.records.back().rayleigh;
    if (std::abs(verdict.terminal_rayleigh) <= lfd_eps) {
        verdict.tag = DynamicsTag::LFD;
    } else if (std::abs(verdict.terminal_rayleigh - verdict.rho_half) <= hfd_eps) {
        verdict.tag = DynamicsTag::HFD;
    } else {
        verdict.tag = DynamicsTag::Indeterminate;
    }
    return verdict;
}

}  // namespace plufg

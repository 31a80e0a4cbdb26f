#include "plufg/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace plufg {

const char* dynamics_name(Dynamics d) {
    return d == Dynamics::LFD ? "LFD" : "HFD";
}

Dynamics parse_dynamics(const std::string& name) {
    if (name == "LFD" || name == "lfd") return Dynamics::LFD;
    if (name == "HFD" || name == "hfd") return Dynamics::HFD;
    throw std::invalid_argument("unknown dynamics '" + name + "' (expected LFD or HFD)");
}

const char* activation_name(Activation a) {
    return a == Activation::ReLU ? "relu" : "identity";
}

Activation parse_activation(const std::string& name) {
    if (name == "relu" || name == "ReLU") return Activation::ReLU;
    if (name == "identity" || name == "Identity") return Activation::Identity;
    throw std::invalid_argument("unknown activation '" + name +
                                "' (expected relu or identity)");
}

void ModelConfig::validate() const {
    if (!(theta >= 0.0)) {
        throw std::invalid_argument("theta must be nonnegative, got " + std::to_string(theta));
    }
    if (dynamics == Dynamics::LFD && !(theta < 1.0)) {
        throw std::invalid_argument("LFD requires theta in [0, 1), got " +
                                    std::to_string(theta));
    }
    if (dynamics == Dynamics::HFD && !(theta > 1.0)) {
        throw std::invalid_argument("HFD requires theta > 1, got " + std::to_string(theta));
    }
    if (J < 0) {
        throw std::invalid_argument("J must be >= 0");
    }
    if (!(s > 1.0)) {
        throw std::invalid_argument("dilation must satisfy s > 1");
    }
    if (!exact_mode && degree < 1) {
        throw std::invalid_argument("Chebyshev degree must be >= 1");
    }
    if (framelet_layers < 1) {
        throw std::invalid_argument("framelet_layers must be >= 1");
    }
    if (channel_mixer.size() > 0 && channel_mixer.rows() != channel_mixer.cols()) {
        throw std::invalid_argument("channel mixer must be square");
    }
    plap.validate();
}

Matrix spectral_framelet_layer(const FrameletSystem& sys, const Matrix& F,
                               const std::vector<Vector>& theta_diag, const Matrix& W_hat,
                               Activation activation) {
    if (theta_diag.size() != sys.size()) {
        throw std::invalid_argument("one theta vector per framelet bank entry required (" +
                                    std::to_string(sys.size()) + "), got " +
                                    std::to_string(theta_diag.size()));
    }
    Matrix acc = Matrix::Zero(F.rows(), F.cols());
    for (std::size_t k = 0; k < sys.size(); ++k) {
        const auto idx = sys.indices()[k];
        if (theta_diag[k].size() != F.rows()) {
            std::ostringstream os;
            os << "theta vector for bank entry (r=" << idx.r << ", l=" << idx.level
               << ") has length " << theta_diag[k].size() << ", expected " << F.rows();
            throw std::invalid_argument(os.str());
        }
        if (theta_diag[k].minCoeff() < 0.0) {
            std::ostringstream os;
            os << "theta vector for bank entry (r=" << idx.r << ", l=" << idx.level
               << ") has negative entries";
            throw std::invalid_argument(os.str());
        }
        Matrix C = sys.apply(k, F);
        C = theta_diag[k].asDiagonal() * C;
        acc += sys.apply_transpose(k, C);
    }
    if (W_hat.size() > 0) {
        if (W_hat.rows() != F.cols() || W_hat.cols() != F.cols()) {
            throw std::invalid_argument("channel mixer must be c x c for an n x c signal");
        }
        acc = acc * W_hat;
    }
    if (activation == Activation::ReLU) {
        acc = acc.cwiseMax(0.0);
    }
    return acc;
}

std::vector<Vector> expand_theta(const FrameletSystem& sys, double theta) {
    std::vector<Vector> out;
    out.reserve(sys.size());
    const int n = sys.graph().num_nodes();
    for (const auto& idx : sys.indices()) {
        out.push_back(idx.r == 0 ? Vector::Ones(n) : Vector::Constant(n, theta));
    }
    return out;
}

ForwardResult plufg_forward(const Graph& g, const Matrix& X, const ModelConfig& cfg) {
    cfg.validate();
    if (X.rows() != g.num_nodes()) {
        throw std::invalid_argument("feature matrix row count does not match node count");
    }
    const ScalingSet set = haar_scaling_set();
    const FrameletSystem sys = cfg.exact_mode
                                   ? FrameletSystem::exact(g, set, cfg.J, cfg.s)
                                   : FrameletSystem::chebyshev(g, set, cfg.J, cfg.s, cfg.degree);
    const std::vector<Vector> theta = expand_theta(sys, cfg.theta);

    ForwardResult out;
    out.rho = sys.lambda_max();
    Matrix F = X;
    int next_k = 0;
    for (int layer = 0; layer < cfg.framelet_layers; ++layer) {
        const Matrix Y = spectral_framelet_layer(sys, F, theta, cfg.channel_mixer,
                                                 cfg.activation);
        SolveResult sr = solve_implicit(g, Y, cfg.plap);
        const int stage_base = next_k;
        for (TraceRecord rec : sr.trace.records) {
            rec.k = next_k++;
            out.trace.records.push_back(rec);
        }
        for (int warn : sr.trace.descent_warnings) {
            out.trace.descent_warnings.push_back(stage_base + warn);
        }
        F = std::move(sr.F);
    }
    out.F = std::move(F);
    return out;
}

ClassifierHead fit_head(const Matrix& features, const std::vector<int>& labels,
                        const std::vector<int>& train_idx, const HeadConfig& cfg,
                        unsigned long seed) {
    (void)seed;  // zero-init keeps the fit deterministic; seed kept for API stability
    if (train_idx.empty()) {
        throw std::invalid_argument("training index set is empty");
    }
    if (static_cast<Eigen::Index>(labels.size()) != features.rows()) {
        throw std::invalid_argument("labels size does not match feature rows");
    }
    std::set<int> classes;
    for (int idx : train_idx) {
        if (idx < 0 || idx >= features.rows()) {
            throw std::invalid_argument("training index " + std::to_string(idx) +
                                        " out of range");
        }
        classes.insert(labels[static_cast<std::size_t>(idx)]);
    }
    if (classes.size() < 2) {
        throw std::invalid_argument(
            "training set is degenerate: only one class present, nothing to separate");
    }
    int num_classes = 0;
    for (int lab : labels) num_classes = std::max(num_classes, lab + 1);

    const Eigen::Index nt = static_cast<Eigen::Index>(train_idx.size());
    const Eigen::Index c = features.cols();
    Matrix Xt(nt, c);
    Matrix Yt = Matrix::Zero(nt, num_classes);
    for (Eigen::Index r = 0; r < nt; ++r) {
        const int idx = train_idx[static_cast<std::size_t>(r)];
        Xt.row(r) = features.row(idx);
        Yt(r, labels[static_cast<std::size_t>(idx)]) = 1.0;
    }

    ClassifierHead head;
    head.W = Matrix::Zero(c, num_classes);
    head.b = Vector::Zero(num_classes);
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        Matrix logits = (Xt * head.W).rowwise() + head.b.transpose();
        // Row-wise softmax with max subtraction for stability.
        Matrix P(nt, num_classes);
        for (Eigen::Index r = 0; r < nt; ++r) {
            const double mx = logits.row(r).maxCoeff();
            Eigen::RowVectorXd ex = (logits.row(r).array() - mx).exp();
            P.row(r) = ex / ex.sum();
        }
        const Matrix diff = P - Yt;
        const Matrix gW = Xt.transpose() * diff / static_cast<double>(nt) + cfg.l2 * head.W;
        const Vector gb = diff.colwise().mean();
        head.W -= cfg.lr * gW;
        head.b -= cfg.lr * gb;
    }
    return head;
}

double evaluate(const ClassifierHead& head, const Matrix& features,
                const std::vector<int>& labels, const std::vector<int>& idx) {
    if (idx.empty()) {
        throw std::invalid_argument("evaluation index set is empty");
    }
    long correct = 0;
    for (int r : idx) {
        if (r < 0 || r >= features.rows()) {
            throw std::invalid_argument("evaluation index " + std::to_string(r) +
                                        " out of range");
        }
        const Eigen::RowVectorXd scores =
            features.row(r) * head.W + head.b.transpose();
        // First maximum wins: ties resolve to the lowest class index.
        int best = 0;
        for (Eigen::Index j = 1; j < scores.size(); ++j) {
            if (scores[j] > scores[best]) best = static_cast<int>(j);
        }
        if (best == labels[static_cast<std::size_t>(r)]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(idx.size());
}

}  // namespace plufg

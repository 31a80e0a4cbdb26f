#pragma once

// ---------------------------------------------------------------------------
// The full pipeline: spectral framelet layers (with per-entry diagonal
// reweighting theta) alternating with the implicit p-Laplacian layer, then a
// deterministic multinomial logistic head trained on frozen features.
//
// theta < 1 on the high-pass entries damps high frequencies (low-frequency
// dominance); theta > 1 amplifies them (high-frequency dominance).
// ---------------------------------------------------------------------------

#include "plufg/framelet.hpp"
#include "plufg/graph.hpp"
#include "plufg/plap.hpp"
#include "plufg/trace.hpp"

#include <string>
#include <vector>

namespace plufg {

enum class Activation { Identity, ReLU };
enum class Dynamics { LFD, HFD };

const char* dynamics_name(Dynamics d);
Dynamics parse_dynamics(const std::string& name);
const char* activation_name(Activation a);
Activation parse_activation(const std::string& name);

struct ModelConfig {
    Dynamics dynamics = Dynamics::LFD;
    double theta = 0.2;  // high-pass reweighting; LFD needs [0, 1), HFD > 1

    // Framelet transform parameters.
    int J = 1;
    double s = 2.0;
    bool exact_mode = true;
    int degree = 3;  // Chebyshev degree when exact_mode is false

    PLapConfig plap;

    int framelet_layers = 1;
    Matrix channel_mixer;  // c x c; empty means identity
    Activation activation = Activation::ReLU;

    /// Throws std::invalid_argument on theta < 0, a theta inconsistent with
    /// the declared dynamics, framelet_layers < 1, J < 0, s <= 1, degree < 1,
    /// or an invalid plap config.
    void validate() const;
};

/// One spectral layer: sum_k W_k^T diag(theta_k) W_k F W_hat, then the
/// activation. theta_diag holds one length-N vector per bank entry; W_hat is
/// c x c (empty = identity). Throws std::invalid_argument on shape mismatch
/// naming the offending entry.
Matrix spectral_framelet_layer(const FrameletSystem& sys, const Matrix& F,
                               const std::vector<Vector>& theta_diag, const Matrix& W_hat,
                               Activation activation);

/// Expands the scalar theta of a ModelConfig into per-entry vectors: the
/// low-pass chain entry (r = 0) keeps weight 1, every high-pass entry gets
/// the scalar.
std::vector<Vector> expand_theta(const FrameletSystem& sys, double theta);

struct ForwardResult {
    Matrix F;           // final node features
    EnergyTrace trace;  // per-stage solver traces, concatenated, k renumbered
    double rho = 0.0;   // spectral radius of L~ (for classify_dynamics)
};

/// Runs framelet_layers stages of (spectral layer -> implicit p-Laplacian
/// layer) on X and concatenates the solver traces.
ForwardResult plufg_forward(const Graph& g, const Matrix& X, const ModelConfig& cfg);

struct HeadConfig {
    double lr = 0.5;
    int epochs = 300;
    double l2 = 1e-4;
};

struct ClassifierHead {
    Matrix W;  // feat_dim x num_classes
    Vector b;  // num_classes
};

/// Full-batch gradient descent on the multinomial logistic loss over the
/// training rows, from zero-initialized parameters (deterministic; the seed
/// is accepted for interface stability and does not enter the math). Throws
/// std::invalid_argument when the training rows contain a single class or
/// the index set is empty.
ClassifierHead fit_head(const Matrix& features, const std::vector<int>& labels,
                        const std::vector<int>& train_idx, const HeadConfig& cfg,
                        unsigned long seed);

/// Class scores -> argmax accuracy over the given rows (ties resolve to the
/// lowest class index). Throws std::invalid_argument on an empty index set.
double evaluate(const ClassifierHead& head, const Matrix& features,
                const std::vector<int>& labels, const std::vector<int>& idx);

}  // namespace plufg

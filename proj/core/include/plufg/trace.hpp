#pragma once

// Shared diagnostics records: the per-iteration energy trace emitted by the
// implicit solver and the frequency-dominance verdict derived from it.

#include <vector>

namespace plufg {

/// One row of an energy trace. `k` counts iterates from 0 (the start point);
/// all energies are evaluated at that iterate.
struct TraceRecord {
    int k = 0;
    double objective = 0.0;    // S_p^phi(F) + mu * ||F - Y||_F^2
    double regularizer = 0.0;  // S_p^phi(F)
    double fidelity = 0.0;     // mu * ||F - Y||_F^2
    double dirichlet = 0.0;    // raw-degree Dirichlet energy of F
    double epf = 0.0;          // propagation-flexibility energy at F
    double rayleigh = 0.0;     // normalized spectral energy of F
};

/// Energy trace of a solve (or of several pipeline stages concatenated).
/// `descent_warnings` lists the k values at which the objective rose by more
/// than the logging slack; the solver never throws on these.
struct EnergyTrace {
    std::vector<TraceRecord> records;
    std::vector<int> descent_warnings;

    bool empty() const { return records.empty(); }
    std::size_t size() const { return records.size(); }
};

enum class DynamicsTag { LFD, HFD, Indeterminate };

/// Outcome of classify_dynamics: where the normalized spectral energy of the
/// terminal iterate sits relative to the extremes 0 and rho/2.
struct DynamicsVerdict {
    DynamicsTag tag = DynamicsTag::Indeterminate;
    double terminal_rayleigh = 0.0;
    double rho_half = 0.0;
};

const char* dynamics_tag_name(DynamicsTag tag);

}  // namespace plufg

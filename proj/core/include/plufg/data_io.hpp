#pragma once

// ---------------------------------------------------------------------------
// Dataset container, on-disk format, and the stochastic block-model
// generator used for controlled homophily experiments.
//
// Directory layout of a dataset:
//   edges.tsv      "i<TAB>j<TAB>w" per undirected edge, '#' comments
//   features.csv   one row per node, comma-separated doubles
//   labels.csv     one integer per line
//   splits.json    {"train": [...], "val": [...], "test": [...]}
//                  plus an optional declared "homophily" number
// ---------------------------------------------------------------------------

#include "plufg/graph.hpp"
#include "plufg/trace.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace plufg {

struct Dataset {
    std::string name;
    Graph graph;
    Matrix features;          // n x feat_dim
    std::vector<int> labels;  // size n, values in [0, num_classes)
    std::vector<int> train_idx;
    std::vector<int> val_idx;
    std::vector<int> test_idx;
    int num_classes = 0;
    double homophily = 0.0;  // recomputed at load / generation time

    /// Throws std::invalid_argument when the index sets overlap, leave the
    /// range, or the training set misses a class present in labels.
    void validate() const;
};

/// Loads a dataset directory. The homophily index is recomputed from the
/// graph; if splits.json declares one, a deviation beyond 0.01 is reported
/// on `warnings` (default std::cerr) without failing the load. Throws
/// std::runtime_error on missing files and std::invalid_argument on ragged
/// feature rows, out-of-range labels, or an empty edge list.
Dataset load_dataset(const std::string& dir, std::ostream* warnings = nullptr);

/// Writes the dataset in the directory layout above (full precision,
/// declared homophily included).
void save_dataset(const Dataset& ds, const std::string& dir);

/// Stochastic block model with K equal-size blocks (labels i mod K),
/// Bernoulli(p_in) edges inside a block and Bernoulli(p_out) across, unit
/// weights. Node features are the node's class mean (a fixed N(0, I) draw
/// scaled by `signal`) plus unit Gaussian noise. Splits are stratified
/// 60/20/20 per class. Requires n divisible by K, probabilities in [0, 1];
/// if any node ends up isolated the graph is redrawn (same stream) up to 10
/// times before failing.
Dataset synth_sbm(int n, int K, double p_in, double p_out, int feat_dim, double signal,
                  unsigned long seed);

/// Appends trace records to a CSV file with header
/// k,objective,regularizer,fidelity,dirichlet,epf,rayleigh - written exactly
/// once per file (appending to a non-empty file skips it). Zero records
/// still produce the header. Values round-trip at full precision.
void write_trace(const EnergyTrace& trace, const std::string& path);

/// Reads a trace CSV back (descent warnings are not serialized).
EnergyTrace read_trace(const std::string& path);

struct ResultRow {
    std::string dataset;
    std::string dynamics;
    double theta = 0.0;
    double mu = 0.0;
    double p = 0.0;
    unsigned long seed = 0;
    double train_acc = 0.0;
    double val_acc = 0.0;
    double test_acc = 0.0;
};

/// Appends rows to results.csv with header
/// dataset,dynamics,theta,mu,p,seed,train_acc,val_acc,test_acc (same
/// exactly-once rule as write_trace).
void write_results(const std::vector<ResultRow>& rows, const std::string& path);

std::vector<ResultRow> read_results(const std::string& path);

}  // namespace plufg

#include "plufg/data_io.hpp"

#include "plufg/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace plufg {

namespace fs = std::filesystem;
using nlohmann::json;

void Dataset::validate() const {
    const int n = graph.num_nodes();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    auto check_split = [&](const std::vector<int>& idx, const char* name) {
        for (int v : idx) {
            if (v < 0 || v >= n) {
                throw std::invalid_argument(std::string(name) + " split index " +
                                            std::to_string(v) + " out of range");
            }
            if (seen[static_cast<std::size_t>(v)]) {
                throw std::invalid_argument("node " + std::to_string(v) +
                                            " appears in more than one split");
            }
            seen[static_cast<std::size_t>(v)] = 1;
        }
    };
    check_split(train_idx, "train");
    check_split(val_idx, "val");
    check_split(test_idx, "test");

    std::set<int> present(labels.begin(), labels.end());
    std::set<int> in_train;
    for (int v : train_idx) in_train.insert(labels[static_cast<std::size_t>(v)]);
    for (int cls : present) {
        if (!in_train.count(cls)) {
            throw std::invalid_argument("class " + std::to_string(cls) +
                                        " has no training examples");
        }
    }
}

Dataset synth_sbm(int n, int K, double p_in, double p_out, int feat_dim, double signal,
                  unsigned long seed) {
    if (K < 2) {
        throw std::invalid_argument("block model needs at least 2 classes");
    }
    if (n % K != 0) {
        throw std::invalid_argument("node count " + std::to_string(n) +
                                    " must be divisible by the class count " +
                                    std::to_string(K));
    }
    if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0) {
        throw std::invalid_argument("edge probabilities must lie in [0, 1]");
    }
    if (feat_dim < 1) {
        throw std::invalid_argument("feature dimension must be >= 1");
    }

    Dataset ds;
    ds.num_classes = K;
    ds.labels.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) ds.labels[static_cast<std::size_t>(v)] = v % K;

    Rng rng(seed);

    // Edge draws come first in the stream so "same seed, same edge set"
    // holds regardless of feature dimension.
    bool built = false;
    for (int attempt = 0; attempt < 10 && !built; ++attempt) {
        std::vector<Edge> edges;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double prob =
                    (ds.labels[static_cast<std::size_t>(i)] ==
                     ds.labels[static_cast<std::size_t>(j)])
                        ? p_in
                        : p_out;
                if (rng.uniform() < prob) edges.push_back({i, j, 1.0});
            }
        }
        std::vector<char> has_neighbor(static_cast<std::size_t>(n), 0);
        for (const Edge& e : edges) {
            has_neighbor[static_cast<std::size_t>(e.i)] = 1;
            has_neighbor[static_cast<std::size_t>(e.j)] = 1;
        }
        if (std::find(has_neighbor.begin(), has_neighbor.end(), 0) != has_neighbor.end()) {
            continue;  // redraw the whole graph from the continuing stream
        }
        ds.graph = Graph::from_edges(n, edges);
        built = true;
    }
    if (!built) {
        throw std::runtime_error(
            "block model kept producing isolated nodes after 10 attempts; "
            "raise p_in/p_out or the node count");
    }

    Matrix means(K, feat_dim);
    for (int k = 0; k < K; ++k) {
        for (int d = 0; d < feat_dim; ++d) means(k, d) = signal * rng.normal();
    }
    ds.features.resize(n, feat_dim);
    for (int v = 0; v < n; ++v) {
        for (int d = 0; d < feat_dim; ++d) {
            ds.features(v, d) = means(ds.labels[static_cast<std::size_t>(v)], d) + rng.normal();
        }
    }

    // Stratified 60/20/20 split, Fisher-Yates per class.
    for (int k = 0; k < K; ++k) {
        std::vector<int> ids;
        for (int v = 0; v < n; ++v) {
            if (ds.labels[static_cast<std::size_t>(v)] == k) ids.push_back(v);
        }
        for (std::size_t i = ids.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(rng.below(i));
            std::swap(ids[i - 1], ids[j]);
        }
        const std::size_t a = static_cast<std::size_t>(0.6 * static_cast<double>(ids.size()));
        const std::size_t b = static_cast<std::size_t>(0.8 * static_cast<double>(ids.size()));
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (i < a) {
                ds.train_idx.push_back(ids[i]);
            } else if (i < b) {
                ds.val_idx.push_back(ids[i]);
            } else {
                ds.test_idx.push_back(ids[i]);
            }
        }
    }
    std::sort(ds.train_idx.begin(), ds.train_idx.end());
    std::sort(ds.val_idx.begin(), ds.val_idx.end());
    std::sort(ds.test_idx.begin(), ds.test_idx.end());

    ds.homophily = homophily_index(ds.graph, ds.labels);
    std::ostringstream name;
    name << "sbm-n" << n << "-k" << K << "-s" << seed;
    ds.name = name.str();
    ds.validate();
    return ds;
}

namespace {

std::vector<int> json_int_array(const json& j, const char* key, const std::string& path) {
    if (!j.contains(key) || !j[key].is_array()) {
        throw std::invalid_argument(path + ": splits.json needs an integer array '" +
                                    std::string(key) + "'");
    }
    std::vector<int> out;
    for (const auto& v : j[key]) out.push_back(v.get<int>());
    return out;
}

}  // namespace

Dataset load_dataset(const std::string& dir, std::ostream* warnings) {
    std::ostream& warn = warnings != nullptr ? *warnings : std::cerr;
    const fs::path root(dir);
    for (const char* req : {"edges.tsv", "features.csv", "labels.csv", "splits.json"}) {
        if (!fs::exists(root / req)) {
            throw std::runtime_error("dataset directory " + dir + " is missing " + req);
        }
    }

    Dataset ds;
    ds.name = root.filename().string();

    // features.csv defines the node count.
    {
        std::ifstream in(root / "features.csv");
        if (!in) throw std::runtime_error("cannot open " + (root / "features.csv").string());
        std::string line;
        std::vector<std::vector<double>> rows;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            std::vector<double> row;
            std::stringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ',')) {
                try {
                    row.push_back(std::stod(cell));
                } catch (const std::exception&) {
                    throw std::invalid_argument("features.csv:" + std::to_string(lineno) +
                                                ": cannot parse '" + cell + "'");
                }
            }
            if (!rows.empty() && row.size() != rows.front().size()) {
                throw std::invalid_argument(
                    "features.csv:" + std::to_string(lineno) + ": ragged row, expected " +
                    std::to_string(rows.front().size()) + " columns, got " +
                    std::to_string(row.size()));
            }
            rows.push_back(std::move(row));
        }
        if (rows.empty()) {
            throw std::invalid_argument("features.csv is empty");
        }
        ds.features.resize(static_cast<Eigen::Index>(rows.size()),
                           static_cast<Eigen::Index>(rows.front().size()));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            for (std::size_t j = 0; j < rows[i].size(); ++j) {
                ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                    rows[i][j];
            }
        }
    }
    const int n = static_cast<int>(ds.features.rows());

    {
        std::ifstream in(root / "labels.csv");
        if (!in) throw std::runtime_error("cannot open " + (root / "labels.csv").string());
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            try {
                ds.labels.push_back(std::stoi(line));
            } catch (const std::exception&) {
                throw std::invalid_argument("labels.csv:" + std::to_string(lineno) +
                                            ": cannot parse '" + line + "'");
            }
        }
        if (static_cast<int>(ds.labels.size()) != n) {
            throw std::invalid_argument("labels.csv has " + std::to_string(ds.labels.size()) +
                                        " entries for " + std::to_string(n) + " nodes");
        }
    }

    ds.graph = read_edge_list((root / "edges.tsv").string(), n);

    json splits;
    {
        std::ifstream in(root / "splits.json");
        if (!in) throw std::runtime_error("cannot open " + (root / "splits.json").string());
        try {
            in >> splits;
        } catch (const std::exception& e) {
            throw std::invalid_argument("splits.json: " + std::string(e.what()));
        }
    }
    ds.train_idx = json_int_array(splits, "train", dir);
    ds.val_idx = json_int_array(splits, "val", dir);
    ds.test_idx = json_int_array(splits, "test", dir);
    if (splits.contains("name") && splits["name"].is_string()) {
        ds.name = splits["name"].get<std::string>();
    }

    int declared_classes = -1;
    if (splits.contains("num_classes")) declared_classes = splits["num_classes"].get<int>();
    int max_label = 0;
    for (std::size_t v = 0; v < ds.labels.size(); ++v) {
        const int lab = ds.labels[v];
        if (lab < 0 || (declared_classes >= 0 && lab >= declared_classes)) {
            throw std::invalid_argument("labels.csv: label " + std::to_string(lab) +
                                        " at node " + std::to_string(v) + " is out of range");
        }
        max_label = std::max(max_label, lab);
    }
    ds.num_classes = declared_classes >= 0 ? declared_classes : max_label + 1;

    ds.homophily = homophily_index(ds.graph, ds.labels);
    if (splits.contains("homophily")) {
        const double declared = splits["homophily"].get<double>();
        if (std::abs(declared - ds.homophily) > 0.01) {
            warn << "warning: " << dir << " declares homophily " << declared
                 << " but the edge list gives " << ds.homophily << "\n";
        }
    }

    ds.validate();
    return ds;
}

void save_dataset(const Dataset& ds, const std::string& dir) {
    const fs::path root(dir);
    fs::create_directories(root);
    write_edge_list(ds.graph, (root / "edges.tsv").string());
    {
        std::ofstream out(root / "features.csv");
        if (!out) throw std::runtime_error("cannot write features.csv in " + dir);
        out << std::setprecision(17);
        for (Eigen::Index i = 0; i < ds.features.rows(); ++i) {
            for (Eigen::Index j = 0; j < ds.features.cols(); ++j) {
                if (j > 0) out << ',';
                out << ds.features(i, j);
            }
            out << '\n';
        }
    }
    {
        std::ofstream out(root / "labels.csv");
        if (!out) throw std::runtime_error("cannot write labels.csv in " + dir);
        for (int lab : ds.labels) out << lab << '\n';
    }
    {
        json splits;
        splits["train"] = ds.train_idx;
        splits["val"] = ds.val_idx;
        splits["test"] = ds.test_idx;
        splits["num_classes"] = ds.num_classes;
        splits["homophily"] = ds.homophily;
        splits["name"] = ds.name;
        std::ofstream out(root / "splits.json");
        if (!out) throw std::runtime_error("cannot write splits.json in " + dir);
        out << splits.dump(2) << '\n';
    }
}

namespace {

/// True when the file needs a header (absent or empty).
bool needs_header(const std::string& path) {
    std::error_code ec;
    const auto size = fs::file_size(path, ec);
    return ec || size == 0;
}

}  // namespace

void write_trace(const EnergyTrace& trace, const std::string& path) {
    const bool header = needs_header(path);
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot write trace file " + path);
    out << std::setprecision(17);
    if (header) out << "k,objective,regularizer,fidelity,dirichlet,epf,rayleigh\n";
    for (const TraceRecord& r : trace.records) {
        out << r.k << ',' << r.objective << ',' << r.regularizer << ',' << r.fidelity << ','
            << r.dirichlet << ',' << r.epf << ',' << r.rayleigh << '\n';
    }
}

EnergyTrace read_trace(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file " + path);
    EnergyTrace trace;
    std::string line;
    if (!std::getline(in, line)) return trace;
    if (line != "k,objective,regularizer,fidelity,dirichlet,epf,rayleigh") {
        throw std::invalid_argument("trace file " + path + " has an unexpected header");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() != 7) {
            throw std::invalid_argument("trace file " + path + ": malformed row '" + line + "'");
        }
        TraceRecord r;
        r.k = static_cast<int>(vals[0]);
        r.objective = vals[1];
        r.regularizer = vals[2];
        r.fidelity = vals[3];
        r.dirichlet = vals[4];
        r.epf = vals[5];
        r.rayleigh = vals[6];
        trace.records.push_back(r);
    }
    return trace;
}

void write_results(const std::vector<ResultRow>& rows, const std::string& path) {
    const bool header = needs_header(path);
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot write results file " + path);
    out << std::setprecision(17);
    if (header) out << "dataset,dynamics,theta,mu,p,seed,train_acc,val_acc,test_acc\n";
    for (const ResultRow& r : rows) {
        out << r.dataset << ',' << r.dynamics << ',' << r.theta << ',' << r.mu << ',' << r.p
            << ',' << r.seed << ',' << r.train_acc << ',' << r.val_acc << ',' << r.test_acc
            << '\n';
    }
}

std::vector<ResultRow> read_results(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open results file " + path);
    std::vector<ResultRow> rows;
    std::string line;
    if (!std::getline(in, line)) return rows;
    if (line != "dataset,dynamics,theta,mu,p,seed,train_acc,val_acc,test_acc") {
        throw std::invalid_argument("results file " + path + " has an unexpected header");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != 9) {
            throw std::invalid_argument("results file " + path + ": malformed row '" + line +
                                        "'");
        }
        ResultRow r;
        r.dataset = cells[0];
        r.dynamics = cells[1];
        r.theta = std::stod(cells[2]);
        r.mu = std::stod(cells[3]);
        r.p = std::stod(cells[4]);
        r.seed = std::stoul(cells[5]);
        r.train_acc = std::stod(cells[6]);
        r.val_acc = std::stod(cells[7]);
        r.test_acc = std::stod(cells[8]);
        rows.push_back(r);
    }
    return rows;
}

}  // namespace plufg

#pragma once
// Monte Carlo experiments over topologies and trials, aggregation, and the
// CSV / JSON / SVG outputs.

#include "fuzzpoc/allocator.hpp"
#include "fuzzpoc/config.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fuzzpoc {

struct MetricsRecord {
    Scheme scheme = Scheme::fuzzy;
    int n = 0;
    int topo = 0;
    int trial = 0;
    int iterations = 0;
    bool converged = false;
    double rate = 0.0;
    double throughput = 0.0;
    int active_links = 0;
    double qos_pass = 0.0;
    std::size_t c4_violations = 0;   // over every slot of the run
};

struct ExperimentOptions {
    std::vector<int> n_values;               // empty: the config's n_nodes
    std::vector<Scheme> schemes{Scheme::fuzzy, Scheme::crisp, Scheme::random};
    unsigned threads = 0;                    // 0: hardware concurrency
};

struct RunFailure {
    Scheme scheme;
    int n, topo, trial;
    std::string message;
};

struct ExperimentResult {
    std::vector<MetricsRecord> records;   // canonical order: N, scheme, topo, trial
    std::vector<RunFailure> failures;
};

std::uint64_t topology_seed(std::uint64_t master, int topo);
std::uint64_t trial_seed(std::uint64_t master, int topo, int trial);

/// One run of one scheme on one (topology, trial) pair.
MetricsRecord run_single(const ScenarioConfig& config, Scheme scheme, int n, int topo, int trial);

ExperimentResult run_experiment(const ScenarioConfig& config, const ExperimentOptions& options = {});

struct CdfTable {
    int n = 0;
    std::size_t runs = 0;
    std::vector<double> cdf;   // cdf[k - 1] = P(converged within k slots)
};

/// Per-N empirical CDF of iterations-to-converge for one scheme. The
/// denominator counts every completed run, so non-converged runs keep the
/// curve below 1. Throws when no record converged.
std::vector<CdfTable> convergence_cdf(const std::vector<MetricsRecord>& records, Scheme scheme, int cap);

struct CellStats {
    std::size_t count = 0;
    double mean = 0.0;
    std::optional<double> variance;   // unbiased; absent with one record
};

struct SchemeStats {
    CellStats throughput, rate, active_links, iterations;
    std::size_t converged = 0;
};

/// (scheme, N) -> statistics.
std::map<std::pair<std::string, int>, SchemeStats> throughput_stats(const std::vector<MetricsRecord>& records);

CellStats describe(const std::vector<double>& values);

/// Mean active links per N under the fuzzy scheme.
std::map<int, double> active_links_sweep(const ScenarioConfig& config, const std::vector<int>& n_values,
                                         unsigned threads = 0);

std::string runs_csv(const std::vector<MetricsRecord>& records);
std::vector<MetricsRecord> parse_runs_csv(const std::string& text);

/// Sorted-key JSON summary of per-(scheme, N) statistics.
std::string summary_json(const std::vector<MetricsRecord>& records, std::size_t failures);

void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// Minimal line chart with axes, ticks and a legend.
std::string svg_line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<Series>& series);

}  // namespace fuzzpoc

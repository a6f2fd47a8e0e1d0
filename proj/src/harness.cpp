#include "fuzzpoc/harness.hpp"

#include "fuzzpoc/network.hpp"
#include "fuzzpoc/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fuzzpoc {

std::uint64_t topology_seed(std::uint64_t master, int topo) {
    return derive_seed(master, "topo", {static_cast<std::uint64_t>(topo)});
}

std::uint64_t trial_seed(std::uint64_t master, int topo, int trial) {
    return derive_seed(master, "trial", {static_cast<std::uint64_t>(topo), static_cast<std::uint64_t>(trial)});
}

MetricsRecord run_single(const ScenarioConfig& config, Scheme scheme, int n, int topo, int trial) {
    ScenarioConfig c = config;
    c.n_nodes = n;
    const NetworkState net = generate_topology(c, topology_seed(c.seed, topo));
    const RadioEnv env = RadioEnv::from_config(c);
    const LearnerConfig cfg = LearnerConfig::from_config(c);
    const Dynamics dynamics = Dynamics::from_config(c);
    const AllocationTrace trace = run(net, env, cfg, dynamics, scheme, trial_seed(c.seed, topo, trial));

    MetricsRecord rec;
    rec.scheme = scheme;
    rec.n = n;
    rec.topo = topo;
    rec.trial = trial;
    rec.iterations = trace.iterations;
    rec.converged = trace.converged;
    const SlotRecord& last = trace.final_slot();
    rec.rate = last.global_rate;
    rec.throughput = last.global_throughput;
    rec.active_links = last.active_links;
    rec.qos_pass = last.qos_pass;
    for (const SlotRecord& slot : trace.slots) {
        for (const NodePlan& p : slot.plan.nodes) {
            if (!mutually_orthogonal(p.channels, env.channels) ||
                static_cast<int>(p.channels.size()) > env.channels.o_max()) {
                ++rec.c4_violations;
            }
        }
    }
    return rec;
}

namespace {

struct WorkItem {
    Scheme scheme;
    int n, topo, trial;
};

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
    };
    if (threads <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

}  // namespace

ExperimentResult run_experiment(const ScenarioConfig& config, const ExperimentOptions& options) {
    config.validate();
    std::vector<int> n_values = options.n_values;
    if (n_values.empty()) n_values.push_back(config.n_nodes);

    std::vector<WorkItem> items;
    for (int n : n_values) {
        if (n < 1) throw std::invalid_argument("node counts must be positive");
        for (Scheme s : options.schemes) {
            for (int topo = 0; topo < config.topologies; ++topo) {
                for (int trial = 0; trial < config.trials; ++trial) items.push_back({s, n, topo, trial});
            }
        }
    }
    std::vector<std::optional<MetricsRecord>> slots(items.size());
    std::vector<std::string> errors(items.size());
    parallel_for(items.size(), options.threads, [&](std::size_t i) {
        const WorkItem& w = items[i];
        try {
            slots[i] = run_single(config, w.scheme, w.n, w.topo, w.trial);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });

    ExperimentResult result;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (slots[i]) {
            result.records.push_back(*slots[i]);
        } else {
            const WorkItem& w = items[i];
            result.failures.push_back({w.scheme, w.n, w.topo, w.trial, errors[i]});
        }
    }
    return result;
}

std::vector<CdfTable> convergence_cdf(const std::vector<MetricsRecord>& records, Scheme scheme, int cap) {
    if (cap < 1) throw std::invalid_argument("iteration cap must be at least 1");
    std::map<int, CdfTable> by_n;
    bool any_converged = false;
    for (const MetricsRecord& r : records) {
        if (r.scheme != scheme) continue;
        CdfTable& t = by_n[r.n];
        t.n = r.n;
        t.cdf.resize(cap, 0.0);
        ++t.runs;
        if (r.converged && r.iterations <= cap) {
            any_converged = true;
            for (int k = r.iterations; k <= cap; ++k) t.cdf[k - 1] += 1.0;
        }
    }
    if (!any_converged) throw std::invalid_argument("no converged runs to build a CDF from");
    std::vector<CdfTable> out;
    for (auto& [n, t] : by_n) {
        for (double& v : t.cdf) v /= static_cast<double>(t.runs);
        out.push_back(std::move(t));
    }
    return out;
}

CellStats describe(const std::vector<double>& values) {
    CellStats s;
    s.count = values.size();
    if (values.empty()) return s;
    double total = 0.0;
    for (double v : values) total += v;
    s.mean = total / static_cast<double>(values.size());
    if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.variance = ss / static_cast<double>(values.size() - 1);
    }
    return s;
}

std::map<std::pair<std::string, int>, SchemeStats> throughput_stats(const std::vector<MetricsRecord>& records) {
    struct Columns {
        std::vector<double> thr, rate, links, iters;
        std::size_t converged = 0;
    };
    std::map<std::pair<std::string, int>, Columns> cells;
    for (const MetricsRecord& r : records) {
        Columns& c = cells[{to_string(r.scheme), r.n}];
        c.thr.push_back(r.throughput);
        c.rate.push_back(r.rate);
        c.links.push_back(r.active_links);
        if (r.converged) {
            c.iters.push_back(r.iterations);
            ++c.converged;
        }
    }
    std::map<std::pair<std::string, int>, SchemeStats> out;
    for (const auto& [key, c] : cells) {
        out[key] = {describe(c.thr), describe(c.rate), describe(c.links), describe(c.iters), c.converged};
    }
    return out;
}

std::map<int, double> active_links_sweep(const ScenarioConfig& config, const std::vector<int>& n_values,
                                         unsigned threads) {
    if (n_values.empty()) throw std::invalid_argument("active link sweep needs node counts");
    ExperimentOptions options;
    options.n_values = n_values;
    options.schemes = {Scheme::fuzzy};
    options.threads = threads;
    const ExperimentResult result = run_experiment(config, options);
    std::map<int, std::vector<double>> links;
    for (const MetricsRecord& r : result.records) links[r.n].push_back(r.active_links);
    std::map<int, double> out;
    for (const auto& [n, values] : links) out[n] = describe(values).mean;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string number(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string runs_csv(const std::vector<MetricsRecord>& records) {
    std::string out = "scheme,N,topo,trial,iters,converged,rate,throughput,active_links,qos_pass\n";
    for (const MetricsRecord& r : records) {
        out += to_string(r.scheme) + ',' + std::to_string(r.n) + ',' + std::to_string(r.topo) + ',' +
               std::to_string(r.trial) + ',' + std::to_string(r.iterations) + ',' + (r.converged ? "1" : "0") + ',' +
               number(r.rate) + ',' + number(r.throughput) + ',' + std::to_string(r.active_links) + ',' +
               number(r.qos_pass) + '\n';
    }
    return out;
}

std::vector<MetricsRecord> parse_runs_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "scheme,N,topo,trial,iters,converged,rate,throughput,active_links,qos_pass") {
        throw std::invalid_argument("runs CSV has an unexpected header");
    }
    std::vector<MetricsRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::istringstream row(line);
        for (std::string cell; std::getline(row, cell, ',');) cols.push_back(cell);
        if (cols.size() != 10) throw std::invalid_argument("runs CSV row has the wrong column count: " + line);
        MetricsRecord r;
        r.scheme = scheme_from_string(cols[0]);
        r.n = std::stoi(cols[1]);
        r.topo = std::stoi(cols[2]);
        r.trial = std::stoi(cols[3]);
        r.iterations = std::stoi(cols[4]);
        r.converged = cols[5] == "1";
        r.rate = std::stod(cols[6]);
        r.throughput = std::stod(cols[7]);
        r.active_links = std::stoi(cols[8]);
        r.qos_pass = std::stod(cols[9]);
        out.push_back(r);
    }
    return out;
}

std::string summary_json(const std::vector<MetricsRecord>& records, std::size_t failures) {
    using json = nlohmann::json;
    auto cell = [](const CellStats& s) {
        json j = {{"count", s.count}, {"mean", s.mean}};
        j["variance"] = s.variance ? json(*s.variance) : json(nullptr);
        return j;
    };
    json doc = json::object();
    json schemes = json::object();
    for (const auto& [key, st] : throughput_stats(records)) {
        schemes[key.first][std::to_string(key.second)] = {{"active_links", cell(st.active_links)},
                                                          {"converged", st.converged},
                                                          {"iterations", cell(st.iterations)},
                                                          {"rate", cell(st.rate)},
                                                          {"throughput", cell(st.throughput)}};
    }
    doc["failures"] = failures;
    doc["runs"] = records.size();
    doc["schemes"] = schemes;
    return doc.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace fuzzpoc

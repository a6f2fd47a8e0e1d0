// Command-line front end: run, sweep, cdf, report.
#include "fuzzpoc/harness.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

using namespace fuzzpoc;

namespace {

struct Common {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> n;
    std::string scheme = "all";
    std::optional<std::string> metric;
    std::string out = "out";
    std::optional<int> trials;
    std::optional<int> topologies;
    unsigned threads = 0;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config_path, "scenario JSON");
    cmd->add_option("--seed", c.seed, "master seed");
    cmd->add_option("--n", c.n, "number of UAV nodes");
    cmd->add_option("--scheme", c.scheme, "fuzzy|crisp|random|all")
        ->check(CLI::IsMember({"fuzzy", "crisp", "random", "all"}));
    cmd->add_option("--metric", c.metric, "rate|throughput")->check(CLI::IsMember({"rate", "throughput"}));
    cmd->add_option("--out", c.out, "output directory");
    cmd->add_option("--trials", c.trials, "trials per topology");
    cmd->add_option("--topologies", c.topologies, "number of topologies");
    cmd->add_option("--threads", c.threads, "worker threads (0 = all cores)");
}

ScenarioConfig resolve(const Common& c) {
    ScenarioConfig config = c.config_path.empty() ? ScenarioConfig{} : load_config(c.config_path);
    if (c.seed) config.seed = *c.seed;
    if (c.n) config.n_nodes = *c.n;
    if (c.metric) config.metric = metric_from_string(*c.metric);
    if (c.trials) config.trials = *c.trials;
    if (c.topologies) config.topologies = *c.topologies;
    config.validate();
    return config;
}

std::vector<Scheme> schemes_of(const std::string& s) {
    if (s == "all") return {Scheme::fuzzy, Scheme::crisp, Scheme::random};
    return {scheme_from_string(s)};
}

std::vector<int> parse_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    if (out.empty()) throw std::invalid_argument("empty node-count list");
    return out;
}

std::string path_in(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void emit_experiment(const ScenarioConfig& config, const ExperimentResult& result, const std::string& dir) {
    std::filesystem::create_directories(dir);
    write_file(path_in(dir, "runs.csv"), runs_csv(result.records));
    write_file(path_in(dir, "summary.json"), summary_json(result.records, result.failures.size()));
    write_file(path_in(dir, "config.json"), config_to_json(config) + "\n");
    for (const RunFailure& f : result.failures) {
        std::cerr << "run failed: " << to_string(f.scheme) << " N=" << f.n << " topo=" << f.topo
                  << " trial=" << f.trial << ": " << f.message << "\n";
    }
    std::cout << "wrote " << result.records.size() << " runs to " << path_in(dir, "runs.csv") << "\n";
}

std::string cdf_csv(const std::vector<CdfTable>& tables) {
    std::string out = "N,k,cdf\n";
    for (const CdfTable& t : tables) {
        for (std::size_t k = 0; k < t.cdf.size(); ++k) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%d,%zu,%.6f\n", t.n, k + 1, t.cdf[k]);
            out += buf;
        }
    }
    return out;
}

int report(const std::string& in_path, const std::string& dir, int cap) {
    const std::vector<MetricsRecord> records = parse_runs_csv(read_file(in_path));
    std::filesystem::create_directories(dir);

    std::string table = "scheme,N,runs,throughput_mean,throughput_var,rate_mean,active_links_mean,iters_mean,converged\n";
    std::map<std::string, Series> thr, links;
    for (const auto& [key, st] : throughput_stats(records)) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s,%d,%zu,%.6f,%.6f,%.6f,%.4f,%.4f,%zu\n", key.first.c_str(), key.second,
                      st.throughput.count, st.throughput.mean, st.throughput.variance.value_or(0.0), st.rate.mean,
                      st.active_links.mean, st.iterations.mean, st.converged);
        table += buf;
        thr[key.first].label = key.first;
        thr[key.first].points.emplace_back(key.second, st.throughput.mean);
        links[key.first].label = key.first;
        links[key.first].points.emplace_back(key.second, st.active_links.mean);
    }
    write_file(path_in(dir, "stats.csv"), table);

    auto values = [](const std::map<std::string, Series>& m) {
        std::vector<Series> out;
        for (const auto& [k, s] : m) out.push_back(s);
        return out;
    };
    write_file(path_in(dir, "throughput.svg"),
               svg_line_chart("Mean generalized throughput", "N", "throughput", values(thr)));
    write_file(path_in(dir, "active_links.svg"), svg_line_chart("Mean active links", "N", "links", values(links)));

    try {
        const auto cdf = convergence_cdf(records, Scheme::fuzzy, cap);
        write_file(path_in(dir, "cdf.csv"), cdf_csv(cdf));
        std::vector<Series> curves;
        for (const CdfTable& t : cdf) {
            Series s{"N=" + std::to_string(t.n), {}};
            for (std::size_t k = 0; k < t.cdf.size(); ++k) s.points.emplace_back(k + 1.0, t.cdf[k]);
            curves.push_back(std::move(s));
        }
        write_file(path_in(dir, "cdf.svg"), svg_line_chart("Iterations to converge (fuzzy)", "iterations", "CDF", curves));
    } catch (const std::invalid_argument& e) {
        std::cerr << "skipping CDF: " << e.what() << "\n";
    }
    std::cout << "wrote report to " << dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fuzzy-payoff channel allocation for clustered UAV networks"};
    app.require_subcommand(1);

    Common run_opts, sweep_opts, cdf_opts;
    std::string sweep_ns = "10,20,30,40";
    std::string links_ns;
    std::string cdf_in, report_in, report_out = "out/report";
    int report_cap = 50;

    auto* run_cmd = app.add_subcommand("run", "run every scheme over topologies x trials at one N");
    add_common(run_cmd, run_opts);

    auto* sweep_cmd = app.add_subcommand("sweep", "run the experiment over several node counts");
    add_common(sweep_cmd, sweep_opts);
    sweep_cmd->add_option("--ns", sweep_ns, "comma-separated node counts");
    sweep_cmd->add_option("--active-links", links_ns, "also sweep fuzzy active links over these node counts");

    auto* cdf_cmd = app.add_subcommand("cdf", "convergence CDF from a runs.csv, or from a fresh run");
    add_common(cdf_cmd, cdf_opts);
    cdf_cmd->add_option("--in", cdf_in, "existing runs.csv");

    auto* report_cmd = app.add_subcommand("report", "plot-ready CSV and SVG charts from a runs.csv");
    report_cmd->add_option("--in", report_in, "runs.csv")->required();
    report_cmd->add_option("--out", report_out, "output directory");
    report_cmd->add_option("--cap", report_cap, "iteration cap used for the CDF");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*run_cmd) {
            const ScenarioConfig config = resolve(run_opts);
            ExperimentOptions options;
            options.schemes = schemes_of(run_opts.scheme);
            options.threads = run_opts.threads;
            emit_experiment(config, run_experiment(config, options), run_opts.out);
        } else if (*sweep_cmd) {
            const ScenarioConfig config = resolve(sweep_opts);
            ExperimentOptions options;
            options.schemes = schemes_of(sweep_opts.scheme);
            options.n_values = parse_list(sweep_ns);
            options.threads = sweep_opts.threads;
            emit_experiment(config, run_experiment(config, options), sweep_opts.out);
            if (!links_ns.empty()) {
                std::string csv = "N,active_links\n";
                for (const auto& [n, mean] : active_links_sweep(config, parse_list(links_ns), sweep_opts.threads)) {
                    char buf[64];
                    std::snprintf(buf, sizeof buf, "%d,%.6f\n", n, mean);
                    csv += buf;
                }
                write_file(path_in(sweep_opts.out, "active_links.csv"), csv);
            }
        } else if (*cdf_cmd) {
            const ScenarioConfig config = resolve(cdf_opts);
            std::vector<MetricsRecord> records;
            if (!cdf_in.empty()) {
                records = parse_runs_csv(read_file(cdf_in));
            } else {
                ExperimentOptions options;
                options.schemes = {Scheme::fuzzy};
                options.threads = cdf_opts.threads;
                records = run_experiment(config, options).records;
            }
            std::filesystem::create_directories(cdf_opts.out);
            write_file(path_in(cdf_opts.out, "cdf.csv"),
                       cdf_csv(convergence_cdf(records, Scheme::fuzzy, config.iteration_cap)));
            std::cout << "wrote " << path_in(cdf_opts.out, "cdf.csv") << "\n";
        } else if (*report_cmd) {
            return report(report_in, report_out, report_cap);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

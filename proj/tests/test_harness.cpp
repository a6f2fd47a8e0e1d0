#include "fuzzpoc/harness.hpp"

#include <doctest.h>

#include <filesystem>

using namespace fuzzpoc;

namespace {

ScenarioConfig small() {
    ScenarioConfig c;
    c.topologies = 2;
    c.trials = 2;
    c.n_nodes = 8;
    return c;
}

MetricsRecord rec(Scheme s, int n, int iters, bool converged, double thr = 1.0) {
    MetricsRecord r;
    r.scheme = s;
    r.n = n;
    r.iterations = iters;
    r.converged = converged;
    r.throughput = thr;
    return r;
}

}  // namespace

TEST_CASE("one topology and one trial gives one run per scheme") {
    ScenarioConfig c = small();
    c.topologies = 1;
    c.trials = 1;
    const ExperimentResult r = run_experiment(c);
    CHECK(r.records.size() == 3);
    CHECK(r.failures.empty());
}

TEST_CASE("experiments are reproducible") {
    const ScenarioConfig c = small();
    ExperimentOptions serial;
    serial.threads = 1;
    ExperimentOptions parallel;
    parallel.threads = 4;
    const ExperimentResult a = run_experiment(c, serial);
    const ExperimentResult b = run_experiment(c, parallel);
    CHECK(runs_csv(a.records) == runs_csv(b.records));
    CHECK(summary_json(a.records, 0) == summary_json(b.records, 0));

    ScenarioConfig other = c;
    other.seed = 2;
    CHECK(runs_csv(run_experiment(other, serial).records) != runs_csv(a.records));
}

TEST_CASE("schemes share topology and trial seeds") {
    CHECK(topology_seed(1, 0) != topology_seed(1, 1));
    CHECK(trial_seed(1, 0, 1) != trial_seed(1, 1, 0));
    CHECK(trial_seed(1, 2, 3) == trial_seed(1, 2, 3));
    const ScenarioConfig c = small();
    const MetricsRecord f = run_single(c, Scheme::fuzzy, 8, 1, 1);
    const MetricsRecord again = run_single(c, Scheme::fuzzy, 8, 1, 1);
    CHECK(runs_csv({f}) == runs_csv({again}));
    CHECK(f.c4_violations == 0);
}

TEST_CASE("runs csv round trip") {
    const ExperimentResult r = run_experiment(small());
    const std::string text = runs_csv(r.records);
    CHECK(text.rfind("scheme,N,topo,trial,iters,converged,rate,throughput,active_links,qos_pass\n", 0) == 0);
    const auto back = parse_runs_csv(text);
    CHECK(runs_csv(back) == text);
    CHECK(summary_json(back, 0) == summary_json(r.records, 0));
    CHECK_THROWS_AS(parse_runs_csv("a,b\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_runs_csv(text + "fuzzy,1,2\n"), std::invalid_argument);
}

TEST_CASE("convergence cdf") {
    std::vector<MetricsRecord> recs;
    for (int i = 0; i < 5; ++i) recs.push_back(rec(Scheme::fuzzy, 10, 4, true));
    const auto step = convergence_cdf(recs, Scheme::fuzzy, 8);
    REQUIRE(step.size() == 1);
    for (int k = 1; k <= 8; ++k) CHECK(step[0].cdf[k - 1] == (k >= 4 ? 1.0 : 0.0));

    recs.push_back(rec(Scheme::fuzzy, 10, 8, false));
    recs.push_back(rec(Scheme::fuzzy, 20, 2, true));
    recs.push_back(rec(Scheme::fuzzy, 20, 6, true));
    recs.push_back(rec(Scheme::crisp, 20, 1, true));
    const auto cdf = convergence_cdf(recs, Scheme::fuzzy, 8);
    REQUIRE(cdf.size() == 2);
    CHECK(cdf[0].cdf.back() == doctest::Approx(5.0 / 6.0));
    CHECK(cdf[1].cdf[1] == 0.5);
    for (const auto& t : cdf) {
        for (std::size_t k = 1; k < t.cdf.size(); ++k) CHECK(t.cdf[k] >= t.cdf[k - 1]);
        CHECK(t.cdf.back() <= 1.0);
    }
    CHECK_THROWS_AS(convergence_cdf({}, Scheme::fuzzy, 8), std::invalid_argument);
    CHECK_THROWS_AS(convergence_cdf({rec(Scheme::fuzzy, 10, 8, false)}, Scheme::fuzzy, 8), std::invalid_argument);
}

TEST_CASE("mean and variance per cell") {
    CHECK(describe({3.0, 3.0, 3.0}).variance.value() == 0.0);
    CHECK_FALSE(describe({3.0}).variance.has_value());
    const CellStats s = describe({1.0, 2.0, 3.0, 4.0});
    CHECK(s.mean == 2.5);
    CHECK(s.variance.value() == doctest::Approx(5.0 / 3.0));

    std::vector<MetricsRecord> recs{rec(Scheme::fuzzy, 10, 3, true, 2.0), rec(Scheme::fuzzy, 10, 5, true, 4.0),
                                    rec(Scheme::crisp, 10, 9, false, 7.0)};
    const auto stats = throughput_stats(recs);
    CHECK(stats.at({"fuzzy", 10}).throughput.mean == 3.0);
    CHECK(stats.at({"fuzzy", 10}).iterations.mean == 4.0);
    CHECK(stats.at({"crisp", 10}).converged == 0);
    CHECK_FALSE(stats.at({"crisp", 10}).throughput.variance.has_value());
}

TEST_CASE("a single node is one active link") {
    ScenarioConfig c = small();
    const auto sweep = active_links_sweep(c, {1});
    CHECK(sweep.at(1) == 1.0);
    CHECK_THROWS_AS(active_links_sweep(c, {}), std::invalid_argument);
}

TEST_CASE("summary keys are sorted") {
    const std::string json = summary_json(run_experiment(small()).records, 0);
    CHECK(json.find("\"failures\"") < json.find("\"runs\""));
    CHECK(json.find("\"runs\"") < json.find("\"schemes\""));
    CHECK(json.find("\"crisp\"") < json.find("\"fuzzy\""));
    CHECK(json.find("\"fuzzy\"") < json.find("\"random\""));
}

TEST_CASE("svg chart") {
    const std::string svg = svg_line_chart("t<1>", "x", "y", {{"a", {{0, 1}, {1, 2}}}, {"b", {}}});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("t&lt;1&gt;") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
}

TEST_CASE("file helpers") {
    const auto path = std::filesystem::temp_directory_path() / "fuzzpoc_harness_test.txt";
    write_file(path.string(), "abc\n");
    CHECK(read_file(path.string()) == "abc\n");
    std::filesystem::remove(path);
    CHECK_THROWS(read_file(path.string()));
}

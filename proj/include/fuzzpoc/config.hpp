#pragma once
// Scenario parameters. Powers are given in dBm and converted once on load.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace fuzzpoc {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Vec3&, const Vec3&) = default;
};

double distance(const Vec3& a, const Vec3& b);

double dbm_to_watts(double dbm);

enum class Metric { rate, throughput };
std::string to_string(Metric metric);
Metric metric_from_string(const std::string& text);

enum class IfAggregation { sum, max };

struct ScenarioConfig {
    Vec3 box{200.0, 200.0, 200.0};
    Vec3 gcs_position{100.0, 100.0, 0.0};
    int n_nodes = 10;
    int c_th = 6;

    double p_member_dbm = -10.0;
    double p_head_dbm = 10.0;
    double noise_dbm = -80.0;
    double pmax_factor = 1.0;   // P_max as a multiple of the node's per-channel power

    double gain_k = 1.0;
    double d0 = 10.0;
    double path_loss_exp = 2.0;
    double gain_scaling = 1.0;
    double distance_floor = 1.0;

    int channels = 11;
    int tau = 5;
    std::vector<double> ir_table{132.6, 90.8, 75.9, 46.9, 32.1};
    IfAggregation if_aggregation = IfAggregation::sum;

    double uncertainty_min = 1e-3;
    double uncertainty_max = 1.0;

    double bandwidth = 1.0;
    double r_threshold = 0.5;
    double delta_r = 1e-3;
    double delta_t = 1e-3;

    double zeta = 0.5;
    double eta = 0.8;
    std::string viewpoint = "neutral";
    Metric metric = Metric::throughput;
    int iteration_cap = 50;
    bool keep_incumbent = true;   // switch only to a proposal that is better under the node's belief

    double slot_seconds = 0.1;
    double speed_min = 5.0;
    double speed_max = 15.0;
    double extent_min = 20.0;
    double extent_max = 60.0;

    int topologies = 50;
    int trials = 20;
    std::uint64_t seed = 1;

    double p_member_watts() const { return dbm_to_watts(p_member_dbm); }
    double p_head_watts() const { return dbm_to_watts(p_head_dbm); }
    double noise_watts() const { return dbm_to_watts(noise_dbm); }

    /// Throws std::invalid_argument describing the first bad field.
    void validate() const;
};

/// Parses a JSON object; every key must be a known field.
ScenarioConfig config_from_json(const std::string& text);
ScenarioConfig load_config(const std::string& path);
/// Sorted-key JSON of every field.
std::string config_to_json(const ScenarioConfig& config);

}  // namespace fuzzpoc

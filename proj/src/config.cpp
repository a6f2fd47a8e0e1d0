#include "fuzzpoc/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fuzzpoc {

std::string to_string(Metric metric) { return metric == Metric::rate ? "rate" : "throughput"; }

Metric metric_from_string(const std::string& text) {
    if (text == "rate") return Metric::rate;
    if (text == "throughput") return Metric::throughput;
    throw std::invalid_argument("unknown metric: " + text);
}

namespace {

using json = nlohmann::json;

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(std::string("invalid scenario: ") + what);
}

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected a 3-element array");
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

struct Field {
    std::function<void(ScenarioConfig&, const json&)> read;
    std::function<json(const ScenarioConfig&)> write;
};

template <typename T>
Field plain(T ScenarioConfig::*member) {
    return {[member](ScenarioConfig& c, const json& j) { c.*member = j.get<T>(); },
            [member](const ScenarioConfig& c) { return json(c.*member); }};
}

const std::map<std::string, Field>& fields() {
    static const std::map<std::string, Field> table = [] {
        std::map<std::string, Field> t;
        t["box"] = {[](ScenarioConfig& c, const json& j) { c.box = vec_from_json(j); },
                    [](const ScenarioConfig& c) { return vec_to_json(c.box); }};
        t["gcs_position"] = {[](ScenarioConfig& c, const json& j) { c.gcs_position = vec_from_json(j); },
                             [](const ScenarioConfig& c) { return vec_to_json(c.gcs_position); }};
        t["n_nodes"] = plain(&ScenarioConfig::n_nodes);
        t["c_th"] = plain(&ScenarioConfig::c_th);
        t["p_member_dbm"] = plain(&ScenarioConfig::p_member_dbm);
        t["p_head_dbm"] = plain(&ScenarioConfig::p_head_dbm);
        t["noise_dbm"] = plain(&ScenarioConfig::noise_dbm);
        t["pmax_factor"] = plain(&ScenarioConfig::pmax_factor);
        t["gain_k"] = plain(&ScenarioConfig::gain_k);
        t["d0"] = plain(&ScenarioConfig::d0);
        t["path_loss_exp"] = plain(&ScenarioConfig::path_loss_exp);
        t["gain_scaling"] = plain(&ScenarioConfig::gain_scaling);
        t["distance_floor"] = plain(&ScenarioConfig::distance_floor);
        t["channels"] = plain(&ScenarioConfig::channels);
        t["tau"] = plain(&ScenarioConfig::tau);
        t["ir_table"] = plain(&ScenarioConfig::ir_table);
        t["if_aggregation"] = {
            [](ScenarioConfig& c, const json& j) {
                const auto s = j.get<std::string>();
                if (s == "sum") c.if_aggregation = IfAggregation::sum;
                else if (s == "max") c.if_aggregation = IfAggregation::max;
                else throw std::invalid_argument("if_aggregation must be sum or max");
            },
            [](const ScenarioConfig& c) { return json(c.if_aggregation == IfAggregation::sum ? "sum" : "max"); }};
        t["uncertainty_min"] = plain(&ScenarioConfig::uncertainty_min);
        t["uncertainty_max"] = plain(&ScenarioConfig::uncertainty_max);
        t["bandwidth"] = plain(&ScenarioConfig::bandwidth);
        t["r_threshold"] = plain(&ScenarioConfig::r_threshold);
        t["delta_r"] = plain(&ScenarioConfig::delta_r);
        t["delta_t"] = plain(&ScenarioConfig::delta_t);
        t["zeta"] = plain(&ScenarioConfig::zeta);
        t["eta"] = plain(&ScenarioConfig::eta);
        t["viewpoint"] = plain(&ScenarioConfig::viewpoint);
        t["metric"] = {[](ScenarioConfig& c, const json& j) { c.metric = metric_from_string(j.get<std::string>()); },
                       [](const ScenarioConfig& c) { return json(to_string(c.metric)); }};
        t["iteration_cap"] = plain(&ScenarioConfig::iteration_cap);
        t["keep_incumbent"] = plain(&ScenarioConfig::keep_incumbent);
        t["slot_seconds"] = plain(&ScenarioConfig::slot_seconds);
        t["speed_min"] = plain(&ScenarioConfig::speed_min);
        t["speed_max"] = plain(&ScenarioConfig::speed_max);
        t["extent_min"] = plain(&ScenarioConfig::extent_min);
        t["extent_max"] = plain(&ScenarioConfig::extent_max);
        t["topologies"] = plain(&ScenarioConfig::topologies);
        t["trials"] = plain(&ScenarioConfig::trials);
        t["seed"] = plain(&ScenarioConfig::seed);
        return t;
    }();
    return table;
}

}  // namespace

void ScenarioConfig::validate() const {
    require(box.x > 0.0 && box.y > 0.0 && box.z > 0.0, "box extents must be positive");
    require(n_nodes >= 1, "n_nodes must be at least 1");
    require(c_th >= 1, "c_th must be at least 1");
    require(std::isfinite(p_member_dbm) && std::isfinite(p_head_dbm) && std::isfinite(noise_dbm),
            "powers must be finite");
    require(pmax_factor >= 1.0, "pmax_factor must be at least 1");
    require(gain_k > 0.0 && d0 > 0.0 && path_loss_exp > 0.0 && gain_scaling > 0.0, "gain constants must be positive");
    require(distance_floor > 0.0, "distance_floor must be positive");
    require(channels >= 1 && tau >= 1, "channels and tau must be positive");
    require(tau <= channels, "tau cannot exceed the channel count");
    require(!ir_table.empty() && ir_table.size() <= static_cast<std::size_t>(tau),
            "ir_table needs between 1 and tau entries");
    require(uncertainty_min >= 0.0 && uncertainty_max <= 1.0 && uncertainty_min <= uncertainty_max,
            "uncertainty range must lie inside [0,1]");
    require(bandwidth > 0.0, "bandwidth must be positive");
    require(r_threshold >= 0.0 && delta_r >= 0.0 && delta_t >= 0.0, "QoS thresholds must be non-negative");
    require(zeta >= 0.0 && zeta <= 1.0, "zeta must lie in [0,1]");
    require(eta > 0.0, "eta must be positive");
    require(viewpoint == "optimistic" || viewpoint == "neutral" || viewpoint == "pessimistic",
            "viewpoint must be optimistic, neutral or pessimistic");
    require(iteration_cap >= 1, "iteration_cap must be at least 1");
    require(slot_seconds > 0.0, "slot_seconds must be positive");
    require(speed_min >= 0.0 && speed_min <= speed_max, "speed range is invalid");
    require(extent_min > 0.0 && extent_min <= extent_max, "extent range is invalid");
    require(topologies >= 1 && trials >= 1, "topologies and trials must be at least 1");
}

ScenarioConfig config_from_json(const std::string& text) {
    const json doc = json::parse(text);
    if (!doc.is_object()) throw std::invalid_argument("scenario config must be a JSON object");
    ScenarioConfig config;
    for (const auto& [key, value] : doc.items()) {
        const auto it = fields().find(key);
        if (it == fields().end()) throw std::invalid_argument("unknown config key: " + key);
        try {
            it->second.read(config, value);
        } catch (const json::exception& e) {
            throw std::invalid_argument("bad value for config key " + key + ": " + e.what());
        }
    }
    config.validate();
    return config;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return config_from_json(buffer.str());
}

std::string config_to_json(const ScenarioConfig& config) {
    json doc = json::object();
    for (const auto& [key, field] : fields()) doc[key] = field.write(config);
    return doc.dump(2);
}

}  // namespace fuzzpoc

#include "fuzzpoc/network.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace fuzzpoc {

double distance(const Vec3& a, const Vec3& b) {
    return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

Vec3 NetworkState::receiver_of(int n) const {
    const UavNode& node = nodes[n];
    if (node.is_cluster_head || node.cluster_head_id < 0) return gcs_position;
    return nodes[node.cluster_head_id].position;
}

Clustering form_clusters(const std::vector<Vec3>& positions, int c_th) {
    if (c_th < 1) throw std::invalid_argument("cluster size cap must be at least 1");
    const std::size_t n = positions.size();
    if (n == 0) throw std::invalid_argument("clustering needs at least one node");
    const std::size_t k = (n + c_th - 1) / c_th;

    Vec3 centroid;
    for (const Vec3& p : positions) {
        centroid.x += p.x / n;
        centroid.y += p.y / n;
        centroid.z += p.z / n;
    }
    Clustering out;
    std::vector<double> nearest(n, 0.0);
    std::vector<bool> is_head(n, false);
    std::size_t first = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (distance(positions[i], centroid) > distance(positions[first], centroid)) first = i;
    }
    out.heads.push_back(static_cast<int>(first));
    is_head[first] = true;
    for (std::size_t i = 0; i < n; ++i) nearest[i] = distance(positions[i], positions[first]);
    while (out.heads.size() < k) {
        std::size_t pick = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (is_head[i]) continue;
            if (pick == n || nearest[i] > nearest[pick]) pick = i;
        }
        out.heads.push_back(static_cast<int>(pick));
        is_head[pick] = true;
        for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], distance(positions[i], positions[pick]));
    }

    out.assignment.assign(n, -1);
    std::vector<int> load(n, 0);
    for (int h : out.heads) {
        out.assignment[h] = h;
        load[h] = 1;
    }
    std::vector<std::tuple<double, int, int>> pairs;
    pairs.reserve(n * k);
    for (std::size_t i = 0; i < n; ++i) {
        if (is_head[i]) continue;
        for (int h : out.heads) pairs.emplace_back(distance(positions[i], positions[h]), static_cast<int>(i), h);
    }
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [d, member, head] : pairs) {
        if (out.assignment[member] >= 0 || load[head] >= c_th) continue;
        out.assignment[member] = head;
        ++load[head];
    }
    return out;
}

NetworkState generate_topology(const ScenarioConfig& config, std::uint64_t seed) {
    config.validate();
    Rng rng(seed);
    std::vector<Vec3> positions(config.n_nodes);
    for (Vec3& p : positions) {
        p.x = rng.uniform(0.0, config.box.x);
        p.y = rng.uniform(0.0, config.box.y);
        p.z = rng.uniform(0.0, config.box.z);
    }
    const Clustering clustering = form_clusters(positions, config.c_th);

    NetworkState net;
    net.gcs_position = config.gcs_position;
    net.box = config.box;
    net.nodes.resize(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        UavNode& node = net.nodes[i];
        node.id = static_cast<int>(i);
        node.position = positions[i];
        node.cluster_head_id = clustering.assignment[i];
        node.is_cluster_head = node.cluster_head_id == node.id;
        node.tx_power = node.is_cluster_head ? config.p_head_watts() : config.p_member_watts();
    }
    for (int h : clustering.heads) {
        std::vector<int> cluster{h};
        for (std::size_t i = 0; i < positions.size(); ++i) {
            if (clustering.assignment[i] == h && static_cast<int>(i) != h) cluster.push_back(static_cast<int>(i));
        }
        net.clusters.push_back(std::move(cluster));
    }
    return net;
}

bool clusters_valid(const NetworkState& net, int c_th, double p_member, double p_head) {
    std::vector<int> seen(net.size(), 0);
    for (const auto& cluster : net.clusters) {
        if (cluster.empty() || static_cast<int>(cluster.size()) > c_th) return false;
        const int head = cluster.front();
        for (int id : cluster) {
            if (id < 0 || id >= static_cast<int>(net.size())) return false;
            ++seen[id];
            const UavNode& node = net.nodes[id];
            if (node.cluster_head_id != head) return false;
            if (node.is_cluster_head != (id == head)) return false;
            if (node.tx_power != (node.is_cluster_head ? p_head : p_member)) return false;
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

// ---------------------------------------------------------------------------

std::string to_string(MovementType type) {
    switch (type) {
        case MovementType::stay_at: return "stay_at";
        case MovementType::waypoint: return "waypoint";
        case MovementType::eight: return "eight";
        case MovementType::scan: return "scan";
        case MovementType::oval: return "oval";
    }
    return "stay_at";
}

namespace {

Vec3 clip(const Vec3& p, const Vec3& box) {
    return {std::clamp(p.x, 0.0, box.x), std::clamp(p.y, 0.0, box.y), std::clamp(p.z, 0.0, box.z)};
}

Vec3 draw_target(const MobilityState& m, const Vec3& box, Rng& rng) {
    return clip({m.anchor.x + rng.uniform(-m.extent, m.extent), m.anchor.y + rng.uniform(-m.extent, m.extent),
                 m.anchor.z + rng.uniform(-m.extent, m.extent)},
                box);
}

// Closed zig-zag: three sweeps across the extent, then straight back.
constexpr std::array<std::array<double, 2>, 7> scan_shape{{
    {0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0 / 3.0}, {0.0, 1.0 / 3.0}, {0.0, 2.0 / 3.0}, {1.0, 2.0 / 3.0}, {0.0, 0.0}}};

double scan_length(double extent) {
    double total = 0.0;
    for (std::size_t i = 1; i < scan_shape.size(); ++i) {
        total += extent * std::hypot(scan_shape[i][0] - scan_shape[i - 1][0], scan_shape[i][1] - scan_shape[i - 1][1]);
    }
    return total;
}

}  // namespace

MobilityParams MobilityParams::from_config(const ScenarioConfig& config) {
    return {config.speed_min, config.speed_max, config.extent_min, config.extent_max};
}

std::vector<MobilityState> init_mobility(const NetworkState& net, const MobilityParams& config, Rng& rng) {
    std::vector<MobilityState> out(net.size());
    for (std::size_t i = 0; i < net.size(); ++i) {
        MobilityState& m = out[i];
        m.type = static_cast<MovementType>(rng.index(5));
        m.anchor = net.nodes[i].position;
        m.speed = rng.uniform(config.speed_min, config.speed_max);
        m.extent = rng.uniform(config.extent_min, config.extent_max);
        m.target = m.type == MovementType::waypoint ? draw_target(m, net.box, rng) : m.anchor;
    }
    return out;
}

Vec3 trajectory_point(const MobilityState& m) {
    const double a = m.extent;
    switch (m.type) {
        case MovementType::oval:
            return {m.anchor.x + a * (std::cos(m.phase) - 1.0), m.anchor.y + 0.5 * a * std::sin(m.phase), m.anchor.z};
        case MovementType::eight:
            return {m.anchor.x + a * std::sin(m.phase), m.anchor.y + 0.5 * a * std::sin(2.0 * m.phase), m.anchor.z};
        case MovementType::scan: {
            double s = std::fmod(m.phase, scan_length(a));
            for (std::size_t i = 1; i < scan_shape.size(); ++i) {
                const double dx = a * (scan_shape[i][0] - scan_shape[i - 1][0]);
                const double dy = a * (scan_shape[i][1] - scan_shape[i - 1][1]);
                const double len = std::hypot(dx, dy);
                if (s <= len || i + 1 == scan_shape.size()) {
                    const double f = len > 0.0 ? std::min(s / len, 1.0) : 0.0;
                    return {m.anchor.x + a * scan_shape[i - 1][0] + f * dx,
                            m.anchor.y + a * scan_shape[i - 1][1] + f * dy, m.anchor.z};
                }
                s -= len;
            }
            return m.anchor;
        }
        case MovementType::stay_at:
        case MovementType::waypoint: break;
    }
    return m.anchor;
}

void step_mobility(NetworkState& net, std::vector<MobilityState>& mobility, double dt, Rng& rng) {
    if (!(dt > 0.0)) throw std::invalid_argument("mobility step needs dt > 0");
    if (mobility.size() != net.size()) throw std::invalid_argument("one mobility state per node");
    for (std::size_t i = 0; i < net.size(); ++i) {
        MobilityState& m = mobility[i];
        Vec3& pos = net.nodes[i].position;
        switch (m.type) {
            case MovementType::stay_at: break;
            case MovementType::waypoint: {
                double travel = m.speed * dt;
                // at most a few redraws per step; a degenerate target ends the loop
                for (int hop = 0; hop < 8 && travel > 0.0; ++hop) {
                    const double gap = distance(pos, m.target);
                    if (gap > travel) {
                        const double f = travel / gap;
                        pos = {pos.x + f * (m.target.x - pos.x), pos.y + f * (m.target.y - pos.y),
                               pos.z + f * (m.target.z - pos.z)};
                        break;
                    }
                    pos = m.target;
                    travel -= gap;
                    m.target = draw_target(m, net.box, rng);
                }
                pos = clip(pos, net.box);
                break;
            }
            case MovementType::oval:
            case MovementType::eight:
                m.phase += m.speed / m.extent * dt;
                pos = clip(trajectory_point(m), net.box);
                break;
            case MovementType::scan:
                m.phase = std::fmod(m.phase + m.speed * dt, scan_length(m.extent));
                pos = clip(trajectory_point(m), net.box);
                break;
        }
    }
    ++net.slot;
}

// ---------------------------------------------------------------------------

GainModel GainModel::from_config(const ScenarioConfig& config) {
    GainModel g{config.gain_k, config.d0, config.path_loss_exp, config.gain_scaling, config.distance_floor};
    g.validate();
    return g;
}

void GainModel::validate() const {
    if (!(d0 > 0.0)) throw std::invalid_argument("reference distance must be positive");
    if (!(path_loss_exp > 0.0)) throw std::invalid_argument("path loss exponent must be positive");
    if (!(k > 0.0) || !(scaling > 0.0)) throw std::invalid_argument("gain constants must be positive");
    if (!(distance_floor > 0.0)) throw std::invalid_argument("distance floor must be positive");
}

double channel_gain(const GainModel& model, double d) {
    if (!(d >= model.distance_floor)) throw std::invalid_argument("distance below the gain model floor");
    return model.k * model.scaling * std::pow(model.d0 / d, model.path_loss_exp);
}

UncertainGain estimate_gain(double truth, double rel, Rng& rng) {
    if (!(truth >= 0.0)) throw std::invalid_argument("gain must be non-negative");
    if (!(rel >= 0.0 && rel <= 1.0)) throw std::invalid_argument("relative uncertainty must lie in [0,1]");
    const double delta = std::max(rng.uniform(-rel, rel), -0.5);
    UncertainGain g;
    g.truth = truth;
    g.estimate = truth / (1.0 + delta);
    g.bound = rel * g.estimate;
    if (std::fabs(g.truth - g.estimate) > g.bound) g.estimate = truth;
    return g;
}

Tfn gain_tfn(const UncertainGain& g) { return Tfn::symmetric(g.estimate, g.bound); }

std::string topology_json(const NetworkState& net) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const UavNode& node : net.nodes) {
        doc.push_back({{"cluster", node.cluster_head_id},
                       {"id", node.id},
                       {"position", {node.position.x, node.position.y, node.position.z}},
                       {"role", node.is_cluster_head ? "head" : "member"}});
    }
    return doc.dump(2);
}

}  // namespace fuzzpoc

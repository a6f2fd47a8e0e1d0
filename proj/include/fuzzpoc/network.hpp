#pragma once
// Clustered UAV mesh: node state, clustering, mobility and channel gains.

#include "fuzzpoc/config.hpp"
#include "fuzzpoc/fuzzy.hpp"
#include "fuzzpoc/rng.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fuzzpoc {

struct UavNode {
    int id = 0;
    Vec3 position;
    bool is_cluster_head = false;
    double tx_power = 0.0;   // watts
    bool active = true;
    int cluster_head_id = -1;
};

struct NetworkState {
    std::vector<UavNode> nodes;
    std::vector<std::vector<int>> clusters;   // first entry of each cluster is its head
    Vec3 gcs_position;
    Vec3 box;
    int slot = 0;

    std::size_t size() const { return nodes.size(); }
    /// Where node n's traffic is received: its head, or the ground station for heads.
    Vec3 receiver_of(int n) const;
    /// Hops to the ground station.
    int hop_count(int n) const { return nodes[n].is_cluster_head ? 1 : 2; }
    /// 1 when the node belongs to a cluster with a head.
    double connectivity(int n) const { return nodes[n].cluster_head_id >= 0 ? 1.0 : 0.0; }
};

struct Clustering {
    std::vector<int> heads;
    std::vector<int> assignment;   // node -> head id
};

/// ceil(N / c_th) heads by farthest-point seeding, then capacity-limited
/// nearest-head assignment. Every cluster has at most c_th nodes.
Clustering form_clusters(const std::vector<Vec3>& positions, int c_th);

/// Uniform placement of config.n_nodes nodes in the box, clustered, with
/// head/member powers assigned.
NetworkState generate_topology(const ScenarioConfig& config, std::uint64_t seed);

/// C3 plus role/power consistency.
bool clusters_valid(const NetworkState& net, int c_th, double p_member, double p_head);

enum class MovementType { stay_at, waypoint, eight, scan, oval };
std::string to_string(MovementType type);

struct MobilityState {
    MovementType type = MovementType::stay_at;
    Vec3 anchor;
    double extent = 0.0;   // meters
    double speed = 0.0;    // m/s
    double phase = 0.0;    // angle for oval/eight, arc length for scan
    Vec3 target;           // waypoint only
};

struct MobilityParams {
    double speed_min = 5.0;
    double speed_max = 15.0;
    double extent_min = 20.0;
    double extent_max = 60.0;

    static MobilityParams from_config(const ScenarioConfig& config);
};

/// Movement type drawn uniformly per node; speed and extent uniform in range.
std::vector<MobilityState> init_mobility(const NetworkState& net, const MobilityParams& params, Rng& rng);

/// Position of a periodic trajectory at the given phase, before clipping.
Vec3 trajectory_point(const MobilityState& m);

/// Advances every node by dt seconds and clips to the box.
void step_mobility(NetworkState& net, std::vector<MobilityState>& mobility, double dt, Rng& rng);

struct GainModel {
    double k = 1.0;
    double d0 = 10.0;
    double path_loss_exp = 2.0;
    double scaling = 1.0;
    double distance_floor = 1.0;

    static GainModel from_config(const ScenarioConfig& config);
    void validate() const;
};

/// K * eps * (D0 / D)^exp. Throws std::invalid_argument below the floor.
double channel_gain(const GainModel& model, double distance);

struct UncertainGain {
    double estimate = 0.0;
    double bound = 0.0;
    double truth = 0.0;
};

/// Draws an estimate with |truth - estimate| <= rel * estimate.
UncertainGain estimate_gain(double truth, double rel_uncertainty, Rng& rng);

Tfn gain_tfn(const UncertainGain& g);

/// One JSON object per node: id, position, role, cluster head.
std::string topology_json(const NetworkState& net);

}  // namespace fuzzpoc

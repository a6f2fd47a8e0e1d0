#include "fuzzpoc/network.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

using namespace fuzzpoc;

namespace {

std::map<int, int> cluster_sizes(const Clustering& c) {
    std::map<int, int> out;
    for (int h : c.assignment) ++out[h];
    return out;
}

// Brute force: every point goes to its closest head.
std::vector<int> nearest_heads(const std::vector<Vec3>& pts, const std::vector<int>& heads) {
    std::vector<int> out;
    for (const Vec3& p : pts) {
        int best = heads.front();
        for (int h : heads) {
            if (distance(p, pts[h]) < distance(p, pts[best])) best = h;
        }
        out.push_back(best);
    }
    return out;
}

}  // namespace

TEST_CASE("clustering respects the size cap") {
    ScenarioConfig cfg;
    cfg.n_nodes = 10;
    const NetworkState net = generate_topology(cfg, 42);
    CHECK(net.size() == 10);
    CHECK(net.clusters.size() >= 2);
    for (const auto& c : net.clusters) CHECK(c.size() <= 6);
    CHECK(clusters_valid(net, cfg.c_th, cfg.p_member_watts(), cfg.p_head_watts()));

    const NetworkState again = generate_topology(cfg, 42);
    for (std::size_t i = 0; i < net.size(); ++i) {
        CHECK(net.nodes[i].position == again.nodes[i].position);
        CHECK(net.nodes[i].cluster_head_id == again.nodes[i].cluster_head_id);
    }
    CHECK(net.clusters == again.clusters);

    for (int n : {1, 6, 7, 37, 100}) {
        cfg.n_nodes = n;
        const NetworkState big = generate_topology(cfg, 7 + n);
        CHECK(big.clusters.size() == static_cast<std::size_t>((n + 5) / 6));
        CHECK(clusters_valid(big, cfg.c_th, cfg.p_member_watts(), cfg.p_head_watts()));
    }
}

TEST_CASE("small inputs cluster as expected") {
    const std::vector<Vec3> few{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 3, 0}};
    const Clustering one = form_clusters(few, 6);
    CHECK(one.heads.size() == 1);
    CHECK(cluster_sizes(one).size() == 1);

    const std::vector<Vec3> groups{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0},
                                   {100, 100, 0}, {101, 100, 0}, {100, 101, 0}, {101, 101, 0}};
    const Clustering two = form_clusters(groups, 6);
    REQUIRE(two.heads.size() == 2);
    CHECK(two.assignment == nearest_heads(groups, two.heads));
    for (int i = 0; i < 4; ++i) CHECK(two.assignment[i] == two.assignment[0]);
    for (int i = 4; i < 8; ++i) CHECK(two.assignment[i] == two.assignment[4]);
    CHECK(two.assignment[0] != two.assignment[4]);

    const std::vector<Vec3> stacked(7, Vec3{5, 5, 5});
    std::vector<int> sizes;
    for (const auto& [h, count] : cluster_sizes(form_clusters(stacked, 6))) sizes.push_back(count);
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{1, 6});

    CHECK_THROWS_AS(form_clusters({}, 6), std::invalid_argument);
    CHECK_THROWS_AS(form_clusters(few, 0), std::invalid_argument);
}

TEST_CASE("mobility kinematics") {
    NetworkState net;
    net.box = {1000, 1000, 1000};
    net.nodes.resize(1);
    net.nodes[0].position = {500, 500, 500};
    Rng rng(1);

    std::vector<MobilityState> m(1);
    m[0].type = MovementType::stay_at;
    m[0].anchor = net.nodes[0].position;
    for (int k = 0; k < 10; ++k) step_mobility(net, m, 3.7, rng);
    CHECK(net.nodes[0].position == Vec3{500, 500, 500});
    CHECK(net.slot == 10);

    m[0] = {MovementType::oval, {500, 500, 500}, 40.0, 10.0, 0.0, {}};
    const double period = 2.0 * std::numbers::pi * 40.0 / 10.0;
    step_mobility(net, m, period / 3.0, rng);
    CHECK(distance(net.nodes[0].position, {500, 500, 500}) > 1.0);
    step_mobility(net, m, period / 3.0, rng);
    step_mobility(net, m, period / 3.0, rng);
    CHECK(distance(net.nodes[0].position, {500, 500, 500}) <= 1e-6);

    net.nodes[0].position = {500, 500, 500};
    m[0] = {MovementType::waypoint, {500, 500, 500}, 50.0, 12.0, 0.0, {530, 540, 500}};
    step_mobility(net, m, 0.1, rng);
    CHECK(std::fabs(distance(net.nodes[0].position, {500, 500, 500}) - 1.2) <= 1e-9);

    for (MovementType t : {MovementType::eight, MovementType::scan}) {
        net.nodes[0].position = {500, 500, 500};
        m[0] = {t, {500, 500, 500}, 30.0, 8.0, 0.0, {}};
        CHECK(trajectory_point(m[0]) == Vec3{500, 500, 500});
        step_mobility(net, m, 0.5, rng);
        CHECK(distance(net.nodes[0].position, {500, 500, 500}) > 0.0);
        CHECK(distance(net.nodes[0].position, {500, 500, 500}) <= 2.0 * 30.0);
    }
}

TEST_CASE("motion stays inside the box and keeps clusters") {
    ScenarioConfig cfg;
    cfg.n_nodes = 30;
    NetworkState net = generate_topology(cfg, 9);
    const auto clusters = net.clusters;
    Rng rng(2);
    auto mob = init_mobility(net, MobilityParams::from_config(cfg), rng);
    for (int k = 0; k < 200; ++k) {
        step_mobility(net, mob, 0.5, rng);
        for (const auto& n : net.nodes) {
            CHECK(n.position.x >= 0.0);
            CHECK(n.position.x <= cfg.box.x);
            CHECK(n.position.y >= 0.0);
            CHECK(n.position.y <= cfg.box.y);
            CHECK(n.position.z >= 0.0);
            CHECK(n.position.z <= cfg.box.z);
        }
    }
    CHECK(net.clusters == clusters);
    CHECK(clusters_valid(net, cfg.c_th, cfg.p_member_watts(), cfg.p_head_watts()));
    CHECK_THROWS_AS(step_mobility(net, mob, 0.0, rng), std::invalid_argument);
}

TEST_CASE("path loss") {
    const GainModel g;
    CHECK(channel_gain(g, 10.0) == 1.0);
    CHECK(channel_gain(g, 20.0) == doctest::Approx(0.25).epsilon(1e-15));
    GainModel other{3.0, 10.0, 2.0, 0.7, 1.0};
    for (double d : {1.5, 12.0, 80.0}) {
        CHECK(channel_gain(other, 2.0 * d) == doctest::Approx(channel_gain(other, d) / 4.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(channel_gain(g, 0.5), std::invalid_argument);
}

TEST_CASE("uncertain gain estimates") {
    Rng rng(4);
    for (int t = 0; t < 2000; ++t) {
        const double truth = rng.uniform(1e-9, 1.0);
        const UncertainGain tight = estimate_gain(truth, 1e-3, rng);
        CHECK(std::fabs(tight.estimate - truth) <= 1e-3 * truth * 1.0011);
        CHECK(std::fabs(tight.truth - tight.estimate) <= tight.bound);
        const UncertainGain loose = estimate_gain(truth, 1.0, rng);
        CHECK(std::fabs(loose.truth - loose.estimate) <= loose.bound);
    }
    const UncertainGain zero = estimate_gain(0.0, 0.5, rng);
    CHECK(zero.estimate == 0.0);
    CHECK(zero.bound == 0.0);
    CHECK_THROWS_AS(estimate_gain(1.0, 1.5, rng), std::invalid_argument);

    const Tfn t = gain_tfn({2.0, 0.5, 2.1});
    CHECK(t == Tfn{2.0, 0.5, 0.5});
    CHECK(gain_tfn({2.0, 0.0, 2.0}).is_crisp());
    CHECK(membership(t, 1.5) == 0.0);
    CHECK(membership(t, 2.0) == 1.0);
}

TEST_CASE("roles and receivers") {
    ScenarioConfig cfg;
    cfg.n_nodes = 13;
    const NetworkState net = generate_topology(cfg, 3);
    for (const auto& node : net.nodes) {
        if (node.is_cluster_head) {
            CHECK(net.receiver_of(node.id) == net.gcs_position);
            CHECK(net.hop_count(node.id) == 1);
        } else {
            CHECK(net.receiver_of(node.id) == net.nodes[node.cluster_head_id].position);
            CHECK(net.hop_count(node.id) == 2);
        }
        CHECK(net.connectivity(node.id) == 1.0);
    }
    CHECK(topology_json(net).find("\"role\"") != std::string::npos);
}

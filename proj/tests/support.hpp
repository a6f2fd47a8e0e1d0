#pragma once
// Hand-built radio benches shared by the tests.

#include "fuzzpoc/allocator.hpp"
#include "fuzzpoc/interference.hpp"
#include "fuzzpoc/network.hpp"
#include "fuzzpoc/utility.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <set>

namespace bench {

struct Bench {
    fuzzpoc::NetworkState net;
    fuzzpoc::RadioEnv env;
};

// Every node is its own cluster head unless `head_of[n]` names another node.
// Link gains are overwritten with the world's values on every channel.
inline std::unique_ptr<Bench> make(const oracle::World& w, int m_total, int tau, std::vector<int> head_of = {}) {
    auto b = std::make_unique<Bench>();
    const std::size_t n = w.pos.size();
    if (head_of.empty()) {
        for (std::size_t i = 0; i < n; ++i) head_of.push_back(static_cast<int>(i));
    }
    b->net.box = {1000.0, 1000.0, 1000.0};
    b->net.gcs_position = {0.0, 0.0, 0.0};
    b->net.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& node = b->net.nodes[i];
        node.id = static_cast<int>(i);
        node.position = w.pos[i];
        node.tx_power = w.power[i];
        node.cluster_head_id = head_of[i];
        node.is_cluster_head = head_of[i] == static_cast<int>(i);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!b->net.nodes[i].is_cluster_head) continue;
        std::vector<int> cluster{static_cast<int>(i)};
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i && head_of[j] == static_cast<int>(i)) cluster.push_back(static_cast<int>(j));
        }
        b->net.clusters.push_back(cluster);
    }
    b->env.channels = {m_total, tau};
    b->env.ir = fuzzpoc::IrTable(w.ir);
    b->env.noise = w.noise;
    b->env.bandwidth = w.bandwidth;
    b->env.gain.d0 = w.d0;
    b->env.bind(b->net);
    for (std::size_t i = 0; i < n; ++i) {
        for (int m = 1; m <= m_total; ++m) b->env.link(static_cast<int>(i), m) = w.link_gain[i];
    }
    return b;
}

// A generated topology with gains frozen and a random starting plan.
struct Frozen {
    fuzzpoc::ScenarioConfig config;
    fuzzpoc::NetworkState net;
    fuzzpoc::RadioEnv env;
    fuzzpoc::ChannelPlan plan;
};

inline std::unique_ptr<Frozen> frozen_instance(int n, std::uint64_t seed, int alpha = 1) {
    using namespace fuzzpoc;
    auto f = std::make_unique<Frozen>();
    f->config.n_nodes = n;
    f->net = generate_topology(f->config, seed);
    f->env = RadioEnv::from_config(f->config);
    f->env.bind(f->net);
    Rng rng(derive_seed(seed, "plan"));
    f->plan = ChannelPlan(n);
    for (int i = 0; i < n; ++i) f->plan[i] = random_step(alpha, f->env.channels, rng);
    return f;
}

// channels that are a best single-channel deviation for `node` with everything else held fixed
inline std::set<int> best_responses(const Frozen& f, int node, fuzzpoc::Metric metric) {
    std::vector<double> value;
    for (int m = 1; m <= f.env.channels.m_total; ++m) {
        fuzzpoc::ChannelPlan trial = f.plan;
        trial[node] = {{m}, true};
        value.push_back(fuzzpoc::node_metric(node, trial, f.env, metric));
    }
    const double top = *std::max_element(value.begin(), value.end());
    std::set<int> out;
    for (std::size_t m = 0; m < value.size(); ++m) {
        if (value[m] >= top * (1.0 - 1e-12)) out.insert(static_cast<int>(m) + 1);
    }
    return out;
}

inline fuzzpoc::Dynamics frozen_dynamics(double rel_min, double rel_max) {
    fuzzpoc::Dynamics d;
    d.mobile = false;
    d.fresh_fading = false;
    d.uncertainty_min = rel_min;
    d.uncertainty_max = rel_max;
    return d;
}

// every mutually orthogonal subset of 1..m with spacing tau, including the empty one
inline std::vector<std::vector<int>> node_strategies(int m, int tau) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        out.push_back(cur);
        for (int c = start; c <= m; ++c) {
            if (!cur.empty() && c - cur.back() < tau) continue;
            cur.push_back(c);
            rec(c + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

}  // namespace bench

#include "fuzzpoc/utility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fuzzpoc {

void QosSpec::validate() const {
    if (!(r_threshold >= 0.0) || !(delta_r >= 0.0) || !(delta_t >= 0.0)) {
        throw std::invalid_argument("QoS thresholds must be non-negative");
    }
}

double rate_term(double signal, double interference, double noise, double bandwidth) {
    return bandwidth * std::log2(1.0 + signal / (interference + noise));
}

double channel_metric(const RadioEnv& env, int node, double own_gain, const simd::ChannelLoad& load, Metric metric) {
    const UavNode& n = env.net->nodes[node];
    const double r = rate_term(n.tx_power * own_gain, load.power, env.noise, env.bandwidth);
    if (metric == Metric::rate) return r;
    const double beta = env.net->connectivity(node);
    if (beta == 0.0) return 0.0;
    // infinite factor (co-located transmitter) leaves nothing
    if (std::isinf(load.factor)) return 0.0;
    return beta / env.net->hop_count(node) * r / (load.factor + 1.0);
}

double plan_metric(const RadioEnv& env, int node, const NodePlan& own, std::span<const double> gains,
                   std::span<const simd::ChannelLoad> loads, Metric metric) {
    if (!own.transmits()) return 0.0;
    double total = 0.0;
    for (int m : own.channels) total += channel_metric(env, node, gains[m - 1], loads[m - 1], metric);
    return total;
}

namespace {

double realized(int node, const ChannelPlan& plan, const RadioEnv& env, Metric metric) {
    if (!plan[node].transmits()) return 0.0;
    InterferenceView view;
    view.build(env, plan, node);
    double total = 0.0;
    for (int m : plan[node].channels) {
        total += channel_metric(env, node, env.link(node, m), view.load(env, m), metric);
    }
    return total;
}

}  // namespace

double achievable_rate(int node, const ChannelPlan& plan, const RadioEnv& env) {
    return realized(node, plan, env, Metric::rate);
}

double generalized_throughput(int node, const ChannelPlan& plan, const RadioEnv& env) {
    return realized(node, plan, env, Metric::throughput);
}

double node_metric(int node, const ChannelPlan& plan, const RadioEnv& env, Metric metric) {
    return realized(node, plan, env, metric);
}

double global_utility(const ChannelPlan& plan, const RadioEnv& env, Metric metric) {
    double total = 0.0;
    for (std::size_t n = 0; n < plan.size(); ++n) total += realized(static_cast<int>(n), plan, env, metric);
    return total;
}

bool ConstraintReport::all_pass() const {
    auto ok = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
    return ok(power) && ok(qos) && ok(cluster_size) && ok(orthogonal);
}

std::size_t ConstraintReport::orthogonality_violations() const {
    return static_cast<std::size_t>(std::count(orthogonal.begin(), orthogonal.end(), false));
}

ConstraintReport check_constraints(const ChannelPlan& plan, const RadioEnv& env, const QosSpec& qos,
                                   const ConstraintLimits& limits) {
    const NetworkState& net = *env.net;
    if (plan.size() != net.size()) throw std::invalid_argument("plan and network sizes differ");
    ConstraintReport report;
    const ChannelSet& cs = env.channels;
    for (std::size_t n = 0; n < net.size(); ++n) {
        const NodePlan& p = plan[n];
        const double alpha = static_cast<double>(p.channels.size());
        const double p_max = limits.pmax_factor * net.nodes[n].tx_power;
        const double margin = p_max - alpha * net.nodes[n].tx_power;
        report.power_margin.push_back(margin);
        report.power.push_back(margin >= -1e-12 * p_max);

        const double rate = achievable_rate(static_cast<int>(n), plan, env);
        report.qos_margin.push_back(rate - qos.r_threshold);
        report.qos.push_back(rate >= qos.r_threshold);

        int min_sep = std::numeric_limits<int>::max();
        for (std::size_t i = 0; i < p.channels.size(); ++i) {
            for (std::size_t j = i + 1; j < p.channels.size(); ++j) {
                min_sep = std::min(min_sep, std::abs(p.channels[i] - p.channels[j]));
            }
        }
        const bool ids_ok = std::all_of(p.channels.begin(), p.channels.end(),
                                        [&](int m) { return cs.valid_channel(m); });
        report.orthogonal_margin.push_back(min_sep == std::numeric_limits<int>::max()
                                               ? std::numeric_limits<double>::infinity()
                                               : static_cast<double>(min_sep - cs.tau));
        report.orthogonal.push_back(ids_ok && mutually_orthogonal(p.channels, cs) &&
                                    static_cast<int>(p.channels.size()) <= cs.o_max());
    }
    for (const auto& cluster : net.clusters) {
        const double margin = static_cast<double>(limits.c_th) - static_cast<double>(cluster.size());
        report.cluster_margin.push_back(margin);
        report.cluster_size.push_back(margin >= 0.0);
    }
    return report;
}

Tfn fuzzy_payoff(const RadioEnv& env, int node, const NodePlan& own, std::span<const Tfn> gains,
                 std::span<const simd::ChannelLoad> loads, Metric metric) {
    if (!own.transmits()) return Tfn::crisp(0.0);
    double low = 0.0, mid = 0.0, high = 0.0;
    for (int m : own.channels) {
        const Tfn& g = gains[m - 1];
        low += channel_metric(env, node, std::max(g.lower(), 0.0), loads[m - 1], metric);
        mid += channel_metric(env, node, g.center(), loads[m - 1], metric);
        high += channel_metric(env, node, g.upper(), loads[m - 1], metric);
    }
    return {mid, std::max(mid - low, 0.0), std::max(high - mid, 0.0)};
}

}  // namespace fuzzpoc

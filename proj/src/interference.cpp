#include "fuzzpoc/interference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fuzzpoc {

void ChannelSet::validate() const {
    if (m_total < 1) throw std::invalid_argument("need at least one channel");
    if (tau < 1) throw std::invalid_argument("orthogonal separation must be at least 1");
}

IrTable::IrTable() : ranges_{132.6, 90.8, 75.9, 46.9, 32.1} {}

IrTable::IrTable(std::vector<double> ranges) : ranges_(std::move(ranges)) {
    for (std::size_t i = 0; i < ranges_.size(); ++i) {
        if (!(ranges_[i] > 0.0) || !std::isfinite(ranges_[i])) {
            throw std::invalid_argument("interference ranges must be positive");
        }
        if (i > 0 && !(ranges_[i] < ranges_[i - 1])) {
            throw std::invalid_argument("interference ranges must decrease with separation");
        }
    }
}

double IrTable::operator()(int delta) const {
    if (delta < 0) throw std::invalid_argument("channel separation must be non-negative");
    return static_cast<std::size_t>(delta) < ranges_.size() ? ranges_[delta] : 0.0;
}

double ir(int delta) {
    static const IrTable table;
    return table(delta);
}

double interference_factor(int delta, double d, const IrTable& table) {
    if (!(d >= 0.0)) throw std::invalid_argument("distance must be non-negative");
    const double range = table(delta);
    if (range == 0.0 || d > range) return 0.0;
    if (d == 0.0) return std::numeric_limits<double>::infinity();
    return range / d;
}

std::vector<int> orthogonal_set(int m, const ChannelSet& cs) {
    if (!cs.valid_channel(m)) throw std::invalid_argument("channel id out of range");
    std::vector<int> out;
    for (int j = 1; j <= cs.m_total; ++j) {
        if (std::abs(m - j) >= cs.tau) out.push_back(j);
    }
    return out;
}

bool mutually_orthogonal(std::span<const int> channels, const ChannelSet& cs) {
    for (std::size_t i = 0; i < channels.size(); ++i) {
        if (!cs.valid_channel(channels[i])) return false;
        for (std::size_t j = i + 1; j < channels.size(); ++j) {
            if (std::abs(channels[i] - channels[j]) < cs.tau) return false;
        }
    }
    return true;
}

std::vector<int> maximal_orthogonal_set(const ChannelSet& cs) {
    std::vector<int> out;
    for (int m = 1; m <= cs.m_total; m += cs.tau) out.push_back(m);
    return out;
}

// ---------------------------------------------------------------------------

RadioEnv RadioEnv::from_config(const ScenarioConfig& config) {
    RadioEnv env;
    env.channels = {config.channels, config.tau};
    env.channels.validate();
    env.ir = IrTable(config.ir_table);
    env.gain = GainModel::from_config(config);
    env.aggregation = config.if_aggregation;
    env.noise = config.noise_watts();
    env.bandwidth = config.bandwidth;
    return env;
}

void RadioEnv::bind(const NetworkState& state) {
    net = &state;
    const std::size_t n = state.size();
    pair_distance.assign(n * n, 0.0);
    cross_power.assign(n * n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t i = v + 1; i < n; ++i) {
            const double d = distance(state.nodes[v].position, state.nodes[i].position);
            pair_distance[v * n + i] = d;
            pair_distance[i * n + v] = d;
            const double h = channel_gain(gain, std::max(d, gain.distance_floor));
            cross_power[v * n + i] = state.nodes[i].tx_power * h;
            cross_power[i * n + v] = state.nodes[v].tx_power * h;
        }
    }
    link_gain.assign(n * channels.m_total, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        const double h = path_gain(static_cast<int>(v));
        for (int m = 1; m <= channels.m_total; ++m) link(static_cast<int>(v), m) = h;
    }
}

double RadioEnv::path_gain(int n) const {
    const double d = distance(net->nodes[n].position, net->receiver_of(n));
    return channel_gain(gain, std::max(d, gain.distance_floor));
}

void InterferenceView::build(const RadioEnv& env, const ChannelPlan& plan, int victim) {
    distance_.clear();
    channel_.clear();
    power_.clear();
    const std::size_t n = env.nodes();
    for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<int>(i) == victim || !plan[i].transmits()) continue;
        const double d = env.pair_distance[victim * n + i];
        const double p = env.cross_power[victim * n + i];
        for (int c : plan[i].channels) {
            distance_.push_back(d);
            channel_.push_back(static_cast<double>(c));
            power_.push_back(p);
        }
    }
}

simd::ChannelLoad InterferenceView::load(const RadioEnv& env, int channel) const {
    return simd::kernels().interference(distance_.data(), channel_.data(), power_.data(), distance_.size(),
                                        static_cast<double>(channel), env.ir.data(), env.ir.size(),
                                        env.aggregation == IfAggregation::max);
}

std::vector<simd::ChannelLoad> InterferenceView::all_loads(const RadioEnv& env) const {
    std::vector<simd::ChannelLoad> out(env.channels.m_total);
    for (int m = 1; m <= env.channels.m_total; ++m) out[m - 1] = load(env, m);
    return out;
}

double sinr(int node, int channel, double own_gain, const RadioEnv& env, const ChannelPlan& plan) {
    InterferenceView view;
    view.build(env, plan, node);
    const simd::ChannelLoad l = view.load(env, channel);
    return env.net->nodes[node].tx_power * own_gain / (l.power + env.noise);
}

double aggregate_if(int node, int channel, const RadioEnv& env, const ChannelPlan& plan) {
    InterferenceView view;
    view.build(env, plan, node);
    return view.load(env, channel).factor;
}

}  // namespace fuzzpoc

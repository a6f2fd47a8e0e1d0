#pragma once
// Partially overlapping channels: interference ranges, interference factor,
// orthogonality, and SINR over a frozen radio snapshot.

#include "fuzzpoc/config.hpp"
#include "fuzzpoc/network.hpp"
#include "fuzzpoc/plan.hpp"
#include "fuzzpoc/simd.hpp"

#include <span>
#include <vector>

namespace fuzzpoc {

struct ChannelSet {
    int m_total = 11;
    int tau = 5;

    /// floor((M - 1) / tau) + 1
    int o_max() const { return (m_total - 1) / tau + 1; }
    bool valid_channel(int m) const { return m >= 1 && m <= m_total; }
    void validate() const;
};

class IrTable {
public:
    IrTable();
    /// ranges[delta] for delta < size; strictly decreasing and positive.
    explicit IrTable(std::vector<double> ranges);

    double operator()(int delta) const;
    std::size_t size() const { return ranges_.size(); }
    const double* data() const { return ranges_.data(); }

private:
    std::vector<double> ranges_;
};

/// Default interference range in meters for channel separation delta.
double ir(int delta);

/// 0 when orthogonal or out of range, IR/d in range, infinity at d = 0.
double interference_factor(int delta, double d, const IrTable& table = IrTable{});

std::vector<int> orthogonal_set(int m, const ChannelSet& cs);

bool mutually_orthogonal(std::span<const int> channels, const ChannelSet& cs);

/// Greedy lowest-first mutually orthogonal set: {1, 1 + tau, ...}.
std::vector<int> maximal_orthogonal_set(const ChannelSet& cs);

/// Everything needed to evaluate interference in one slot: geometry, the
/// cross-gain matrix, and each node's own link gain per channel.
struct RadioEnv {
    ChannelSet channels;
    IrTable ir;
    GainModel gain;
    IfAggregation aggregation = IfAggregation::sum;
    double noise = 1e-11;
    double bandwidth = 1.0;

    const NetworkState* net = nullptr;
    std::vector<double> pair_distance;   // n * N + i
    std::vector<double> cross_power;     // P_i * h(d(n, i)), row = victim n
    std::vector<double> link_gain;       // n * M + (m - 1), realized gains

    static RadioEnv from_config(const ScenarioConfig& config);

    /// Recomputes distances and cross gains from the current positions.
    void bind(const NetworkState& state);

    std::size_t nodes() const { return net ? net->size() : 0; }
    double link(int n, int m) const { return link_gain[n * channels.m_total + (m - 1)]; }
    double& link(int n, int m) { return link_gain[n * channels.m_total + (m - 1)]; }
    /// Geometric gain of node n's link to its receiver.
    double path_gain(int n) const;
};

/// Transmissions of every node except the victim, flattened for the kernels.
class InterferenceView {
public:
    void build(const RadioEnv& env, const ChannelPlan& plan, int victim);
    simd::ChannelLoad load(const RadioEnv& env, int channel) const;
    /// Loads for channels 1..M.
    std::vector<simd::ChannelLoad> all_loads(const RadioEnv& env) const;

private:
    std::vector<double> distance_, channel_, power_;
};

double sinr(int node, int channel, double own_gain, const RadioEnv& env, const ChannelPlan& plan);
double aggregate_if(int node, int channel, const RadioEnv& env, const ChannelPlan& plan);

}  // namespace fuzzpoc

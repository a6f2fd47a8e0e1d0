#pragma once
// Per-node achievable rate and generalized throughput, the global utility,
// constraint reporting, and fuzzy payoffs built from uncertain gains.

#include "fuzzpoc/fuzzy.hpp"
#include "fuzzpoc/interference.hpp"
#include "fuzzpoc/plan.hpp"

#include <span>
#include <vector>

namespace fuzzpoc {

struct QosSpec {
    double r_threshold = 0.5;
    double delta_r = 1e-3;
    double delta_t = 1e-3;

    double threshold_for(Metric metric) const { return metric == Metric::rate ? delta_r : delta_t; }
    void validate() const;
};

/// B * log2(1 + signal / (interference + noise))
double rate_term(double signal, double interference, double noise, double bandwidth);

/// Ungated contribution of one channel to the node's metric.
double channel_metric(const RadioEnv& env, int node, double own_gain, const simd::ChannelLoad& load, Metric metric);

/// Node metric for `own` given per-channel own gains (index m - 1) and loads
/// (index m - 1). Zero when the node does not transmit.
double plan_metric(const RadioEnv& env, int node, const NodePlan& own, std::span<const double> gains,
                   std::span<const simd::ChannelLoad> loads, Metric metric);

/// A_n * sum B log2(1 + SINR) over the node's channels, realized gains.
double achievable_rate(int node, const ChannelPlan& plan, const RadioEnv& env);

/// A_n * (beta / kappa) * sum r / (IF + 1), realized gains.
double generalized_throughput(int node, const ChannelPlan& plan, const RadioEnv& env);

double node_metric(int node, const ChannelPlan& plan, const RadioEnv& env, Metric metric);

double global_utility(const ChannelPlan& plan, const RadioEnv& env, Metric metric);

struct ConstraintLimits {
    int c_th = 6;
    double pmax_factor = 1.0;
};

struct ConstraintReport {
    std::vector<bool> power;          // C1 per node
    std::vector<bool> qos;            // C2 per node
    std::vector<bool> cluster_size;   // C3 per cluster
    std::vector<bool> orthogonal;     // C4 per node
    std::vector<double> power_margin;     // P_max - alpha * P
    std::vector<double> qos_margin;       // rate - R_th
    std::vector<double> cluster_margin;   // c_th - |C_i|
    std::vector<double> orthogonal_margin;   // min pairwise separation - tau

    bool all_pass() const;
    std::size_t orthogonality_violations() const;
};

ConstraintReport check_constraints(const ChannelPlan& plan, const RadioEnv& env, const QosSpec& qos,
                                   const ConstraintLimits& limits);

/// Payoff of `own` with symmetric-endpoint propagation of each channel gain
/// (index m - 1): centre at the estimates, deviations from the metric at the
/// lower and upper ends of the gain supports. Interference is held fixed.
Tfn fuzzy_payoff(const RadioEnv& env, int node, const NodePlan& own, std::span<const Tfn> gains,
                 std::span<const simd::ChannelLoad> loads, Metric metric);

}  // namespace fuzzpoc

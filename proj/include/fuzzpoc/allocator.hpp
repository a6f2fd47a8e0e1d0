#pragma once
// Distributed channel allocation: the fuzzy-learning loop, the crisp
// best-response baseline and the random baseline.

#include "fuzzpoc/fuzzy.hpp"
#include "fuzzpoc/interference.hpp"
#include "fuzzpoc/network.hpp"
#include "fuzzpoc/plan.hpp"
#include "fuzzpoc/preference.hpp"
#include "fuzzpoc/rng.hpp"
#include "fuzzpoc/utility.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fuzzpoc {

enum class Scheme { fuzzy, crisp, random };
std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& text);

struct LearnerConfig {
    Metric metric = Metric::throughput;
    Stance stance = Stance::neutral;
    PreferenceParams preference;
    QosSpec qos;
    int iteration_cap = 50;
    double pmax_factor = 1.0;
    QuadratureOptions quadrature;
    /// Keep the incumbent unless the proposal is better under the node's belief.
    bool keep_unless_better = true;

    static LearnerConfig from_config(const ScenarioConfig& config);
    void validate() const;
    /// min(O_M, floor(P_max / P)).
    int channels_per_node(const ChannelSet& cs) const;
};

/// Result of one node's decision.
struct StepOutcome {
    NodePlan plan;
    NodePlan proposal;             // what the ranking suggested before the keep-or-switch check
    std::vector<double> priority;  // w over channels 1..M (empty for random)
    bool adopted = false;          // proposal replaced the incumbent
    bool qos_feasible = false;     // under the node's own belief
};

/// One node's update under fuzzy gains (index m - 1 per channel).
StepOutcome fuzzy_step(int node, const RadioEnv& env, const ChannelPlan& plan, std::span<const Tfn> beliefs,
                       const LearnerConfig& cfg);

/// Same loop with the observed crisp gains in place of fuzzy ones.
StepOutcome crisp_step(int node, const RadioEnv& env, const ChannelPlan& plan, std::span<const double> observed,
                       const LearnerConfig& cfg);

/// Uniform primary channel, then a random mutually orthogonal fill up to alpha.
NodePlan random_step(int alpha, const ChannelSet& cs, Rng& rng);

/// Transmitting nodes whose realized rate meets the threshold.
int active_links(const ChannelPlan& plan, const RadioEnv& env, const QosSpec& qos);

/// Realized payoff a node competes for: its metric when it transmits and
/// meets the rate threshold, otherwise zero.
double node_utility(int node, const ChannelPlan& plan, const RadioEnv& env, const LearnerConfig& cfg);

struct SlotRecord {
    int slot = 0;
    ChannelPlan plan;
    std::vector<double> utility;   // realized node utilities after the slot
    std::vector<double> change;    // per-node utility change from its own update
    double global_rate = 0.0;
    double global_throughput = 0.0;
    int active_links = 0;
    double qos_pass = 0.0;
    bool converged = false;
};

struct AllocationTrace {
    Scheme scheme = Scheme::fuzzy;
    std::vector<SlotRecord> slots;
    bool converged = false;
    int iterations = 0;

    const SlotRecord& final_slot() const { return slots.back(); }
};

/// How gains evolve between slots.
struct Dynamics {
    double slot_seconds = 0.1;
    double uncertainty_min = 1e-3;
    double uncertainty_max = 1.0;
    bool mobile = true;
    bool fresh_fading = true;   // redraw realized gains every slot
    MobilityParams mobility;

    static Dynamics from_config(const ScenarioConfig& config);
};

/// Runs one scheme from the shared random initial plan until every node's
/// utility change falls under the threshold or the cap is hit. All draws
/// come from streams derived from `seed`, so schemes given the same seed see
/// the same topology motion and fading.
AllocationTrace run(NetworkState net, const RadioEnv& env_template, const LearnerConfig& cfg,
                    const Dynamics& dynamics, Scheme scheme, std::uint64_t seed);

}  // namespace fuzzpoc

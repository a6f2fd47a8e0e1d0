#include "fuzzpoc/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace fuzzpoc {

std::string to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::fuzzy: return "fuzzy";
        case Scheme::crisp: return "crisp";
        case Scheme::random: return "random";
    }
    return "fuzzy";
}

Scheme scheme_from_string(const std::string& text) {
    if (text == "fuzzy") return Scheme::fuzzy;
    if (text == "crisp") return Scheme::crisp;
    if (text == "random") return Scheme::random;
    throw std::invalid_argument("unknown scheme: " + text);
}

LearnerConfig LearnerConfig::from_config(const ScenarioConfig& config) {
    LearnerConfig cfg;
    cfg.metric = config.metric;
    cfg.stance = stance_from_string(config.viewpoint);
    cfg.preference.zeta = config.zeta;
    cfg.preference.eta = config.eta;
    cfg.qos.r_threshold = config.r_threshold;
    cfg.qos.delta_r = config.delta_r;
    cfg.qos.delta_t = config.delta_t;
    cfg.iteration_cap = config.iteration_cap;
    cfg.pmax_factor = config.pmax_factor;
    cfg.keep_unless_better = config.keep_incumbent;
    cfg.validate();
    return cfg;
}

void LearnerConfig::validate() const {
    preference.validate();
    qos.validate();
    if (iteration_cap < 1) throw std::invalid_argument("iteration cap must be at least 1");
    if (!(pmax_factor >= 1.0)) throw std::invalid_argument("power budget must allow one channel");
}

int LearnerConfig::channels_per_node(const ChannelSet& cs) const {
    // small tolerance so 4.0 * P / P is not floored to 3
    const int by_power = static_cast<int>(std::floor(pmax_factor + 1e-9));
    return std::max(1, std::min(cs.o_max(), by_power));
}

Dynamics Dynamics::from_config(const ScenarioConfig& config) {
    Dynamics d;
    d.slot_seconds = config.slot_seconds;
    d.uncertainty_min = config.uncertainty_min;
    d.uncertainty_max = config.uncertainty_max;
    d.mobility = MobilityParams::from_config(config);
    return d;
}

namespace {

// Channels ordered by weight, ties to the lower index.
std::vector<int> priority_order(const std::vector<double>& w) {
    std::vector<int> order(w.size());
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return w[a - 1] > w[b - 1]; });
    return order;
}

// Mutually orthogonal subsets of `pool` (already in priority order) with at
// most `limit` members, largest first, lexicographic in priority within a size.
std::vector<std::vector<int>> secondary_candidates(const std::vector<int>& pool, int limit, const ChannelSet& cs) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    std::function<void(std::size_t)> visit = [&](std::size_t start) {
        out.push_back(current);
        if (static_cast<int>(current.size()) == limit) return;
        for (std::size_t i = start; i < pool.size(); ++i) {
            const bool fits = std::all_of(current.begin(), current.end(),
                                          [&](int c) { return std::abs(c - pool[i]) >= cs.tau; });
            if (!fits) continue;
            current.push_back(pool[i]);
            visit(i + 1);
            current.pop_back();
        }
    };
    visit(0);
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return out;
}

StepOutcome ranked_step(int node, const RadioEnv& env, const ChannelPlan& plan, std::span<const Tfn> beliefs,
                        const LearnerConfig& cfg) {
    const ChannelSet& cs = env.channels;
    const int m_total = cs.m_total;
    if (static_cast<int>(beliefs.size()) != m_total) throw std::invalid_argument("one belief per channel");

    InterferenceView view;
    view.build(env, plan, node);
    const std::vector<simd::ChannelLoad> loads = view.all_loads(env);

    std::vector<Tfn> payoffs;
    payoffs.reserve(m_total);
    for (int m = 1; m <= m_total; ++m) {
        payoffs.push_back(fuzzy_payoff(env, node, NodePlan{{m}, true}, beliefs, loads, cfg.metric));
    }
    const Viewpoint viewpoint = make_viewpoint(payoffs, cfg.stance);
    const std::vector<double> index = relative_index(payoffs, viewpoint, cfg.quadrature);
    const FprMatrix fpr = build_fpr(index, cfg.preference.zeta);
    const LeastDeviationResult ld = least_deviation(fpr, cfg.preference, PriorityVector::uniform(m_total));

    StepOutcome out;
    out.priority = ld.weights.weights();
    const std::vector<int> order = priority_order(out.priority);
    const int primary = order.front();
    const int alpha = cfg.channels_per_node(cs);

    std::vector<int> pool;
    for (int c : order) {
        if (std::abs(c - primary) >= cs.tau) pool.push_back(c);
    }

    std::vector<double> centers(m_total);
    for (int m = 0; m < m_total; ++m) centers[m] = beliefs[m].center();
    auto belief_rate = [&](const NodePlan& p) { return plan_metric(env, node, p, centers, loads, Metric::rate); };
    auto belief_metric = [&](const NodePlan& p) { return plan_metric(env, node, p, centers, loads, cfg.metric); };

    NodePlan proposal;
    bool feasible = false;
    double best_rate = -1.0;
    for (const auto& secondary : secondary_candidates(pool, alpha - 1, cs)) {
        NodePlan candidate{{primary}, true};
        candidate.channels.insert(candidate.channels.end(), secondary.begin(), secondary.end());
        const double rate = belief_rate(candidate);
        if (rate >= cfg.qos.r_threshold) {
            proposal = candidate;
            feasible = true;
            break;
        }
        if (rate > best_rate) {
            best_rate = rate;
            proposal = candidate;
        }
    }
    proposal.active = feasible;
    out.proposal = proposal;

    NodePlan incumbent = plan[node];
    incumbent.active = true;
    const bool incumbent_feasible = !incumbent.channels.empty() && belief_rate(incumbent) >= cfg.qos.r_threshold;
    NodePlan trial = proposal;
    trial.active = true;
    const double proposal_value = belief_metric(trial);
    const double incumbent_value = belief_metric(incumbent);

    out.adopted = !cfg.keep_unless_better || incumbent.channels.empty() || (feasible && !incumbent_feasible) ||
                  (feasible == incumbent_feasible && proposal_value > incumbent_value);
    if (out.adopted) {
        out.plan = proposal;
        out.qos_feasible = feasible;
    } else {
        out.plan = incumbent;
        out.plan.active = incumbent_feasible;
        out.qos_feasible = incumbent_feasible;
    }
    return out;
}

}  // namespace

StepOutcome fuzzy_step(int node, const RadioEnv& env, const ChannelPlan& plan, std::span<const Tfn> beliefs,
                       const LearnerConfig& cfg) {
    return ranked_step(node, env, plan, beliefs, cfg);
}

StepOutcome crisp_step(int node, const RadioEnv& env, const ChannelPlan& plan, std::span<const double> observed,
                       const LearnerConfig& cfg) {
    std::vector<Tfn> beliefs;
    beliefs.reserve(observed.size());
    for (double h : observed) beliefs.push_back(Tfn::crisp(h));
    return ranked_step(node, env, plan, beliefs, cfg);
}

NodePlan random_step(int alpha, const ChannelSet& cs, Rng& rng) {
    if (alpha < 1) throw std::invalid_argument("a node needs at least one channel");
    NodePlan out;
    out.channels.push_back(1 + static_cast<int>(rng.index(cs.m_total)));
    while (static_cast<int>(out.channels.size()) < alpha) {
        std::vector<int> open;
        for (int m = 1; m <= cs.m_total; ++m) {
            const bool fits = std::all_of(out.channels.begin(), out.channels.end(),
                                          [&](int c) { return std::abs(c - m) >= cs.tau; });
            if (fits) open.push_back(m);
        }
        if (open.empty()) break;
        out.channels.push_back(open[rng.index(open.size())]);
    }
    return out;
}

int active_links(const ChannelPlan& plan, const RadioEnv& env, const QosSpec& qos) {
    int count = 0;
    for (std::size_t n = 0; n < plan.size(); ++n) {
        if (!plan[n].transmits()) continue;
        if (achievable_rate(static_cast<int>(n), plan, env) >= qos.r_threshold) ++count;
    }
    return count;
}

double node_utility(int node, const ChannelPlan& plan, const RadioEnv& env, const LearnerConfig& cfg) {
    if (!plan[node].transmits()) return 0.0;
    if (achievable_rate(node, plan, env) < cfg.qos.r_threshold) return 0.0;
    return node_metric(node, plan, env, cfg.metric);
}

namespace {

void summarize(SlotRecord& rec, const RadioEnv& env, const LearnerConfig& cfg) {
    const std::size_t n = rec.plan.size();
    rec.utility.assign(n, 0.0);
    rec.global_rate = 0.0;
    rec.global_throughput = 0.0;
    rec.active_links = 0;
    int passing = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int id = static_cast<int>(i);
        const double rate = achievable_rate(id, rec.plan, env);
        const double thr = generalized_throughput(id, rec.plan, env);
        rec.global_rate += rate;
        rec.global_throughput += thr;
        const bool meets = rate >= cfg.qos.r_threshold;
        passing += meets ? 1 : 0;
        if (meets && rec.plan[i].transmits()) {
            ++rec.active_links;
            rec.utility[i] = cfg.metric == Metric::rate ? rate : thr;
        }
    }
    rec.qos_pass = n == 0 ? 0.0 : static_cast<double>(passing) / static_cast<double>(n);
}

}  // namespace

AllocationTrace run(NetworkState net, const RadioEnv& env_template, const LearnerConfig& cfg,
                    const Dynamics& dynamics, Scheme scheme, std::uint64_t seed) {
    cfg.validate();
    if (!(dynamics.uncertainty_min >= 0.0 && dynamics.uncertainty_max <= 1.0 &&
          dynamics.uncertainty_min <= dynamics.uncertainty_max)) {
        throw std::invalid_argument("uncertainty range must lie inside [0,1]");
    }
    const std::size_t n = net.size();
    const ChannelSet& cs = env_template.channels;
    const int m_total = cs.m_total;
    const int alpha = cfg.channels_per_node(cs);

    Rng uncertainty_rng(derive_seed(seed, "uncertainty"));
    std::vector<double> rel(n);
    for (double& r : rel) r = uncertainty_rng.uniform(dynamics.uncertainty_min, dynamics.uncertainty_max);

    Rng mobility_rng(derive_seed(seed, "mobility"));
    std::vector<MobilityState> mobility = init_mobility(net, dynamics.mobility, mobility_rng);

    Rng init_rng(derive_seed(seed, "init"));
    ChannelPlan plan(n);
    for (std::size_t i = 0; i < n; ++i) plan[i] = random_step(alpha, cs, init_rng);

    RadioEnv env = env_template;
    std::vector<double> estimate(n * m_total), observed(n * m_total);
    std::vector<Tfn> beliefs(m_total);

    AllocationTrace trace;
    trace.scheme = scheme;
    const double threshold = cfg.qos.threshold_for(cfg.metric);
    for (int k = 1; k <= cfg.iteration_cap; ++k) {
        if (k > 1 && dynamics.mobile) step_mobility(net, mobility, dynamics.slot_seconds, mobility_rng);
        env.bind(net);
        const std::uint64_t fade_slot = dynamics.fresh_fading ? static_cast<std::uint64_t>(k) : 0;
        Rng fading(derive_seed(seed, "fading", {fade_slot}));
        Rng observing(derive_seed(seed, "observe", {static_cast<std::uint64_t>(k)}));
        for (std::size_t i = 0; i < n; ++i) {
            for (int m = 1; m <= m_total; ++m) {
                const std::size_t at = i * m_total + (m - 1);
                const double h = env.link(static_cast<int>(i), m);
                estimate[at] = h;
                env.link(static_cast<int>(i), m) = h * (1.0 + fading.uniform(-rel[i], rel[i]));
                observed[at] = h * (1.0 + observing.uniform(-rel[i], rel[i]));
            }
        }
        Rng random_rng(derive_seed(seed, "random", {static_cast<std::uint64_t>(k)}));

        SlotRecord rec;
        rec.slot = k;
        rec.change.assign(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const int id = static_cast<int>(i);
            const double before = node_utility(id, plan, env, cfg);
            switch (scheme) {
                case Scheme::fuzzy:
                    for (int m = 0; m < m_total; ++m) {
                        const double h = estimate[i * m_total + m];
                        beliefs[m] = Tfn::symmetric(h, rel[i] * h);
                    }
                    plan[i] = fuzzy_step(id, env, plan, beliefs, cfg).plan;
                    break;
                case Scheme::crisp:
                    plan[i] = crisp_step(id, env, plan,
                                         std::span<const double>(observed).subspan(i * m_total, m_total), cfg)
                                  .plan;
                    break;
                case Scheme::random: plan[i] = random_step(alpha, cs, random_rng); break;
            }
            rec.change[i] = node_utility(id, plan, env, cfg) - before;
        }
        rec.plan = plan;
        summarize(rec, env, cfg);
        rec.converged = scheme != Scheme::random &&
                        std::all_of(rec.change.begin(), rec.change.end(),
                                    [&](double d) { return std::fabs(d) < threshold; });
        trace.slots.push_back(std::move(rec));
        trace.iterations = k;
        if (trace.slots.back().converged) {
            trace.converged = true;
            break;
        }
    }
    return trace;
}

}  // namespace fuzzpoc

#pragma once
// Strategy profile: the channels each node occupies and whether it transmits.

#include <vector>

namespace fuzzpoc {

struct NodePlan {
    std::vector<int> channels;   // 1-based channel ids, primary first
    bool active = true;

    bool transmits() const { return active && !channels.empty(); }
    friend bool operator==(const NodePlan&, const NodePlan&) = default;
};

struct ChannelPlan {
    std::vector<NodePlan> nodes;

    ChannelPlan() = default;
    explicit ChannelPlan(std::size_t n) : nodes(n) {}

    std::size_t size() const { return nodes.size(); }
    NodePlan& operator[](std::size_t n) { return nodes[n]; }
    const NodePlan& operator[](std::size_t n) const { return nodes[n]; }
    friend bool operator==(const ChannelPlan&, const ChannelPlan&) = default;
};

}  // namespace fuzzpoc

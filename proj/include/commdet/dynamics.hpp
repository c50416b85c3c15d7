#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "commdet/graph.hpp"
#include "commdet/ingest.hpp"

namespace commdet {

/// How silent edges fade and when they are cut.
struct DecayPolicy {
    double decay_factor = 0.5;  // weight multiplier per silent interval, in (0,1)
    int cut_after_idle = 2;     // consecutive silent intervals before removal, >= 1

    void validate() const;
};

struct IntervalReport {
    std::vector<std::pair<NodeId, NodeId>> created;
    std::vector<std::pair<NodeId, NodeId>> reinforced;
    std::vector<std::pair<NodeId, NodeId>> decayed;
    std::vector<std::pair<NodeId, NodeId>> cut;
    std::size_t events_applied = 0;
    std::size_t self_messages_dropped = 0;
};

/// Apply one interval's messages: active pairs gain the interval's summed
/// message size and reset their idle counter; silent existing edges decay
/// and are cut once idle for cut_after_idle consecutive intervals. Unknown
/// node ids become isolated nodes first; self-messages are dropped (counted
/// in the report). Per-pair sums are order-independent: sizes are sorted
/// before accumulation.
IntervalReport apply_interval(InteractionGraph& g, const std::vector<MessageEvent>& events,
                              const DecayPolicy& policy);

/// Current message rate between a and b: the maintained edge weight, or 0
/// when no edge is present.
double rate(const InteractionGraph& g, NodeId a, NodeId b);

}  // namespace commdet

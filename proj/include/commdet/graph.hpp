#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace commdet {

using NodeId = std::int64_t;

/// Canonical (u < v) key for an undirected edge.
inline std::pair<NodeId, NodeId> edge_key(NodeId a, NodeId b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

struct EdgeState {
    double weight = 0.0;   // accumulated message intensity, > 0 while present
    int idle_intervals = 0;  // consecutive intervals with no traffic
};

/// Undirected weighted interaction graph.
///
/// Nodes carry an `origin`: the dataset id they represent. Vertex splits
/// mint fresh ids from a monotone counter and both copies inherit the
/// origin of the split vertex, so community membership can always be
/// reported in terms of the users that were actually ingested.
class InteractionGraph {
public:
    // -- queries ------------------------------------------------------
    bool has_node(NodeId id) const;
    bool has_edge(NodeId a, NodeId b) const;
    std::size_t node_count() const { return origin_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    NodeId origin(NodeId id) const;
    std::size_t degree(NodeId id) const;
    const std::map<NodeId, EdgeState>& neighbors(NodeId id) const;
    double edge_weight(NodeId a, NodeId b) const;  // 0 when the edge is absent
    int idle_intervals(NodeId a, NodeId b) const;
    std::vector<NodeId> node_ids() const;  // ascending

    struct Edge {
        NodeId u, v;  // u < v
        double weight;
        int idle_intervals;
    };
    std::vector<Edge> edges() const;  // sorted by (u, v)
    double total_weight() const;

    // -- mutations ----------------------------------------------------
    /// Insert an isolated node with origin = id (no-op when present).
    void ensure_node(NodeId id);

    /// Accumulate message intensity on (a,b), creating the edge if needed.
    /// Resets the edge's idle counter. Self-loops are rejected.
    void add_message_weight(NodeId a, NodeId b, double amount);

    /// Set an edge's exact state (weight must be > 0). Creates endpoints
    /// as needed. Used by the dynamics layer and by graph builders.
    void set_edge(NodeId a, NodeId b, double weight, int idle_intervals = 0);

    void remove_edge(NodeId a, NodeId b);

    /// Replace v by two fresh nodes: the first adopts the edges to
    /// side_a, the second the edges to side_b. The sides must be a
    /// nonempty disjoint cover of v's neighbors. Both copies keep
    /// origin(v). Returns (copy_a, copy_b).
    std::pair<NodeId, NodeId> split_vertex(NodeId v,
                                           const std::vector<NodeId>& side_a,
                                           const std::vector<NodeId>& side_b);

    /// Split with caller-chosen fresh ids; used to replay recorded runs.
    std::pair<NodeId, NodeId> split_vertex_with_ids(NodeId v,
                                                    const std::vector<NodeId>& side_a,
                                                    const std::vector<NodeId>& side_b,
                                                    NodeId copy_a, NodeId copy_b);

    /// Overwrite origin tags after deserialization. Every key must be a
    /// current node; missing nodes keep origin = id.
    void restore_origins(const std::map<NodeId, NodeId>& origins);

private:
    void insert_node(NodeId id, NodeId origin);

    std::map<NodeId, NodeId> origin_;                    // id -> ingested origin
    std::map<NodeId, std::map<NodeId, EdgeState>> adj_;  // symmetric
    std::size_t edge_count_ = 0;
    NodeId next_id_ = 0;  // stays above every id ever seen
};

/// Assignment of original (origin-level) node ids to communities.
/// A node appears in more than one community only via split vertices.
struct Partition {
    std::vector<std::vector<NodeId>> communities;  // each sorted; ordered by first member

    std::vector<NodeId> overlapping_nodes() const;  // ids in >= 2 communities
    bool contains(NodeId id) const;
};

/// Connected components over the graph's current node ids.
std::vector<std::vector<NodeId>> node_components(const InteractionGraph& g);

/// Components mapped through origins. Distinct components may map to
/// overlapping origin sets when a split vertex's copies ended up apart.
Partition to_origin_partition(const std::vector<std::vector<NodeId>>& components,
                              const InteractionGraph& g);

Partition connected_components(const InteractionGraph& g);

/// Origin-level view: every node replaced by its origin, parallel edge
/// weights summed. Split copies of one origin are never adjacent, so no
/// self-loops can arise.
InteractionGraph origin_collapsed(const InteractionGraph& g);

}  // namespace commdet

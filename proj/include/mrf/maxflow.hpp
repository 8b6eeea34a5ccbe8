#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace mrf {

struct CutResult {
    std::int64_t flow_value = 0;
    std::vector<bool> source_side;  // true = node sits in the source component
};

/// s-t network with integer capacities. The two terminals are implicit:
/// each node carries accumulated source-side and sink-side capacities.
///
/// min_cut grows a source tree and a sink tree along residual arcs,
/// augments along every boundary it finds, and re-adopts orphaned subtrees
/// (the augmenting-path scheme standard for vision grid graphs). The result
/// is exact; determinism follows from the fixed arc insertion order.
class FlowNetwork {
public:
    int add_node();
    void add_nodes(int count);
    int node_count() const { return static_cast<int>(first_.size()); }

    /// Directed capacities cap_uv for u -> v and cap_vu for the sister arc.
    /// Zero-capacity arcs are legal and can never affect the cut.
    void add_edge(int u, int v, std::int64_t cap_uv, std::int64_t cap_vu);

    /// Accumulates: two calls with (3, 0) and (2, 0) leave source capacity 5.
    void add_terminal(int node, std::int64_t cap_source, std::int64_t cap_sink);

    /// Solves and caches. The solve consumes stored capacities, so mutating
    /// the network afterwards throws; clear() rearms it. Nodes disconnected
    /// from the source in the residual network (including nodes that never
    /// had terminal capacity) land on the sink side.
    CutResult min_cut();

    /// Forgets nodes and arcs but keeps buffer allocations for reuse.
    void clear();

    /// DIMACS max-flow dump of the capacities as currently stored; emit
    /// before min_cut to capture the constructed problem. Terminals become
    /// explicit nodes numbered node_count()+1 and node_count()+2.
    void dump_dimacs(std::ostream& out) const;

private:
    struct Arc {
        std::int32_t head;
        std::int32_t next;
        std::int64_t rcap;
    };

    static constexpr std::int32_t kNone = -1;
    static constexpr std::int32_t kTerminal = -2;
    enum : std::uint8_t { kFree = 0, kTreeS = 1, kTreeT = 2 };

    std::vector<Arc> arcs_;
    std::vector<std::int32_t> first_;
    std::vector<std::int64_t> src_cap_;
    std::vector<std::int64_t> snk_cap_;

    // search state, valid during min_cut
    std::vector<std::int64_t> tr_;
    std::vector<std::int32_t> parent_;
    std::vector<std::uint8_t> tree_;
    std::vector<std::int32_t> ts_;
    std::vector<std::int32_t> dist_;
    std::vector<std::uint8_t> in_queue_;
    std::vector<std::int32_t> active_;
    std::size_t active_head_ = 0;
    std::vector<std::int32_t> orphans_;
    std::int32_t time_ = 0;
    std::int64_t flow_ = 0;
    bool solved_ = false;
    CutResult cached_;

    void require_unsolved() const;
    void push_active(std::int32_t node);
    std::int32_t pop_active();
    void augment(std::int32_t boundary_arc);
    void adopt_all();
    int origin_distance(std::int32_t node);
};

}  // namespace mrf

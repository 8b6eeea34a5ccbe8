#include "mrf/maxflow.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace mrf {

void FlowNetwork::require_unsolved() const {
    if (solved_) throw std::logic_error("flow network already solved; clear() before mutating");
}

int FlowNetwork::add_node() {
    require_unsolved();
    first_.push_back(kNone);
    src_cap_.push_back(0);
    snk_cap_.push_back(0);
    return node_count() - 1;
}

void FlowNetwork::add_nodes(int count) {
    require_unsolved();
    if (count < 0) throw std::invalid_argument("negative node count");
    first_.resize(first_.size() + count, kNone);
    src_cap_.resize(src_cap_.size() + count, 0);
    snk_cap_.resize(snk_cap_.size() + count, 0);
}

void FlowNetwork::add_edge(int u, int v, std::int64_t cap_uv, std::int64_t cap_vu) {
    require_unsolved();
    if (u < 0 || u >= node_count() || v < 0 || v >= node_count()) throw std::out_of_range("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (cap_uv < 0 || cap_vu < 0) throw std::invalid_argument("negative capacity");
    const std::int32_t a = static_cast<std::int32_t>(arcs_.size());
    arcs_.push_back(Arc{static_cast<std::int32_t>(v), first_[u], cap_uv});
    arcs_.push_back(Arc{static_cast<std::int32_t>(u), first_[v], cap_vu});
    first_[u] = a;
    first_[v] = a + 1;
}

void FlowNetwork::add_terminal(int node, std::int64_t cap_source, std::int64_t cap_sink) {
    require_unsolved();
    if (node < 0 || node >= node_count()) throw std::out_of_range("terminal node out of range");
    if (cap_source < 0 || cap_sink < 0) throw std::invalid_argument("negative capacity");
    src_cap_[node] += cap_source;
    snk_cap_[node] += cap_sink;
}

void FlowNetwork::clear() {
    arcs_.clear();
    first_.clear();
    src_cap_.clear();
    snk_cap_.clear();
    solved_ = false;
    cached_ = CutResult{};
}

void FlowNetwork::push_active(std::int32_t node) {
    if (!in_queue_[node]) {
        in_queue_[node] = 1;
        active_.push_back(node);
    }
}

std::int32_t FlowNetwork::pop_active() {
    while (active_head_ < active_.size()) {
        const std::int32_t p = active_[active_head_++];
        in_queue_[p] = 0;
        if (tree_[p] != kFree) return p;
        // compact once the dead prefix dominates
        if (active_head_ > 1024 && active_head_ * 2 > active_.size()) {
            active_.erase(active_.begin(), active_.begin() + static_cast<std::ptrdiff_t>(active_head_));
            active_head_ = 0;
        }
    }
    return kNone;
}

// Walks parent arcs until a terminal or an already-stamped node; returns the
// node's hop count from its terminal, or -1 when the walk dead-ends in an
// orphan. Stamps the walked prefix so later walks stop early.
int FlowNetwork::origin_distance(std::int32_t node) {
    int d = 0;
    std::int32_t x = node;
    while (true) {
        if (ts_[x] == time_) {
            d += dist_[x];
            break;
        }
        const std::int32_t pa = parent_[x];
        if (pa == kTerminal) {
            ++d;
            break;
        }
        if (pa == kNone) return -1;
        x = arcs_[pa].head;
        ++d;
    }
    int dd = d;
    x = node;
    while (ts_[x] != time_) {
        dist_[x] = dd--;
        ts_[x] = time_;
        if (parent_[x] == kTerminal) break;
        x = arcs_[parent_[x]].head;
    }
    return d;
}

void FlowNetwork::augment(std::int32_t boundary_arc) {
    // boundary_arc runs from a source-tree node to a sink-tree node
    std::int64_t bottleneck = arcs_[boundary_arc].rcap;
    std::int32_t x = arcs_[boundary_arc ^ 1].head;
    while (parent_[x] != kTerminal) {
        const std::int32_t pa = parent_[x];
        bottleneck = std::min(bottleneck, arcs_[pa ^ 1].rcap);
        x = arcs_[pa].head;
    }
    bottleneck = std::min(bottleneck, tr_[x]);
    x = arcs_[boundary_arc].head;
    while (parent_[x] != kTerminal) {
        const std::int32_t pa = parent_[x];
        bottleneck = std::min(bottleneck, arcs_[pa].rcap);
        x = arcs_[pa].head;
    }
    bottleneck = std::min(bottleneck, -tr_[x]);

    arcs_[boundary_arc].rcap -= bottleneck;
    arcs_[boundary_arc ^ 1].rcap += bottleneck;

    x = arcs_[boundary_arc ^ 1].head;
    while (parent_[x] != kTerminal) {
        const std::int32_t pa = parent_[x];
        arcs_[pa ^ 1].rcap -= bottleneck;
        arcs_[pa].rcap += bottleneck;
        const std::int32_t up = arcs_[pa].head;
        if (arcs_[pa ^ 1].rcap == 0) {
            parent_[x] = kNone;
            orphans_.push_back(x);
        }
        x = up;
    }
    tr_[x] -= bottleneck;
    if (tr_[x] == 0) {
        parent_[x] = kNone;
        orphans_.push_back(x);
    }

    x = arcs_[boundary_arc].head;
    while (parent_[x] != kTerminal) {
        const std::int32_t pa = parent_[x];
        arcs_[pa].rcap -= bottleneck;
        arcs_[pa ^ 1].rcap += bottleneck;
        const std::int32_t down = arcs_[pa].head;
        if (arcs_[pa].rcap == 0) {
            parent_[x] = kNone;
            orphans_.push_back(x);
        }
        x = down;
    }
    tr_[x] += bottleneck;
    if (tr_[x] == 0) {
        parent_[x] = kNone;
        orphans_.push_back(x);
    }

    flow_ += bottleneck;
}

void FlowNetwork::adopt_all() {
    for (std::size_t next = 0; next < orphans_.size(); ++next) {
        const std::int32_t o = orphans_[next];
        const std::uint8_t side = tree_[o];
        ++time_;

        std::int32_t best_arc = kNone;
        int best_d = -1;
        for (std::int32_t a = first_[o]; a != kNone; a = arcs_[a].next) {
            const std::int64_t residual = side == kTreeS ? arcs_[a ^ 1].rcap : arcs_[a].rcap;
            if (residual <= 0) continue;
            const std::int32_t q = arcs_[a].head;
            if (tree_[q] != side) continue;
            const int d = origin_distance(q);
            if (d < 0) continue;
            if (best_d < 0 || d < best_d) {
                best_d = d;
                best_arc = a;
            }
        }

        if (best_arc != kNone) {
            parent_[o] = best_arc;
            dist_[o] = best_d + 1;
            ts_[o] = time_;
            continue;
        }

        // no parent: o leaves the tree; neighbors that could regrow it wake
        // up, and children of o become orphans themselves
        for (std::int32_t a = first_[o]; a != kNone; a = arcs_[a].next) {
            const std::int32_t q = arcs_[a].head;
            if (tree_[q] != side) continue;
            const std::int64_t residual = side == kTreeS ? arcs_[a ^ 1].rcap : arcs_[a].rcap;
            if (residual > 0) push_active(q);
            const std::int32_t qp = parent_[q];
            if (qp >= 0 && arcs_[qp].head == o) {
                parent_[q] = kNone;
                orphans_.push_back(q);
            }
        }
        tree_[o] = kFree;
    }
    orphans_.clear();
}

CutResult FlowNetwork::min_cut() {
    if (solved_) return cached_;
    const int n = node_count();

    tr_.assign(n, 0);
    parent_.assign(n, kNone);
    tree_.assign(n, kFree);
    ts_.assign(n, -1);
    dist_.assign(n, 0);
    in_queue_.assign(n, 0);
    active_.clear();
    active_head_ = 0;
    orphans_.clear();
    time_ = 0;
    flow_ = 0;

    std::int64_t base = 0;
    for (int u = 0; u < n; ++u) {
        base += std::min(src_cap_[u], snk_cap_[u]);
        tr_[u] = src_cap_[u] - snk_cap_[u];
        if (tr_[u] > 0) {
            tree_[u] = kTreeS;
            parent_[u] = kTerminal;
            dist_[u] = 1;
            ts_[u] = 0;
            push_active(u);
        } else if (tr_[u] < 0) {
            tree_[u] = kTreeT;
            parent_[u] = kTerminal;
            dist_[u] = 1;
            ts_[u] = 0;
            push_active(u);
        }
    }

    while (true) {
        const std::int32_t p = pop_active();
        if (p == kNone) break;
        const std::uint8_t side = tree_[p];

        std::int32_t boundary = kNone;
        for (std::int32_t a = first_[p]; a != kNone; a = arcs_[a].next) {
            const std::int32_t out = side == kTreeS ? a : (a ^ 1);  // arc carrying flow away from the source
            if (arcs_[out].rcap <= 0) continue;
            const std::int32_t q = arcs_[a].head;
            if (tree_[q] == kFree) {
                tree_[q] = side;
                parent_[q] = a ^ 1;
                dist_[q] = dist_[p] + 1;
                ts_[q] = ts_[p];
                push_active(q);
            } else if (tree_[q] != side) {
                boundary = out;
                break;
            }
        }

        if (boundary != kNone) {
            push_active(p);  // p may border further augmenting paths
            augment(boundary);
            adopt_all();
        }
    }

    cached_.flow_value = base + flow_;
    cached_.source_side.assign(static_cast<std::size_t>(n), false);
    for (int u = 0; u < n; ++u)
        if (tree_[u] == kTreeS) cached_.source_side[u] = true;
    solved_ = true;
    return cached_;
}

void FlowNetwork::dump_dimacs(std::ostream& out) const {
    const int n = node_count();
    const int s = n + 1, t = n + 2;
    std::size_t lines = 0;
    for (const Arc& a : arcs_)
        if (a.rcap > 0) ++lines;
    for (int u = 0; u < n; ++u) lines += (src_cap_[u] > 0) + (snk_cap_[u] > 0);

    out << "p max " << n + 2 << ' ' << lines << '\n';
    out << "n " << s << " s\n";
    out << "n " << t << " t\n";
    for (int u = 0; u < n; ++u) {
        if (src_cap_[u] > 0) out << "a " << s << ' ' << u + 1 << ' ' << src_cap_[u] << '\n';
        if (snk_cap_[u] > 0) out << "a " << u + 1 << ' ' << t << ' ' << snk_cap_[u] << '\n';
    }
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        if (arcs_[i].rcap <= 0) continue;
        const int tail = arcs_[i ^ 1].head;
        out << "a " << tail + 1 << ' ' << arcs_[i].head + 1 << ' ' << arcs_[i].rcap << '\n';
    }
}

}  // namespace mrf

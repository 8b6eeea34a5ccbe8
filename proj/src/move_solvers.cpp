#include "mrf/move_solvers.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <random>
#include <stdexcept>

namespace mrf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_matching(const MrfModel& model, const Labeling& labeling) {
    if (labeling.width != model.width || labeling.height != model.height)
        throw std::invalid_argument("labeling shape does not match the model");
    for (std::uint8_t v : labeling.values)
        if (model.value_to_index[v] < 0) throw std::invalid_argument("labeling uses a value outside the label set");
}

std::int64_t masked_data_cost(const MrfModel& model, std::size_t flat, std::uint8_t label) {
    if (model.missing(flat)) return 0;
    const std::int64_t d = static_cast<std::int64_t>(label) - static_cast<std::int64_t>(model.observed.pixels[flat]);
    return d * d;
}

// Portable bounded draw + Fisher-Yates; std::shuffle's draw sequence is
// implementation-defined, which would break cross-platform reproducibility.
void seeded_shuffle(std::vector<std::uint8_t>& values, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::uint64_t bound = i;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t r;
        do {
            r = rng();
        } while (r >= limit);
        std::swap(values[i - 1], values[r % bound]);
    }
}

std::vector<std::uint8_t> ordered_labels(const MrfModel& model, const SolverConfig& config) {
    std::vector<std::uint8_t> order = model.labels;
    if (config.label_order == LabelOrder::SeededRandom) seeded_shuffle(order, config.order_seed);
    return order;
}

}  // namespace

SolveResult run_icm(const MrfModel& model, const Labeling& init, const SolverConfig& config) {
    require_matching(model, init);
    const auto start = Clock::now();
    SolveResult result{init, {}};
    Labeling& labeling = result.labeling;
    result.trace.samples.push_back({0, total_energy(model, labeling), seconds_since(start)});

    const int m = model.label_count();
    for (int cycle = 1; cycle <= config.max_cycles; ++cycle) {
        bool changed = false;
        for (int r = 0; r < model.height; ++r) {
            for (int c = 0; c < model.width; ++c) {
                const std::size_t i = model.index(r, c);
                std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
                std::uint8_t best_label = labeling.values[i];
                for (int li = 0; li < m; ++li) {
                    const std::uint8_t l = model.labels[li];
                    std::int64_t cost = masked_data_cost(model, i, l);
                    std::int64_t smooth = 0;
                    if (c > 0) smooth += smoothness_cost(model, l, labeling.values[i - 1]);
                    if (c + 1 < model.width) smooth += smoothness_cost(model, l, labeling.values[i + 1]);
                    if (r > 0) smooth += smoothness_cost(model, l, labeling.values[i - model.width]);
                    if (r + 1 < model.height) smooth += smoothness_cost(model, l, labeling.values[i + model.width]);
                    cost += model.lambda * smooth;
                    if (cost < best_cost) {
                        best_cost = cost;
                        best_label = l;
                    }
                }
                if (best_label != labeling.values[i]) {
                    labeling.values[i] = best_label;
                    changed = true;
                }
            }
        }
        result.trace.samples.push_back({cycle, total_energy(model, labeling), seconds_since(start)});
        if (!changed) break;
    }
    return result;
}

ExpansionGraphStats build_expansion_network(const MrfModel& model, const Labeling& current, std::uint8_t alpha,
                                            FlowNetwork& net) {
    net.clear();
    const int n = static_cast<int>(model.pixel_count());
    net.add_nodes(n);
    ExpansionGraphStats stats{n, 0};

    // sink side of the cut = pixel switches to alpha
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
        net.add_terminal(static_cast<int>(i), masked_data_cost(model, i, alpha),
                         masked_data_cost(model, i, current.values[i]));

    const std::int64_t w = model.lambda;
    auto add_pair = [&](std::size_t p, std::size_t q) {
        const std::uint8_t lp = current.values[p], lq = current.values[q];
        if (lp == lq) {
            const std::int64_t cap = w * smoothness_cost(model, lp, alpha);
            if (cap > 0) net.add_edge(static_cast<int>(p), static_cast<int>(q), cap, cap);
            return;
        }
        // Disagreeing pair: an auxiliary node pays V(lp, lq) toward the sink
        // when both endpoints keep their labels, and the side arcs pay the
        // label-to-alpha costs otherwise. For truncated-quadratic V this
        // construction clamps each pair entry at the sum of the other two,
        // which is exactly the submodularity repair.
        const int a = net.add_node();
        const std::int64_t to_a = w * smoothness_cost(model, lp, alpha);
        const std::int64_t from_a = w * smoothness_cost(model, alpha, lq);
        if (to_a > 0) net.add_edge(static_cast<int>(p), a, to_a, to_a);
        if (from_a > 0) net.add_edge(a, static_cast<int>(q), from_a, from_a);
        net.add_terminal(a, 0, w * smoothness_cost(model, lp, lq));
        ++stats.aux_nodes;
    };

    for (int r = 0; r < model.height; ++r) {
        for (int c = 0; c < model.width; ++c) {
            const std::size_t i = model.index(r, c);
            if (c + 1 < model.width) add_pair(i, i + 1);
            if (r + 1 < model.height) add_pair(i, i + static_cast<std::size_t>(model.width));
        }
    }
    return stats;
}

namespace {

MoveResult expansion_move_with(const MrfModel& model, const Labeling& current, std::uint8_t alpha, FlowNetwork& net,
                               std::int64_t before) {
    build_expansion_network(model, current, alpha, net);
    const CutResult cut = net.min_cut();

    Labeling moved = current;
    for (std::size_t i = 0; i < model.pixel_count(); ++i)
        if (!cut.source_side[i]) moved.values[i] = alpha;

    const std::int64_t after = total_energy(model, moved);
    if (after < before) return MoveResult{std::move(moved), after};
    return MoveResult{current, before};
}

}  // namespace

MoveResult expansion_move(const MrfModel& model, const Labeling& current, std::uint8_t alpha) {
    require_matching(model, current);
    if (model.value_to_index[alpha] < 0) throw std::invalid_argument("alpha is not in the label set");
    FlowNetwork net;
    return expansion_move_with(model, current, alpha, net, total_energy(model, current));
}

namespace {

// One alpha/beta swap over `members` (the alpha/beta pixels in raster
// order). Applies the cut labeling to `current` in place when it strictly
// lowers the energy and returns the (negative) exact change, otherwise
// leaves `current` alone and returns 0. `node_of` must be -1 everywhere on
// entry and is restored to that state before returning.
std::int64_t swap_move_apply(const MrfModel& model, Labeling& current, std::uint8_t alpha, std::uint8_t beta,
                             FlowNetwork& net, std::vector<std::int32_t>& node_of,
                             const std::vector<std::size_t>& members) {
    if (members.empty()) return 0;
    for (std::size_t mi = 0; mi < members.size(); ++mi) node_of[members[mi]] = static_cast<std::int32_t>(mi);

    net.clear();
    net.add_nodes(static_cast<int>(members.size()));
    const std::int64_t w = model.lambda;
    const std::int64_t pair_cap = w * smoothness_cost(model, alpha, beta);

    for (std::size_t mi = 0; mi < members.size(); ++mi) {
        const std::size_t i = members[mi];
        const int r = static_cast<int>(i) / model.width;
        const int c = static_cast<int>(i) % model.width;
        // source side = alpha, so the sink-side capacity carries beta's costs
        std::int64_t cost_alpha = masked_data_cost(model, i, alpha);
        std::int64_t cost_beta = masked_data_cost(model, i, beta);
        auto frozen_neighbor = [&](std::size_t j) {
            if (node_of[j] >= 0) return;
            cost_alpha += w * smoothness_cost(model, alpha, current.values[j]);
            cost_beta += w * smoothness_cost(model, beta, current.values[j]);
        };
        if (c > 0) frozen_neighbor(i - 1);
        if (c + 1 < model.width) frozen_neighbor(i + 1);
        if (r > 0) frozen_neighbor(i - static_cast<std::size_t>(model.width));
        if (r + 1 < model.height) frozen_neighbor(i + static_cast<std::size_t>(model.width));
        net.add_terminal(static_cast<int>(mi), cost_beta, cost_alpha);

        if (pair_cap > 0) {
            if (c + 1 < model.width && node_of[i + 1] >= 0)
                net.add_edge(static_cast<int>(mi), node_of[i + 1], pair_cap, pair_cap);
            if (r + 1 < model.height && node_of[i + static_cast<std::size_t>(model.width)] >= 0)
                net.add_edge(static_cast<int>(mi), node_of[i + static_cast<std::size_t>(model.width)], pair_cap, pair_cap);
        }
    }

    const CutResult cut = net.min_cut();

    // exact energy change of adopting the cut labeling, accumulated over the
    // touched pixels only; pairs between two members are counted once via
    // the right/down walk, member-to-frozen pairs once from the member side
    auto new_value = [&](std::size_t j) {
        return node_of[j] >= 0 ? (cut.source_side[node_of[j]] ? alpha : beta) : current.values[j];
    };
    std::int64_t delta = 0;
    for (std::size_t mi = 0; mi < members.size(); ++mi) {
        const std::size_t i = members[mi];
        const std::uint8_t old_i = current.values[i];
        const std::uint8_t new_i = cut.source_side[mi] ? alpha : beta;
        delta += masked_data_cost(model, i, new_i) - masked_data_cost(model, i, old_i);
        const int r = static_cast<int>(i) / model.width;
        const int c = static_cast<int>(i) % model.width;
        auto pair_delta = [&](std::size_t j) {
            delta += w * (smoothness_cost(model, new_i, new_value(j)) - smoothness_cost(model, old_i, current.values[j]));
        };
        if (c + 1 < model.width) pair_delta(i + 1);
        if (r + 1 < model.height) pair_delta(i + static_cast<std::size_t>(model.width));
        if (c > 0 && node_of[i - 1] < 0) pair_delta(i - 1);
        if (r > 0 && node_of[i - static_cast<std::size_t>(model.width)] < 0)
            pair_delta(i - static_cast<std::size_t>(model.width));
    }

    if (delta < 0)
        for (std::size_t mi = 0; mi < members.size(); ++mi)
            current.values[members[mi]] = cut.source_side[mi] ? alpha : beta;
    for (std::size_t i : members) node_of[i] = -1;
    return delta < 0 ? delta : 0;
}

}  // namespace

MoveResult swap_move(const MrfModel& model, const Labeling& current, std::uint8_t alpha, std::uint8_t beta) {
    require_matching(model, current);
    if (model.value_to_index[alpha] < 0 || model.value_to_index[beta] < 0)
        throw std::invalid_argument("swap labels must be in the label set");
    if (alpha == beta) throw std::invalid_argument("swap labels must differ");
    FlowNetwork net;
    std::vector<std::int32_t> node_of(model.pixel_count(), -1);
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < model.pixel_count(); ++i)
        if (current.values[i] == alpha || current.values[i] == beta) members.push_back(i);
    MoveResult result{current, total_energy(model, current)};
    result.energy += swap_move_apply(model, result.labeling, alpha, beta, net, node_of, members);
    return result;
}

namespace {

// Shared cycle driver for the two move-making solvers.
template <typename MoveSweep>
SolveResult run_moves(const MrfModel& model, const Labeling& init, const SolverConfig& config, MoveSweep sweep) {
    require_matching(model, init);
    const auto start = Clock::now();
    SolveResult result{init, {}};
    std::int64_t energy = total_energy(model, init);
    result.trace.samples.push_back({0, energy, seconds_since(start)});

    for (int cycle = 1; cycle <= config.max_cycles; ++cycle) {
        const std::int64_t cycle_start_energy = energy;
        const bool any_accepted = sweep(result.labeling, energy);
        result.trace.samples.push_back({cycle, energy, seconds_since(start)});
        if (!any_accepted) break;
        if (cycle_start_energy - energy < config.improvement_epsilon) break;
    }
    return result;
}

}  // namespace

SolveResult run_expansion(const MrfModel& model, const Labeling& init, const SolverConfig& config) {
    const std::vector<std::uint8_t> order = ordered_labels(model, config);
    FlowNetwork net;
    return run_moves(model, init, config, [&](Labeling& labeling, std::int64_t& energy) {
        bool accepted = false;
        for (std::uint8_t alpha : order) {
            MoveResult move = expansion_move_with(model, labeling, alpha, net, energy);
            if (move.energy < energy) {
                labeling = std::move(move.labeling);
                energy = move.energy;
                accepted = true;
            }
        }
        return accepted;
    });
}

SolveResult run_swap(const MrfModel& model, const Labeling& init, const SolverConfig& config) {
    const std::vector<std::uint8_t> order = ordered_labels(model, config);
    FlowNetwork net;
    std::vector<std::int32_t> node_of(model.pixel_count(), -1);
    // pixels holding each label, raster order, maintained across moves so a
    // sweep costs O(pixels) per label pair instead of a full rescan
    std::vector<std::vector<std::size_t>> bucket(model.label_count());
    std::vector<std::size_t> members;
    return run_moves(model, init, config, [&](Labeling& labeling, std::int64_t& energy) {
        for (auto& b : bucket) b.clear();
        for (std::size_t i = 0; i < labeling.values.size(); ++i)
            bucket[static_cast<std::size_t>(model.value_to_index[labeling.values[i]])].push_back(i);
        bool accepted = false;
        for (std::size_t ai = 0; ai < order.size(); ++ai) {
            for (std::size_t bi = ai + 1; bi < order.size(); ++bi) {
                auto& a_list = bucket[static_cast<std::size_t>(model.value_to_index[order[ai]])];
                auto& b_list = bucket[static_cast<std::size_t>(model.value_to_index[order[bi]])];
                if (a_list.empty() && b_list.empty()) continue;
                members.clear();
                std::merge(a_list.begin(), a_list.end(), b_list.begin(), b_list.end(), std::back_inserter(members));
                const std::int64_t delta = swap_move_apply(model, labeling, order[ai], order[bi], net, node_of, members);
                if (delta < 0) {
                    energy += delta;
                    accepted = true;
                    a_list.clear();
                    b_list.clear();
                    for (std::size_t i : members)
                        (labeling.values[i] == order[ai] ? a_list : b_list).push_back(i);
                }
            }
        }
        return accepted;
    });
}

}  // namespace mrf

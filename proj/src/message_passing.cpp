#include "mrf/message_passing.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "envelope.hpp"

namespace mrf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Incoming-message fields, indexed by the side the message arrived from.
enum Dir { kFromLeft = 0, kFromRight = 1, kFromUp = 2, kFromDown = 3 };

// Envelope + truncation + normalization shared by loopy min-sum and the
// tree-reweighted variant (which runs on costs scaled by 2 so that halved
// beliefs stay integral).
struct MessageEngine {
    int w = 0, h = 0, m = 0;
    std::size_t n = 0;
    int k = 2;
    std::int64_t c = 0;    // scale * lambda
    std::int64_t cap = 0;  // scale * lambda * v_max
    std::int64_t scale = 1;
    std::vector<int> pos;
    std::vector<std::int32_t> data;  // unscaled (label - observed)^2, zero when masked
    std::vector<std::int32_t> msg[4];
    std::vector<std::int64_t> belief, tmp, env, split;
    detail::ParabolaHull hull;
    bool mutated = false;  // set when an in-place send changes any stored message word

    void init(const MrfModel& model, std::int64_t scale_) {
        w = model.width;
        h = model.height;
        m = model.label_count();
        n = model.pixel_count();
        k = model.k;
        scale = scale_;
        if (scale_ * model.lambda * model.v_max > (std::int64_t{1} << 30))
            throw std::invalid_argument("lambda * v_max too large for 32-bit message storage");
        c = scale * model.lambda;
        cap = c * model.v_max;
        pos.resize(m);
        for (int i = 0; i < m; ++i) pos[i] = model.labels[i];
        data.resize(n * static_cast<std::size_t>(m));
        for (std::size_t p = 0; p < n; ++p) {
            const std::int32_t observed = model.observed.pixels[p];
            const bool missing = model.missing(p);
            std::int32_t* row = data.data() + p * m;
            for (int i = 0; i < m; ++i) {
                const std::int32_t d = pos[i] - observed;
                row[i] = missing ? 0 : d * d;
            }
        }
        for (auto& field : msg) field.assign(n * static_cast<std::size_t>(m), 0);
        belief.resize(m);
        tmp.resize(m);
        env.resize(m);
        split.resize(m);
    }

    std::size_t off(std::size_t p) const { return p * static_cast<std::size_t>(m); }

    void load_belief(std::size_t p) {
        const std::int32_t* d = data.data() + off(p);
        const std::int32_t* in0 = msg[0].data() + off(p);
        const std::int32_t* in1 = msg[1].data() + off(p);
        const std::int32_t* in2 = msg[2].data() + off(p);
        const std::int32_t* in3 = msg[3].data() + off(p);
        for (int i = 0; i < m; ++i)
            belief[i] = scale * static_cast<std::int64_t>(d[i]) + in0[i] + in1[i] + in2[i] + in3[i];
    }

    // load_belief, then shift so the minimum sits at zero; returns the shift
    std::int64_t load_belief_normalized(std::size_t p) {
        load_belief(p);
        std::int64_t lo = belief[0];
        for (int i = 1; i < m; ++i) lo = std::min(lo, belief[i]);
        for (int i = 0; i < m; ++i) belief[i] -= lo;
        return lo;
    }

    // tmp -> envelope -> truncation -> min-normalize -> dest; returns the
    // subtracted normalization constant
    std::int64_t reduce_into(std::int32_t* dest) {
        if (k == 1)
            detail::lower_envelope_l1(pos, c, tmp.data(), env.data(), m);
        else
            detail::lower_envelope_l2(pos, c, tmp.data(), env.data(), m, hull);
        std::int64_t lo = tmp[0];
        for (int i = 1; i < m; ++i) lo = std::min(lo, tmp[i]);
        const std::int64_t ceiling = lo + cap;
        std::int64_t out_min = std::numeric_limits<std::int64_t>::max();
        for (int i = 0; i < m; ++i) {
            if (env[i] > ceiling) env[i] = ceiling;
            out_min = std::min(out_min, env[i]);
        }
        for (int i = 0; i < m; ++i) {
            const std::int32_t v = static_cast<std::int32_t>(env[i] - out_min);
            mutated = mutated || dest[i] != v;
            dest[i] = v;
        }
        return out_min;
    }

    std::int64_t send(std::size_t p, Dir reverse, std::vector<std::int32_t>& dest_field, std::size_t q,
                      const std::int64_t* source) {
        const std::int32_t* rev = msg[reverse].data() + off(p);
        for (int i = 0; i < m; ++i) tmp[i] = source[i] - rev[i];
        return reduce_into(dest_field.data() + off(q));
    }

    Labeling decode(const MrfModel& model) {
        Labeling labeling{w, h, std::vector<std::uint8_t>(n)};
        for (std::size_t p = 0; p < n; ++p) {
            load_belief(p);
            int best = 0;
            for (int i = 1; i < m; ++i)
                if (belief[i] < belief[best]) best = i;
            labeling.values[p] = model.labels[best];
        }
        return labeling;
    }
};

}  // namespace

std::vector<std::int64_t> message_update(const std::vector<std::int64_t>& data_vec,
                                         const std::vector<std::vector<std::int64_t>>& incoming,
                                         const TruncatedPotential& pot) {
    const std::size_t m = pot.labels.size();
    if (m == 0) throw std::invalid_argument("message_update: empty label set");
    for (std::size_t i = 1; i < m; ++i)
        if (pot.labels[i] <= pot.labels[i - 1])
            throw std::invalid_argument("message_update: labels must be strictly increasing");
    if (pot.k != 1 && pot.k != 2) throw std::invalid_argument("message_update: k must be 1 or 2");
    if (pot.lambda < 0 || pot.v_max < 1) throw std::invalid_argument("message_update: bad potential parameters");
    if (data_vec.size() != m) throw std::invalid_argument("message_update: data vector size mismatch");
    for (const auto& in : incoming)
        if (in.size() != m) throw std::invalid_argument("message_update: incoming vector size mismatch");

    std::vector<std::int64_t> hcost(data_vec);
    for (const auto& in : incoming)
        for (std::size_t i = 0; i < m; ++i) hcost[i] += in[i];

    std::vector<int> pos(m);
    for (std::size_t i = 0; i < m; ++i) pos[i] = pot.labels[i];
    std::vector<std::int64_t> out(m);
    if (pot.k == 1) {
        detail::lower_envelope_l1(pos, pot.lambda, hcost.data(), out.data(), static_cast<int>(m));
    } else {
        detail::ParabolaHull hull;
        detail::lower_envelope_l2(pos, pot.lambda, hcost.data(), out.data(), static_cast<int>(m), hull);
    }
    const std::int64_t ceiling = *std::min_element(hcost.begin(), hcost.end()) + pot.lambda * pot.v_max;
    for (auto& v : out) v = std::min(v, ceiling);
    const std::int64_t lo = *std::min_element(out.begin(), out.end());
    for (auto& v : out) v -= lo;
    return out;
}

namespace {

void bp_sweep_forward(MessageEngine& eng) {
    for (int r = 0; r < eng.h; ++r) {
        for (int c = 0; c < eng.w; ++c) {
            const std::size_t p = static_cast<std::size_t>(r) * eng.w + c;
            eng.load_belief(p);
            if (c + 1 < eng.w) eng.send(p, kFromRight, eng.msg[kFromLeft], p + 1, eng.belief.data());
            if (r + 1 < eng.h) eng.send(p, kFromDown, eng.msg[kFromUp], p + eng.w, eng.belief.data());
        }
    }
}

void bp_sweep_backward(MessageEngine& eng) {
    for (int r = eng.h - 1; r >= 0; --r) {
        for (int c = eng.w - 1; c >= 0; --c) {
            const std::size_t p = static_cast<std::size_t>(r) * eng.w + c;
            eng.load_belief(p);
            if (c > 0) eng.send(p, kFromLeft, eng.msg[kFromRight], p - 1, eng.belief.data());
            if (r > 0) eng.send(p, kFromUp, eng.msg[kFromDown], p - eng.w, eng.belief.data());
        }
    }
}

// Recomputes every directed message from the previous pass's state, then
// swaps the new state in. Returns true when the pass reproduced the previous
// state exactly (a fixed point, compared before the swap so a period-2
// oscillation does not count).
bool bp_parallel_pass(MessageEngine& eng, std::vector<std::int32_t> (&next)[4]) {
    for (int r = 0; r < eng.h; ++r) {
        for (int c = 0; c < eng.w; ++c) {
            const std::size_t p = static_cast<std::size_t>(r) * eng.w + c;
            eng.load_belief(p);
            if (c + 1 < eng.w) eng.send(p, kFromRight, next[kFromLeft], p + 1, eng.belief.data());
            if (c > 0) eng.send(p, kFromLeft, next[kFromRight], p - 1, eng.belief.data());
            if (r + 1 < eng.h) eng.send(p, kFromDown, next[kFromUp], p + eng.w, eng.belief.data());
            if (r > 0) eng.send(p, kFromUp, next[kFromDown], p - eng.w, eng.belief.data());
        }
    }
    bool settled = true;
    for (int d = 0; d < 4; ++d) settled = settled && next[d] == eng.msg[d];
    for (int d = 0; d < 4; ++d) eng.msg[d].swap(next[d]);
    return settled;
}

}  // namespace

SolveResult run_bp(const MrfModel& model, const Labeling& init, const SolverConfig& config, BpSchedule schedule) {
    const auto start = Clock::now();
    MessageEngine eng;
    eng.init(model, 1);

    std::vector<std::int32_t> next[4];
    if (schedule == BpSchedule::Synchronous)
        for (auto& field : next) field.assign(eng.n * static_cast<std::size_t>(eng.m), 0);

    SolveResult result;
    result.labeling = init;
    result.trace.samples.push_back({0, total_energy(model, init), seconds_since(start)});

    for (int pass = 1; pass <= config.max_cycles; ++pass) {
        bool settled = false;
        if (schedule == BpSchedule::Sequential) {
            eng.mutated = false;
            bp_sweep_forward(eng);
            bp_sweep_backward(eng);
            settled = !eng.mutated;
        } else {
            settled = bp_parallel_pass(eng, next);
        }
        result.labeling = eng.decode(model);
        result.trace.samples.push_back({pass, total_energy(model, result.labeling), seconds_since(start)});
        if (settled) break;
    }
    return result;
}

namespace {

// One tree-reweighted sweep. Per node in sweep order: min-normalize the
// belief, hand each outgoing chain a weighted share of it (weight
// 1/max(forward sides, backward sides); the halved share rounds down, so
// the odd unit of slack stays at the node and is recovered by the next
// normalization), and update the outgoing messages. The returned value is
// the sum of all normalization constants extracted by the sweep: belief
// shifts plus message shifts. For the reverse sweep that sum telescopes
// the chain-decomposition dual, which is the lower bound; on a single
// chain it is exactly the dynamic-programming optimum.
std::int64_t trws_sweep(MessageEngine& eng, bool forward_order) {
    std::int64_t extracted = 0;
    for (std::size_t step = 0; step < eng.n; ++step) {
        const std::size_t p = forward_order ? step : eng.n - 1 - step;
        const int r = static_cast<int>(p) / eng.w;
        const int c = static_cast<int>(p) % eng.w;
        const bool right = c + 1 < eng.w, down = r + 1 < eng.h;
        const bool left = c > 0, up = r > 0;
        extracted += eng.load_belief_normalized(p);
        const int nf = static_cast<int>(right) + static_cast<int>(down);
        const int nb = static_cast<int>(left) + static_cast<int>(up);
        const std::int64_t* share = eng.belief.data();
        if (std::max(nf, nb) == 2) {
            for (int i = 0; i < eng.m; ++i) eng.split[i] = eng.belief[i] >> 1;
            share = eng.split.data();
        }
        if (forward_order) {
            if (right) extracted += eng.send(p, kFromRight, eng.msg[kFromLeft], p + 1, share);
            if (down) extracted += eng.send(p, kFromDown, eng.msg[kFromUp], p + eng.w, share);
        } else {
            if (left) extracted += eng.send(p, kFromLeft, eng.msg[kFromRight], p - 1, share);
            if (up) extracted += eng.send(p, kFromUp, eng.msg[kFromDown], p - eng.w, share);
        }
    }
    return extracted;
}

}  // namespace

TrwsResult run_trws(const MrfModel& model, const Labeling& init, const SolverConfig& config) {
    const auto start = Clock::now();
    MessageEngine eng;
    eng.init(model, 2);

    TrwsResult result;
    result.labeling = init;
    result.trace.samples.push_back({0, total_energy(model, init), seconds_since(start)});

    for (int pass = 1; pass <= config.max_cycles; ++pass) {
        eng.mutated = false;
        trws_sweep(eng, true);
        const std::int64_t scaled_bound = trws_sweep(eng, false);
        result.labeling = eng.decode(model);
        result.trace.samples.push_back({pass, total_energy(model, result.labeling), seconds_since(start)});
        result.bound.samples.push_back({pass, static_cast<double>(scaled_bound) / 2.0});
        // A pass that changed no stored message reproduces itself verbatim,
        // bound included, so there is nothing left to run.
        if (!eng.mutated) break;
    }
    return result;
}

}  // namespace mrf

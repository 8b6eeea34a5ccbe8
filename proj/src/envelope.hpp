#pragma once

#include <cstdint>
#include <vector>

namespace mrf::detail {

// Lower envelopes out(i) = min_j [ g(j) + c * |pos(i) - pos(j)|^k ] over a
// shared strictly-increasing integer position grid, k in {1, 2}. Both run in
// O(m) and stay exact: the linear form uses two prefix sweeps, the quadratic
// form a parabola hull whose breakpoints are compared as rationals in 128-bit
// products, never floats.

inline void lower_envelope_l1(const std::vector<int>& pos, std::int64_t c, const std::int64_t* g, std::int64_t* out,
                              int m) {
    std::int64_t run = g[0];
    out[0] = run;
    for (int i = 1; i < m; ++i) {
        run += c * (pos[i] - pos[i - 1]);
        if (g[i] < run) run = g[i];
        out[i] = run;
    }
    run = g[m - 1];
    for (int i = m - 2; i >= 0; --i) {
        run += c * (pos[i + 1] - pos[i]);
        if (g[i] < run) run = g[i];
        if (run < out[i]) out[i] = run;
    }
}

struct ParabolaHull {
    std::vector<int> idx;
    std::vector<std::int64_t> num;  // breakpoint where idx[t] overtakes idx[t-1], as num/den with den > 0
    std::vector<std::int64_t> den;
};

inline void lower_envelope_l2(const std::vector<int>& pos, std::int64_t c, const std::int64_t* g, std::int64_t* out,
                              int m, ParabolaHull& hull) {
    if (c == 0) {
        std::int64_t lo = g[0];
        for (int j = 1; j < m; ++j)
            if (g[j] < lo) lo = g[j];
        for (int i = 0; i < m; ++i) out[i] = lo;
        return;
    }
    hull.idx.assign(1, 0);
    hull.num.assign(1, 0);  // slot 0 unused: the first parabola reigns from -infinity
    hull.den.assign(1, 1);

    auto raised = [&](int j) { return g[j] + c * pos[j] * pos[j]; };
    for (int j = 1; j < m; ++j) {
        std::int64_t nj = 0, dj = 1;
        while (true) {
            const int a = hull.idx.back();
            nj = raised(j) - raised(a);
            dj = 2 * c * (pos[j] - pos[a]);
            if (hull.idx.size() > 1 &&
                static_cast<__int128>(nj) * hull.den.back() <= static_cast<__int128>(hull.num.back()) * dj) {
                hull.idx.pop_back();
                hull.num.pop_back();
                hull.den.pop_back();
                continue;
            }
            break;
        }
        hull.idx.push_back(j);
        hull.num.push_back(nj);
        hull.den.push_back(dj);
    }

    std::size_t t = 0;
    for (int i = 0; i < m; ++i) {
        const std::int64_t x = pos[i];
        while (t + 1 < hull.idx.size() &&
               static_cast<__int128>(hull.num[t + 1]) < static_cast<__int128>(x) * hull.den[t + 1])
            ++t;
        const int j = hull.idx[t];
        const std::int64_t d = x - pos[j];
        out[i] = g[j] + c * d * d;
    }
}

}  // namespace mrf::detail

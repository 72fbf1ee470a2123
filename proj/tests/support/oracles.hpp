#pragma once

// Independent reference computations used only by tests.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "tcr/matching.hpp"

namespace tcr::oracle {

/// Largest total weight of a 1/r-fractional matching on host, returned as the
/// integer r * weight. Search over residual vertex capacities in 0..r.
inline long max_one_over_r_units(const std::vector<Edge>& host_in, int r) {
    auto host = sorted_edges(host_in);
    std::vector<int> verts;
    for (const auto& e : host)
        for (Vertex v : e) verts.push_back(v);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    const int nv = static_cast<int>(verts.size());
    if (nv == 0) return 0;
    const int k = host.front().size();
    std::vector<std::vector<std::array<int, kMaxArity>>> at(nv);
    for (const auto& e : host) {
        std::array<int, kMaxArity> loc{};
        for (int i = 0; i < k; ++i) loc[i] = static_cast<int>(std::lower_bound(verts.begin(), verts.end(), e[i]) - verts.begin());
        at[loc[0]].push_back(loc);
    }
    std::vector<std::uint64_t> pw(nv + 1, 1);
    for (int i = 1; i <= nv; ++i) pw[i] = pw[i - 1] * static_cast<std::uint64_t>(r + 1);
    std::unordered_map<std::uint64_t, long> memo;
    std::vector<int> cap(nv, r);
    auto encode = [&] {
        std::uint64_t key = 0;
        for (int i = 0; i < nv; ++i) key += pw[i] * static_cast<std::uint64_t>(cap[i]);
        return key;
    };
    // Edges are indexed by their lowest vertex, so processing the lowest
    // vertex with spare capacity sees every edge that can still use it.
    std::function<long()> go = [&]() -> long {
        int v = 0;
        while (v < nv && cap[v] == 0) ++v;
        if (v == nv) return 0;
        std::uint64_t key = encode();
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        int saved = cap[v];
        cap[v] = 0;
        long best = go();
        cap[v] = saved;
        for (const auto& loc : at[v]) {
            bool ok = true;
            for (int i = 0; i < k; ++i) ok = ok && cap[loc[i]] > 0;
            if (!ok) continue;
            for (int i = 0; i < k; ++i) --cap[loc[i]];
            best = std::max(best, 1 + go());
            for (int i = 0; i < k; ++i) ++cap[loc[i]];
        }
        memo.emplace(key, best);
        return best;
    };
    return go();
}

/// Integer determinant by fraction-free (Bareiss) elimination.
inline std::int64_t bareiss_det(std::vector<std::vector<std::int64_t>> a) {
    const int n = static_cast<int>(a.size());
    if (n == 0) return 1;
    std::int64_t sign = 1, prev = 1;
    for (int p = 0; p < n - 1; ++p) {
        if (a[p][p] == 0) {
            int s = p + 1;
            while (s < n && a[s][p] == 0) ++s;
            if (s == n) return 0;
            std::swap(a[p], a[s]);
            sign = -sign;
        }
        for (int i = p + 1; i < n; ++i)
            for (int j = p + 1; j < n; ++j) a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) / prev;
        prev = a[p][p];
    }
    return sign * a[n - 1][n - 1];
}

/// Maximum of sum(x) over the fractional matching polytope, by enumerating
/// every basic solution: a support S of edges and |S| vertex rows made tight,
/// solved by Cramer's rule, kept when feasible.
inline Rational lp_by_vertex_enumeration(const std::vector<Edge>& host_in) {
    auto host = sorted_edges(host_in);
    std::vector<int> verts;
    for (const auto& e : host)
        for (Vertex v : e) verts.push_back(v);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    const int m = static_cast<int>(host.size()), nv = static_cast<int>(verts.size());
    std::vector<std::vector<std::int64_t>> inc(nv, std::vector<std::int64_t>(m, 0));
    for (int j = 0; j < m; ++j)
        for (Vertex v : host[j]) inc[std::lower_bound(verts.begin(), verts.end(), v) - verts.begin()][j] = 1;
    Rational best = 0;
    for (std::uint32_t s = 1; s < (1u << m); ++s) {
        std::vector<int> cols;
        for (int j = 0; j < m; ++j)
            if (s >> j & 1) cols.push_back(j);
        const int sz = static_cast<int>(cols.size());
        if (sz > nv) continue;
        std::vector<int> rows_pool;
        for (int i = 0; i < nv; ++i) {
            bool touched = false;
            for (int j : cols) touched = touched || inc[i][j];
            if (touched) rows_pool.push_back(i);
        }
        if (static_cast<int>(rows_pool.size()) < sz) continue;
        std::vector<int> pick(sz);
        for (int i = 0; i < sz; ++i) pick[i] = i;
        while (true) {
            std::vector<std::vector<std::int64_t>> a(sz, std::vector<std::int64_t>(sz));
            for (int i = 0; i < sz; ++i)
                for (int j = 0; j < sz; ++j) a[i][j] = inc[rows_pool[pick[i]]][cols[j]];
            std::int64_t det = bareiss_det(a);
            if (det != 0) {
                std::vector<Rational> x(sz);
                bool nonneg = true;
                for (int j = 0; j < sz && nonneg; ++j) {
                    auto aj = a;
                    for (int i = 0; i < sz; ++i) aj[i][j] = 1;
                    std::int64_t num = bareiss_det(aj);
                    // Boost's rational adaptor rejects negative denominators.
                    x[j] = det > 0 ? Rational(num, det) : Rational(-num, -det);
                    nonneg = x[j] >= 0;
                }
                if (nonneg) {
                    bool feasible = true;
                    for (int i = 0; i < nv && feasible; ++i) {
                        Rational load = 0;
                        for (int j = 0; j < sz; ++j)
                            if (inc[i][cols[j]]) load += x[j];
                        feasible = load <= 1;
                    }
                    if (feasible) {
                        Rational total = 0;
                        for (const auto& xi : x) total += xi;
                        if (total > best) best = total;
                    }
                }
            }
            int t = sz - 1;
            const int pool = static_cast<int>(rows_pool.size());
            while (t >= 0 && pick[t] == pool - sz + t) --t;
            if (t < 0) break;
            ++pick[t];
            for (int u = t + 1; u < sz; ++u) pick[u] = pick[u - 1] + 1;
        }
    }
    return best;
}

}  // namespace tcr::oracle

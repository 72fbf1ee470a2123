#pragma once

#include "tcr/matching.hpp"
#include "tcr/tight.hpp"

#include <map>
#include <vector>

namespace tcr {

/// Links an r-blow-up to its base: base vertex x owns the class
/// V_x = {(x-1)r+1, ..., xr}.
struct BlowUpMap {
    int r = 1;
    int base_n = 0;
    int k = 0;
    std::vector<std::vector<int>> classes;  // classes[x], x in 1..base_n
    std::vector<int> class_of;              // blown vertex -> base vertex

    int blown_vertex(int x, int j) const { return (x - 1) * r + j + 1; }
};

inline constexpr std::size_t kDefaultBlowUpCap = 2'000'000;

inline BlowUpMap make_blowup_map(int k, int base_n, int r) {
    if (r < 1) throw Error(ErrorCode::HypothesisViolated, "r must be positive");
    BlowUpMap m;
    m.r = r;
    m.base_n = base_n;
    m.k = k;
    m.classes.assign(base_n + 1, {});
    m.class_of.assign(base_n * r + 1, 0);
    for (int x = 1; x <= base_n; ++x)
        for (int j = 0; j < r; ++j) {
            int v = m.blown_vertex(x, j);
            m.classes[x].push_back(v);
            m.class_of[v] = x;
        }
    return m;
}

/// Least eps for which every (1-eps, eps)-dense k-graph on n vertices has a
/// (1-2eps, 2eps)-dense r-blow-up. An i-set of H_* either repeats a class
/// (degree 0; fraction g_i of all i-sets) or projects to an i-set S of H with
/// degree r^(k-i) d_H(S), a factor (1-b_i) of the largest possible degree.
/// Transfer needs (1-eps)(1-b_i) >= 1-2eps and g_i + eps(1-g_i) <= 2eps.
inline Rational blowup_density_eps(int k, int n, int r) {
    Rational best = 0;
    const int big = n * r;
    for (int i = 1; i <= k - 1 && i <= n; ++i) {
        std::int64_t ri = 1, rki = 1;
        for (int j = 0; j < i; ++j) ri *= r;
        for (int j = 0; j < k - i; ++j) rki *= r;
        Rational g = 1 - Rational(ri * binomial(n, i), binomial(big, i));
        best = std::max(best, Rational(g / (1 + g)));
        if (big - i >= k - i && binomial(big - i, k - i) > 0) {
            Rational b = 1 - Rational(rki * binomial(n - i, k - i), binomial(big - i, k - i));
            best = std::max(best, Rational(b / (1 + b)));
        }
    }
    return best;
}

/// Calls f on every blown edge of base edge e (class-major order).
template <class F>
void for_each_blown_edge(const BlowUpMap& m, const Edge& e, F&& f) {
    const int k = e.size();
    std::array<int, kMaxArity> pick{};
    while (true) {
        std::array<int, kMaxArity> vs{};
        for (int i = 0; i < k; ++i) vs[i] = m.blown_vertex(e[i], pick[i]);
        f(Edge::from_range(vs.begin(), vs.begin() + k));
        int i = k - 1;
        while (i >= 0 && pick[i] == m.r - 1) pick[i--] = 0;
        if (i < 0) return;
        ++pick[i];
    }
}

/// H_*: each edge x1..xk becomes K_{V_x1,...,V_xk} with the same colour.
inline std::pair<ColouredKGraph, BlowUpMap> blow_up(const ColouredKGraph& h, int r,
                                                    std::size_t cap = kDefaultBlowUpCap) {
    auto m = make_blowup_map(h.k(), h.n(), r);
    double projected = static_cast<double>(h.size());
    for (int i = 0; i < h.k(); ++i) projected *= r;
    if (projected > static_cast<double>(cap))
        throw Error(ErrorCode::SizeCapExceeded, "blow-up would have " + std::to_string(static_cast<long long>(projected)) +
                                                    " edges (cap " + std::to_string(cap) + ")");
    std::vector<Edge> es;
    std::vector<Colour> cs;
    es.reserve(static_cast<std::size_t>(projected));
    for (int i = 0; i < static_cast<int>(h.size()); ++i)
        for_each_blown_edge(m, h.edge(i), [&](const Edge& b) { es.push_back(b); });
    KGraph g(h.k(), h.n() * r, es);
    cs.resize(g.size());
    for (int i = 0; i < static_cast<int>(g.size()); ++i) {
        Edge base;
        for (Vertex v : g.edge(i)) base = base.with(m.class_of[v]);
        cs[i] = h.colour(h.index_of(base));
    }
    return {ColouredKGraph(std::move(g), std::move(cs)), std::move(m)};
}

/// f_{e*}: the base edge whose classes e_star meets.
inline Edge project_edge(const BlowUpMap& m, const Edge& e_star) {
    Edge base;
    for (Vertex v : e_star) {
        if (v < 1 || v >= static_cast<int>(m.class_of.size()))
            throw Error(ErrorCode::NotPartite, e_star.str() + " leaves the blown vertex range");
        int x = m.class_of[v];
        if (base.contains(x)) throw Error(ErrorCode::NotPartite, e_star.str() + " meets V_" + std::to_string(x) + " twice");
        base = base.with(x);
    }
    return base;
}

/// phi(e) = |M_* ∩ K_{V_x1..V_xk}| / r on the base component holding M_*.
inline FractionalMatching matching_to_fractional(const BlowUpMap& m, const ColouredKGraph& base,
                                                 const ColouredKGraph& blown, const std::vector<Edge>& m_star) {
    if (!is_matching(m_star)) throw Error(ErrorCode::NotAMatching, "edges overlap");
    auto d = monochromatic_components(base);
    FractionalMatching out;
    std::map<Edge, long> count;
    int comp = -1;
    for (const auto& e : m_star) {
        if (!blown.contains(e)) throw Error(ErrorCode::NotAMatching, e.str() + " is not an edge of the blow-up");
        Edge f = project_edge(m, e);
        int c = d.component_of[base.index_of(f)];
        if (comp >= 0 && c != comp) throw Error(ErrorCode::MixedComponents, "matching spans two components");
        comp = c;
        ++count[f];
    }
    if (comp < 0) return out;
    out.component = comp;
    for (int id : d.components[comp]) out.host.push_back(base.edge(id));
    out.host = sorted_edges(out.host);
    for (const auto& [f, c] : count) out.weights[f] = Rational(c, m.r);
    return out;
}

/// Integralisation: disjoint U_{x,e} ⊆ V_x of size r*phi(e), then a perfect
/// matching of K_{U_x1,e,...,U_xk,e} for each supported e.
inline std::vector<Edge> fractional_to_matching(const BlowUpMap& m, const FractionalMatching& phi) {
    if (!phi.is_one_over(m.r))
        throw Error(ErrorCode::DenominatorMismatch, "weights are not multiples of 1/" + std::to_string(m.r));
    auto chk = validate_fractional(phi);
    if (!chk.valid) throw Error(ErrorCode::NotAMatching, chk.violation);
    std::vector<int> next_free(m.base_n + 1, 0);
    std::vector<Edge> out;
    for (const auto& [e, w] : phi.weights) {
        const long t = static_cast<long>(boost::multiprecision::numerator(Rational(w * m.r)));
        std::array<int, kMaxArity> start{};
        for (int i = 0; i < e.size(); ++i) {
            start[i] = next_free[e[i]];
            next_free[e[i]] += static_cast<int>(t);
        }
        for (long j = 0; j < t; ++j) {
            std::array<int, kMaxArity> vs{};
            for (int i = 0; i < e.size(); ++i) vs[i] = m.classes[e[i]][start[i] + j];
            out.push_back(Edge::from_range(vs.begin(), vs.begin() + e.size()));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace tcr

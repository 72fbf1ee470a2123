#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tcr/blowup.hpp"
#include "tcr/hypergraph.hpp"
#include "tcr/tight.hpp"

namespace tcr {

/// Monochromatic tight components together with their (k-1)-shadows and,
/// for every (k-2)-set, its degree inside each shadow.
struct ComponentAtlas {
    TightDecomposition d;
    std::vector<std::unordered_set<Edge, EdgeHash>> shadow;
    std::vector<std::unordered_map<Edge, int, EdgeHash>> low_degree;

    int count() const { return static_cast<int>(d.count()); }
    Colour colour(int comp) const { return d.colour[comp]; }
    bool in_shadow(int comp, const Edge& s) const { return shadow[comp].count(s) > 0; }
    int shadow_degree(int comp, const Edge& e) const {
        auto it = low_degree[comp].find(e);
        return it == low_degree[comp].end() ? 0 : it->second;
    }
    int component_of(const ColouredKGraph& h, const Edge& e) const {
        int i = h.index_of(e);
        return i < 0 ? -1 : d.component_of[i];
    }
};

inline ComponentAtlas make_atlas(const ColouredKGraph& h) {
    ComponentAtlas a;
    a.d = monochromatic_components(h);
    a.shadow.resize(a.d.count());
    a.low_degree.resize(a.d.count());
    const int k = h.k();
    for (int c = 0; c < a.count(); ++c) {
        auto& sh = a.shadow[c];
        for (int id : a.d.components[c]) for_each_subset(h.edge(id), k - 1, [&](const Edge& s) { sh.insert(s); });
        if (k >= 3)
            for (const auto& s : sh) for_each_subset(s, k - 2, [&](const Edge& t) { ++a.low_degree[c][t]; });
    }
    return a;
}

struct OmittedSet {
    Edge e;
    int best_degree = 0;
};

/// A coloured (k-2)-graph on V(G) with every edge pointing at a
/// monochromatic tight component of the host (ids from make_atlas).
struct Blueprint {
    int k = 4;
    int n = 0;  // vertex count of the host
    Rational eps;
    std::vector<int> vertices;
    std::vector<Edge> edges;
    std::vector<Colour> colours;
    std::vector<int> assign;
    std::vector<OmittedSet> omitted;

    void reindex() {
        std::vector<std::size_t> order(edges.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
        std::vector<Edge> e2;
        std::vector<Colour> c2;
        std::vector<int> a2;
        for (auto i : order) e2.push_back(edges[i]), c2.push_back(colours[i]), a2.push_back(assign[i]);
        edges = std::move(e2), colours = std::move(c2), assign = std::move(a2);
        std::sort(vertices.begin(), vertices.end());
        vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
        index_.clear();
        for (int i = 0; i < static_cast<int>(edges.size()); ++i) index_[edges[i]] = i;
        member_.assign(n + 1, 0);
        for (int v : vertices)
            if (v >= 1 && v <= n) member_[v] = 1;
    }
    int index_of(const Edge& e) const {
        auto it = index_.find(e);
        return it == index_.end() ? -1 : it->second;
    }
    bool has(const Edge& e) const { return index_.count(e) > 0; }
    bool has_vertex(int v) const { return v >= 1 && v < static_cast<int>(member_.size()) && member_[v]; }
    std::size_t size() const { return edges.size(); }
    /// K^2_G: blueprint edges assigned to component comp.
    std::vector<Edge> k_map(int comp) const {
        std::vector<Edge> out;
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (assign[i] == comp) out.push_back(edges[i]);
        return out;
    }
    /// Blueprint degree of v (k = 4: ordinary graph degree).
    int degree(int v) const {
        int d = 0;
        for (const auto& e : edges) d += e.contains(v);
        return d;
    }
    int min_degree() const {
        if (vertices.empty()) return 0;
        std::vector<int> deg(n + 1, 0);
        for (const auto& e : edges)
            for (Vertex v : e) ++deg[v];
        int best = -1;
        for (int v : vertices)
            if (best < 0 || deg[v] < best) best = deg[v];
        return best;
    }

private:
    std::unordered_map<Edge, int, EdgeHash> index_;
    std::vector<char> member_;
};

/// xyz in the shadow of the component induced by blueprint edge xy.
inline bool in_induced_shadow(const ComponentAtlas& a, const Blueprint& bp, const Edge& e, int z) {
    int i = bp.index_of(e);
    return i >= 0 && !e.contains(z) && a.in_shadow(bp.assign[i], e.with(z));
}

struct BlueprintCheck {
    bool pass = true;
    std::vector<std::string> violations;
    void fail(std::string s) {
        pass = false;
        violations.push_back(std::move(s));
    }
};

inline BlueprintCheck check_blueprint(const ColouredKGraph& h, const ComponentAtlas& a, const Blueprint& bp) {
    BlueprintCheck out;
    const Rational need = (1 - bp.eps) * h.n();
    for (std::size_t i = 0; i < bp.size(); ++i) {
        const Edge& e = bp.edges[i];
        const int comp = bp.assign[i];
        if (e.size() != h.k() - 2) {
            out.fail("edge " + e.str() + " has the wrong size");
            continue;
        }
        for (Vertex v : e)
            if (!bp.has_vertex(v)) out.fail("edge " + e.str() + " leaves V(G)");
        if (comp < 0 || comp >= a.count()) {
            out.fail("edge " + e.str() + " has no component");
            continue;
        }
        if (a.colour(comp) != bp.colours[i]) out.fail("edge " + e.str() + " colour differs from its component");
        int deg = a.shadow_degree(comp, e);
        if (Rational(deg) < need)
            out.fail("BP1 at " + e.str() + ": shadow degree " + std::to_string(deg) + " < " + to_string(need));
    }
    // BP2: group same-colour edges by each (k-3)-subset.
    std::map<std::pair<Edge, int>, std::pair<int, Edge>> seen;
    for (std::size_t i = 0; i < bp.size(); ++i) {
        const Edge& e = bp.edges[i];
        for_each_subset(e, h.k() - 3, [&](const Edge& s) {
            auto key = std::make_pair(s, static_cast<int>(bp.colours[i]));
            auto [it, fresh] = seen.emplace(key, std::make_pair(bp.assign[i], e));
            if (!fresh && it->second.first != bp.assign[i])
                out.fail("BP2 at " + it->second.second.str() + " and " + e.str());
        });
    }
    return out;
}

inline BlueprintCheck check_blueprint(const ColouredKGraph& h, const Blueprint& bp) {
    return check_blueprint(h, make_atlas(h), bp);
}

/// Default blueprint epsilon: BP1 asks for shadow degree (1-eps)n while the
/// largest possible value is n-(k-2), so eps below (k-2)/n admits nothing.
inline Rational default_blueprint_eps(int n, int k = 4) {
    Rational floor_eps(k - 1, std::max(n, 1));
    return std::max(Rational(1, 20), floor_eps);
}

/// Heuristic constructor: per (k-2)-set pick the component with the largest
/// shadow degree in each colour, keep the larger (red on ties), drop sets
/// failing BP1, then resolve BP2 conflicts by majority inside each connected
/// same-colour class.
inline Blueprint build_blueprint(const ColouredKGraph& h, const ComponentAtlas& a, const Rational& eps) {
    const int k = h.k();
    if (k < 3) throw Error(ErrorCode::Unsupported, "blueprints need k >= 3");
    Blueprint bp;
    bp.k = k;
    bp.n = h.n();
    bp.eps = eps;
    bp.vertices = iota_vertices(h.n());
    struct Best {
        int deg[2] = {0, 0};
        int comp[2] = {-1, -1};
    };
    std::map<Edge, Best> best;
    for (int c = 0; c < a.count(); ++c) {
        const int col = static_cast<int>(a.colour(c));
        for (const auto& [e, deg] : a.low_degree[c]) {
            auto& b = best[e];
            if (deg > b.deg[col] || (deg == b.deg[col] && (b.comp[col] < 0 || c < b.comp[col]))) {
                b.deg[col] = deg;
                b.comp[col] = c;
            }
        }
    }
    const Rational need = (1 - eps) * h.n();
    for_each_combination(h.n(), k - 2, [&](const Edge& e) {
        auto it = best.find(e);
        if (it == best.end()) {
            bp.omitted.push_back({e, 0});
            return;
        }
        const Best& b = it->second;
        int col = b.deg[1] > b.deg[0] ? 1 : 0;
        if (b.comp[col] < 0 || Rational(b.deg[col]) < need) {
            bp.omitted.push_back({e, b.deg[col]});
            return;
        }
        bp.edges.push_back(e);
        bp.colours.push_back(static_cast<Colour>(col));
        bp.assign.push_back(b.comp[col]);
    });
    // BP2 by majority; dropping edges can split classes, so repeat.
    while (true) {
        const int m = static_cast<int>(bp.edges.size());
        detail::DisjointSets ds(m);
        std::map<std::pair<Edge, int>, int> first;
        for (int i = 0; i < m; ++i)
            for_each_subset(bp.edges[i], k - 3, [&](const Edge& s) {
                auto [it, fresh] = first.emplace(std::make_pair(s, static_cast<int>(bp.colours[i])), i);
                if (!fresh) ds.unite(it->second, i);
            });
        std::map<int, std::map<int, int>> votes;
        for (int i = 0; i < m; ++i) ++votes[ds.find(i)][bp.assign[i]];
        std::map<int, int> winner;
        for (const auto& [root, tally] : votes) {
            int w = -1, wc = -1;
            for (const auto& [comp, cnt] : tally)
                if (cnt > wc) w = comp, wc = cnt;
            winner[root] = w;
        }
        std::vector<Edge> e2;
        std::vector<Colour> c2;
        std::vector<int> a2;
        for (int i = 0; i < m; ++i) {
            if (bp.assign[i] != winner[ds.find(i)]) {
                bp.omitted.push_back({bp.edges[i], a.shadow_degree(bp.assign[i], bp.edges[i])});
                continue;
            }
            e2.push_back(bp.edges[i]), c2.push_back(bp.colours[i]), a2.push_back(bp.assign[i]);
        }
        const bool stable = static_cast<int>(e2.size()) == m;
        bp.edges = std::move(e2), bp.colours = std::move(c2), bp.assign = std::move(a2);
        if (stable) break;
    }
    std::sort(bp.omitted.begin(), bp.omitted.end(), [](const OmittedSet& x, const OmittedSet& y) { return x.e < y.e; });
    bp.reindex();
    return bp;
}

inline Blueprint build_blueprint(const ColouredKGraph& h, const Rational& eps) {
    return build_blueprint(h, make_atlas(h), eps);
}

/// Same blueprint restricted to a vertex subset.
inline Blueprint restrict_blueprint(const Blueprint& bp, const std::vector<int>& keep) {
    Blueprint out;
    out.k = bp.k, out.n = bp.n, out.eps = bp.eps;
    out.vertices = keep;
    std::vector<char> in(bp.n + 1, 0);
    for (int v : keep) in[v] = 1;
    for (std::size_t i = 0; i < bp.size(); ++i) {
        bool ok = true;
        for (Vertex v : bp.edges[i]) ok = ok && in[v];
        if (!ok) continue;
        out.edges.push_back(bp.edges[i]), out.colours.push_back(bp.colours[i]), out.assign.push_back(bp.assign[i]);
    }
    out.reindex();
    return out;
}

struct TrimResult {
    Blueprint graph;
    Colour colour = Colour::Red;
    int min_degree = 0;
};

/// Finds a vertex-induced subgraph of a coloured 2-graph with a spanning
/// monochromatic component, order >= (1-3 sqrt eps)n and minimum degree
/// >= (1-6 sqrt eps)n. Low-degree deletion alternates with keeping the
/// largest component of the colour under test. Preference: larger order,
/// then more edges of that colour, then red.
inline TrimResult trim_spanning_component(const Blueprint& f, const Rational& eps) {
    if (f.k != 4) throw Error(ErrorCode::Unsupported, "trim expects a 2-graph blueprint (k = 4)");
    const int n = static_cast<int>(f.vertices.size());
    const Rational need_edges = (1 - eps) * Rational(binomial(n, 2));
    if (Rational(static_cast<long>(f.size())) < need_edges)
        throw Error(ErrorCode::HypothesisViolated, "graph has " + std::to_string(f.size()) + " edges, needs at least " +
                                                       to_string(need_edges));
    // (n - x)^2 <= c^2 eps n^2 encodes x >= (1 - c sqrt eps) n without roots.
    auto at_least = [&](int x, int c) {
        if (x >= n) return true;
        Rational gap(n - x);
        return gap * gap <= Rational(c * c) * eps * Rational(n) * Rational(n);
    };
    std::optional<TrimResult> best;
    std::size_t best_edges = 0;
    for (Colour c : {Colour::Red, Colour::Blue}) {
        std::vector<char> alive(f.n + 1, 0);
        for (int v : f.vertices) alive[v] = 1;
        while (true) {
            bool changed = false;
            std::vector<int> deg(f.n + 1, 0);
            for (const auto& e : f.edges)
                if (alive[e[0]] && alive[e[1]]) ++deg[e[0]], ++deg[e[1]];
            for (int v : f.vertices)
                if (alive[v] && !at_least(deg[v], 6)) alive[v] = 0, changed = true;
            detail::DisjointSets ds(f.n + 1);
            for (std::size_t i = 0; i < f.size(); ++i) {
                const Edge& e = f.edges[i];
                if (f.colours[i] == c && alive[e[0]] && alive[e[1]]) ds.unite(e[0], e[1]);
            }
            std::map<int, int> sizes;
            for (int v : f.vertices)
                if (alive[v]) ++sizes[ds.find(v)];
            int root = -1, rs = 0;
            for (int v : f.vertices)
                if (alive[v] && sizes[ds.find(v)] > rs) root = ds.find(v), rs = sizes[root];
            for (int v : f.vertices)
                if (alive[v] && ds.find(v) != root) alive[v] = 0, changed = true;
            if (!changed) break;
        }
        std::vector<int> keep;
        for (int v : f.vertices)
            if (alive[v]) keep.push_back(v);
        if (keep.empty() || !at_least(static_cast<int>(keep.size()), 3)) continue;
        TrimResult r;
        r.graph = restrict_blueprint(f, keep);
        r.colour = c;
        r.min_degree = r.graph.min_degree();
        if (!at_least(r.min_degree, 6)) continue;
        std::size_t ce = static_cast<std::size_t>(std::count(r.graph.colours.begin(), r.graph.colours.end(), c));
        if (!best || keep.size() > best->graph.vertices.size() ||
            (keep.size() == best->graph.vertices.size() && ce > best_edges)) {
            best = std::move(r);
            best_edges = ce;
        }
    }
    if (!best) throw Error(ErrorCode::ContractUnmet, "no spanning monochromatic component meets the order and degree bounds");
    return *best;
}

/// Blueprint of an r-blow-up: transversal copies of every blueprint edge,
/// each assigned the blow-up of its base component.
inline Blueprint blueprint_blowup(const Blueprint& bp, const BlowUpMap& m, const ColouredKGraph& base,
                                  const ComponentAtlas& base_atlas, const ColouredKGraph& blown,
                                  const ComponentAtlas& blown_atlas) {
    std::vector<int> comp_map(base_atlas.count(), -1);
    for (int c = 0; c < base_atlas.count(); ++c) {
        const Edge& rep = base.edge(base_atlas.d.components[c].front());
        std::array<int, kMaxArity> vs{};
        for (int i = 0; i < rep.size(); ++i) vs[i] = m.blown_vertex(rep[i], 0);
        comp_map[c] = blown_atlas.component_of(blown, Edge::from_range(vs.begin(), vs.begin() + rep.size()));
    }
    Blueprint out;
    out.k = bp.k, out.n = blown.n(), out.eps = bp.eps;
    for (int x : bp.vertices)
        for (int v : m.classes[x]) out.vertices.push_back(v);
    for (std::size_t i = 0; i < bp.size(); ++i)
        for_each_blown_edge(m, bp.edges[i], [&](const Edge& e) {
            out.edges.push_back(e), out.colours.push_back(bp.colours[i]), out.assign.push_back(comp_map[bp.assign[i]]);
        });
    out.reindex();
    return out;
}

struct GoodFlags {
    bool g1 = false, g2 = false, g3 = false;
    bool good() const { return g1 && g2 && g3; }
};

/// G1: f inside V(G); G2: every (k-2)-subset of f is a blueprint edge;
/// G3: some z in f has e+z in the induced shadow for each (k-2)-set e of f-z.
inline GoodFlags good_flags(const ComponentAtlas& a, const Blueprint& bp, const Edge& f) {
    GoodFlags g;
    g.g1 = std::all_of(f.begin(), f.end(), [&](Vertex v) { return bp.has_vertex(v); });
    g.g2 = true;
    for_each_subset(f, bp.k - 2, [&](const Edge& e) { g.g2 = g.g2 && bp.has(e); });
    for (Vertex z : f) {
        bool ok = true;
        for_each_subset(f.without(z), bp.k - 2, [&](const Edge& e) { ok = ok && in_induced_shadow(a, bp, e, z); });
        if (ok) {
            g.g3 = true;
            break;
        }
    }
    return g;
}

inline bool is_good(const ComponentAtlas& a, const Blueprint& bp, const Edge& f) { return good_flags(a, bp, f).good(); }

inline std::vector<Edge> good_edges(const ComponentAtlas& a, const Blueprint& bp, const std::vector<Edge>& host) {
    std::vector<Edge> out;
    for (const auto& f : host)
        if (is_good(a, bp, f)) out.push_back(f);
    return out;
}

struct SuitablePairReport {
    Edge f;
    std::vector<int> w;
    bool sp[6] = {false, false, false, false, false, false};
    GoodFlags good;
    bool suitable() const {
        return good.good() && std::all_of(std::begin(sp), std::end(sp), [](bool b) { return b; });
    }
};

inline SuitablePairReport is_suitable_pair(const ColouredKGraph& h, const ComponentAtlas& a, const Blueprint& bp,
                                           const Edge& f, std::vector<int> w) {
    if (h.k() != 4) throw Error(ErrorCode::Unsupported, "suitable pairs are defined for k = 4");
    std::sort(w.begin(), w.end());
    if (w.empty()) throw Error(ErrorCode::HypothesisViolated, "W must be non-empty");
    for (int v : w) {
        if (f.contains(v)) throw Error(ErrorCode::HypothesisViolated, "W meets f");
        if (!bp.has_vertex(v)) throw Error(ErrorCode::HypothesisViolated, "W leaves V(G)");
    }
    SuitablePairReport r;
    r.f = f;
    r.w = w;
    r.good = good_flags(a, bp, f);
    std::vector<int> all(f.begin(), f.end());
    all.insert(all.end(), w.begin(), w.end());
    std::sort(all.begin(), all.end());
    auto sh = [&](int x, int y, int z) { return in_induced_shadow(a, bp, Edge{x, y}, z); };
    r.sp[0] = true;
    for_each_combination(all, 4, [&](const Edge& e) { r.sp[0] = r.sp[0] && h.contains(e); });
    r.sp[1] = true;
    for_each_combination(all, 2, [&](const Edge& e) { r.sp[1] = r.sp[1] && bp.has(e); });
    bool s3 = true, s4 = true, s5 = true, s6 = true;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (int z : w) s3 = s3 && sh(f[i], f[j], z);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            for (Vertex z : f) s4 = s4 && sh(w[i], w[j], z);
            for (Vertex x : f) s5 = s5 && sh(x, w[i], w[j]) && sh(x, w[j], w[i]);
            for (std::size_t t = j + 1; t < w.size(); ++t)
                s6 = s6 && sh(w[i], w[j], w[t]) && sh(w[i], w[t], w[j]) && sh(w[j], w[t], w[i]);
        }
    r.sp[2] = s3, r.sp[3] = s4, r.sp[4] = s5, r.sp[5] = s6;
    return r;
}

struct SampledPair {
    Edge f;
    std::vector<int> w;
};

struct SampleResult {
    std::vector<SampledPair> pairs;
    bool exhausted = false;
    std::size_t attempts = 0;
};

/// Random disjoint suitable pairs (f, W_f) with f from M and W_f an s-subset
/// of W. Each f gets `retries` draws.
inline SampleResult sample_suitable_pairs(const ColouredKGraph& h, const ComponentAtlas& a, const Blueprint& bp,
                                          const std::vector<Edge>& m, const std::vector<int>& w, int s, int want,
                                          std::mt19937_64& rng, int retries = 64) {
    SampleResult out;
    if (want <= 0) return out;
    for (const auto& f : m)
        for (int v : w)
            if (f.contains(v)) throw Error(ErrorCode::HypothesisViolated, "W meets V(M)");
    std::vector<Edge> order(m);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    std::vector<int> pool(w);
    for (const auto& f : order) {
        if (static_cast<int>(out.pairs.size()) >= want) break;
        for (int t = 0; t < retries && static_cast<int>(pool.size()) >= s; ++t) {
            ++out.attempts;
            for (int j = 0; j < s; ++j) std::swap(pool[j], pool[j + rng() % (pool.size() - j)]);
            std::vector<int> cand(pool.begin(), pool.begin() + s);
            if (!is_suitable_pair(h, a, bp, f, cand).suitable()) continue;
            std::sort(cand.begin(), cand.end());
            pool.erase(pool.begin(), pool.begin() + s);
            out.pairs.push_back({f, cand});
            break;
        }
    }
    out.exhausted = static_cast<int>(out.pairs.size()) < want;
    return out;
}

struct BWResult {
    int component = -1;
    std::vector<Edge> triples;                 // T_W
    std::map<Edge, std::vector<int>> gamma;    // Gamma_W(T)
};

/// Good edges of component comp whose vertices all lie in W.
inline std::vector<Edge> good_component_edges_in(const ColouredKGraph& h, const ComponentAtlas& a, const Blueprint& bp,
                                                 int comp, const std::vector<int>& w) {
    std::vector<char> in(h.n() + 1, 0);
    for (int v : w) in[v] = 1;
    std::vector<Edge> out;
    for (int id : a.d.components[comp]) {
        const Edge& e = h.edge(id);
        if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return in[v]; }) && is_good(a, bp, e)) out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// The blue component attached to W when the red component R has no good
/// edge inside W. Every witness (triples via Gamma, blue blueprint edges in
/// W) must name the same component.
inline BWResult compute_B_W(const ColouredKGraph& h, const ComponentAtlas& a, const Blueprint& bp, int red_comp,
                            std::vector<int> w) {
    if (h.k() != 4) throw Error(ErrorCode::Unsupported, "B_W is defined for k = 4");
    std::sort(w.begin(), w.end());
    const Colour rc = a.colour(red_comp), bc = other(rc);
    auto inside = good_component_edges_in(h, a, bp, red_comp, w);
    if (!inside.empty()) throw Error(ErrorCode::HypothesisViolated, "good edge " + inside.front().str() + " of R inside W");
    BWResult out;
    std::optional<std::pair<int, std::string>> chosen;
    auto settle = [&](int comp, const std::string& why) {
        if (!chosen) {
            chosen = std::make_pair(comp, why);
            return;
        }
        if (chosen->first != comp)
            throw Error(ErrorCode::InconsistentWitness,
                        why + " names component " + std::to_string(comp) + " but " + chosen->second + " names " +
                            std::to_string(chosen->first));
    };
    const KGraph& g = h.graph();
    for_each_combination(w, 3, [&](const Edge& t) {
        bool k3 = true, has_red = false;
        for_each_subset(t, 2, [&](const Edge& e) {
            int i = bp.index_of(e);
            if (i < 0) k3 = false;
            else if (bp.colours[i] == rc) has_red = true;
        });
        if (!k3 || !has_red || degree(g, t) == 0) return;
        out.triples.push_back(t);
        auto& gam = out.gamma[t];
        for (int x : w) {
            if (t.contains(x)) continue;
            bool ok = h.contains(t.with(x));
            for (Vertex y : t) ok = ok && bp.has(Edge{static_cast<int>(y), x});
            for_each_subset(t, 2, [&](const Edge& e) { ok = ok && in_induced_shadow(a, bp, e, x); });
            if (ok) gam.push_back(x);
        }
        if (gam.empty()) throw Error(ErrorCode::InconsistentWitness, "Gamma_W(" + t.str() + ") is empty");
        for (int x : gam) {
            Edge e = t.with(x);
            int comp = a.component_of(h, e);
            if (a.colour(comp) != bc || !is_good(a, bp, e))
                throw Error(ErrorCode::InconsistentWitness, e.str() + " is not a good edge of the other colour");
            settle(comp, "triple " + t.str());
        }
    });
    for_each_combination(w, 2, [&](const Edge& e) {
        int i = bp.index_of(e);
        if (i >= 0 && bp.colours[i] == bc) settle(bp.assign[i], "blueprint edge " + e.str());
    });
    if (!chosen) throw Error(ErrorCode::InconsistentWitness, "W carries no witness for B_W");
    out.component = chosen->first;
    return out;
}

/// For a suitable (f, W) with |W| = 3, f in the good part of component comp
/// and e a blueprint edge inside W assigned to comp: a vertex x of f lying in
/// every edge of comp's colour in H[f+W] that contains e.
inline int local_pivot(const ColouredKGraph& h, const ComponentAtlas& a, const Blueprint& bp, int comp, const Edge& f,
                       const std::vector<int>& w, const Edge& e) {
    const Colour c = a.colour(comp);
    if (w.size() != 3) throw Error(ErrorCode::HypothesisViolated, "W must have three vertices");
    if (a.component_of(h, f) != comp || !is_good(a, bp, f))
        throw Error(ErrorCode::HypothesisViolated, f.str() + " is not a good edge of the component");
    int ei = bp.index_of(e);
    if (ei < 0 || bp.assign[ei] != comp || !std::all_of(e.begin(), e.end(), [&](Vertex v) {
            return std::find(w.begin(), w.end(), v) != w.end();
        }))
        throw Error(ErrorCode::HypothesisViolated, e.str() + " is not a blueprint edge of the component inside W");
    if (!is_suitable_pair(h, a, bp, f, w).suitable()) throw Error(ErrorCode::HypothesisViolated, "(f, W) is not suitable");
    std::vector<int> all(f.begin(), f.end());
    all.insert(all.end(), w.begin(), w.end());
    std::sort(all.begin(), all.end());
    std::uint64_t common = ~std::uint64_t{0};
    std::vector<Edge> fam;
    for_each_combination(all, 4, [&](const Edge& g) {
        if (a.component_of(h, g) == comp) common &= g.mask64();
        if (is_subset(e, g) && h.has(g, c)) fam.push_back(g);
    });
    if (common == 0) throw Error(ErrorCode::HypothesisViolated, "component edges in H[f+W] have empty intersection");
    for (Vertex x : f) {
        if (!std::all_of(fam.begin(), fam.end(), [&](const Edge& g) { return g.contains(x); })) continue;
        for_each_combination(all, 4, [&](const Edge& g) {
            if (is_subset(e, g) && !g.contains(x) && h.has(g, c))
                throw Error(ErrorCode::InconsistentWitness, g.str() + " avoids the pivot but keeps the colour");
        });
        return x;
    }
    throw Error(ErrorCode::InconsistentWitness, "no vertex of f lies in every edge through " + e.str());
}

/// Three vertices z1 z2 z3 of W such that for each T_i every edge of
/// H[T_i + z1z2z3] exists and is good. Depth-first over W in order.
inline std::optional<std::array<int, 3>> find_extension(const ColouredKGraph& h, const ComponentAtlas& a,
                                                        const Blueprint& bp, const std::vector<Edge>& ts,
                                                        const std::vector<int>& w) {
    std::array<int, 3> z{};
    std::function<bool(int)> go = [&](int depth) -> bool {
        if (depth == 3) return true;
        for (int cand : w) {
            bool ok = true;
            for (int j = 0; j < depth; ++j) ok = ok && cand != z[j];
            for (const auto& t : ts) ok = ok && !t.contains(cand);
            for (std::size_t i = 0; i < ts.size() && ok; ++i) {
                Edge base = ts[i];
                for (int j = 0; j < depth; ++j) base = base.with(z[j]);
                for (Vertex x : base) ok = ok && bp.has(Edge{static_cast<int>(x), cand});
                if (!ok) break;
                for_each_subset(base, 3, [&](const Edge& s) { ok = ok && h.contains(s.with(cand)); });
                for_each_subset(base, 2, [&](const Edge& e) { ok = ok && in_induced_shadow(a, bp, e, cand); });
            }
            if (!ok) continue;
            z[depth] = cand;
            if (go(depth + 1)) return true;
        }
        return false;
    };
    if (!go(0)) return std::nullopt;
    for (const auto& t : ts) {
        Edge all = t;
        for (int v : z) all = all.with(v);
        bool ok = true;
        for_each_subset(all, 4, [&](const Edge& g) { ok = ok && h.contains(g) && is_good(a, bp, g); });
        if (!ok) throw Error(ErrorCode::InconsistentWitness, "extension of " + t.str() + " is not fully good");
    }
    return z;
}

}  // namespace tcr

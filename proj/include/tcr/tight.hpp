#pragma once

#include "tcr/hypergraph.hpp"

#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace tcr {

inline bool is_tight_walk(const KGraph& h, const std::vector<Edge>& seq) {
    if (seq.empty()) throw Error(ErrorCode::UnknownEdge, "empty walk");
    for (const auto& e : seq)
        if (!h.contains(e)) throw Error(ErrorCode::UnknownEdge, e.str() + " is not an edge");
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
        if (intersection_size(seq[i], seq[i + 1]) != h.k() - 1) return false;
    return true;
}

namespace detail {

struct DisjointSets {
    std::vector<int> parent;
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a), b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

/// Union-find over the chosen edge ids, keyed on shared (k-1)-subsets.
/// Returns component lists (edge ids ascending), ordered by their first id.
inline std::vector<std::vector<int>> tight_classes(const std::vector<Edge>& edges, const std::vector<int>& ids) {
    DisjointSets ds(ids.size());
    std::unordered_map<Edge, int, EdgeHash> first_owner;
    first_owner.reserve(ids.size() * 4);
    for (int j = 0; j < static_cast<int>(ids.size()); ++j) {
        const Edge& e = edges[ids[j]];
        for (int i = 0; i < e.size(); ++i) {
            auto [it, fresh] = first_owner.emplace(e.without_index(i), j);
            if (!fresh) ds.unite(it->second, j);
        }
    }
    std::vector<int> root_slot(ids.size(), -1);
    std::vector<std::vector<int>> out;
    for (int j = 0; j < static_cast<int>(ids.size()); ++j) {
        int r = ds.find(j);
        if (root_slot[r] < 0) {
            root_slot[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[root_slot[r]].push_back(ids[j]);
    }
    return out;
}

}  // namespace detail

/// Partition of a graph's edge ids into tight components. When built from a
/// coloured graph, red components come first and colour[c] is set.
struct TightDecomposition {
    std::vector<std::vector<int>> components;
    std::vector<int> component_of;
    std::vector<Colour> colour;  // empty for uncoloured decompositions

    std::size_t count() const noexcept { return components.size(); }
    bool coloured() const noexcept { return !colour.empty(); }
    std::size_t count(Colour c) const {
        return static_cast<std::size_t>(std::count(colour.begin(), colour.end(), c));
    }
};

inline TightDecomposition tight_components(const KGraph& h) {
    std::vector<int> ids(h.size());
    std::iota(ids.begin(), ids.end(), 0);
    TightDecomposition d;
    d.components = detail::tight_classes(h.edges(), ids);
    d.component_of.assign(h.size(), -1);
    for (int c = 0; c < static_cast<int>(d.components.size()); ++c)
        for (int id : d.components[c]) d.component_of[id] = c;
    return d;
}

inline TightDecomposition monochromatic_components(const ColouredKGraph& ch) {
    TightDecomposition d;
    d.component_of.assign(ch.size(), -1);
    for (Colour c : {Colour::Red, Colour::Blue}) {
        std::vector<int> ids;
        for (int i = 0; i < static_cast<int>(ch.size()); ++i)
            if (ch.colour(i) == c) ids.push_back(i);
        for (auto& comp : detail::tight_classes(ch.edges(), ids)) {
            for (int id : comp) d.component_of[id] = static_cast<int>(d.components.size());
            d.components.push_back(std::move(comp));
            d.colour.push_back(c);
        }
    }
    return d;
}

/// Edges of one component as a KGraph on the same vertex range.
inline KGraph component_graph(const KGraph& h, const TightDecomposition& d, int c) {
    std::vector<Edge> es;
    es.reserve(d.components.at(c).size());
    for (int id : d.components[c]) es.push_back(h.edge(id));
    return KGraph(h.k(), h.n(), std::move(es));
}

inline std::vector<int> vertex_support(const KGraph& h) {
    std::vector<char> seen(h.n() + 1, 0);
    for (const auto& e : h.edges())
        for (Vertex v : e) seen[v] = 1;
    std::vector<int> out;
    for (int v = 1; v <= h.n(); ++v)
        if (seen[v]) out.push_back(v);
    return out;
}

/// Shortest tight walk from a to b by BFS over shared (k-1)-sets; empty if
/// none exists.
inline std::vector<Edge> find_tight_walk(const KGraph& h, const Edge& a, const Edge& b) {
    int s = h.index_of(a), t = h.index_of(b);
    if (s < 0 || t < 0) throw Error(ErrorCode::UnknownEdge, "walk endpoints must be edges");
    std::unordered_map<Edge, std::vector<int>, EdgeHash> by_face;
    for (int i = 0; i < static_cast<int>(h.size()); ++i)
        for (int j = 0; j < h.k(); ++j) by_face[h.edge(i).without_index(j)].push_back(i);
    std::vector<int> prev(h.size(), -2);
    std::queue<int> q;
    q.push(s);
    prev[s] = -1;
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        if (x == t) break;
        for (int j = 0; j < h.k(); ++j)
            for (int y : by_face[h.edge(x).without_index(j)])
                if (prev[y] == -2) prev[y] = x, q.push(y);
    }
    if (prev[t] == -2) return {};
    std::vector<Edge> walk;
    for (int x = t; x != -1; x = prev[x]) walk.push_back(h.edge(x));
    std::reverse(walk.begin(), walk.end());
    return walk;
}

struct TightCycleWitness {
    std::vector<int> ordering;
    int length = 0;
    bool cyclic = true;
    std::optional<Colour> colour;
};

/// Exhaustion statistics backing an Absent verdict.
struct SearchStats {
    std::uint64_t nodes = 0;   // partial orderings extended
    std::uint64_t pruned = 0;  // partial orderings cut by a missing window
    int support = 0;
};

struct CycleSearchResult {
    std::optional<TightCycleWitness> witness;
    SearchStats stats;
    bool found() const noexcept { return witness.has_value(); }
};

inline constexpr int kDefaultSupportCap = 14;

/// Window-by-window recheck of a witness against h.
inline bool verify_witness(const KGraph& h, const TightCycleWitness& w) {
    const int l = static_cast<int>(w.ordering.size()), k = h.k();
    if (l != w.length || l < k) return false;
    std::vector<int> sorted = w.ordering;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
    if (w.cyclic && l < k + 1) return false;
    const int windows = w.cyclic ? l : l - k + 1;
    for (int i = 0; i < windows; ++i) {
        std::array<int, kMaxArity> tmp{};
        for (int j = 0; j < k; ++j) tmp[j] = w.ordering[(i + j) % l];
        if (!h.contains(Edge::from_range(tmp.begin(), tmp.begin() + k))) return false;
    }
    return true;
}

namespace detail {

class OrderingSearch {
public:
    OrderingSearch(const KGraph& h, int l, bool cyclic) : h_(h), k_(h.k()), l_(l), cyclic_(cyclic) {
        for (int i = 0; i < static_cast<int>(h.size()); ++i) {
            const Edge& e = h.edge(i);
            for (int j = 0; j < k_; ++j) next_[e.without_index(j)].push_back(e[j]);
        }
        for (auto& kv : next_) std::sort(kv.second.begin(), kv.second.end());
        support_ = vertex_support(h);
        used_.assign(h.n() + 1, 0);
    }

    CycleSearchResult run() {
        CycleSearchResult res;
        res.stats.support = static_cast<int>(support_.size());
        if (static_cast<int>(support_.size()) >= l_) {
            for (int v1 : support_) {
                seq_.assign(1, v1);
                used_[v1] = 1;
                bool hit = extend(res.stats);
                used_[v1] = 0;
                if (hit) {
                    res.witness = TightCycleWitness{seq_, l_, cyclic_, std::nullopt};
                    break;
                }
            }
        }
        return res;
    }

private:
    Edge window_ending_at(int last, int width) const {
        std::array<int, kMaxArity> tmp{};
        for (int j = 0; j < width; ++j) tmp[j] = seq_[last - width + 1 + j];
        return Edge::from_range(tmp.begin(), tmp.begin() + width);
    }
    bool closes() const {
        if (!cyclic_) return seq_.front() < seq_.back();
        if (!(seq_[1] < seq_.back())) return false;
        for (int i = l_ - k_ + 1; i < l_; ++i) {
            std::array<int, kMaxArity> tmp{};
            for (int j = 0; j < k_; ++j) tmp[j] = seq_[(i + j) % l_];
            if (!h_.contains(Edge::from_range(tmp.begin(), tmp.begin() + k_))) return false;
        }
        return true;
    }
    bool extend(SearchStats& st) {
        ++st.nodes;
        const int len = static_cast<int>(seq_.size());
        if (len == l_) {
            if (closes()) return true;
            ++st.pruned;
            return false;
        }
        const int v1 = seq_.front();
        auto try_vertex = [&](int v) {
            if (used_[v]) return false;
            if (cyclic_ && v < v1) return false;
            seq_.push_back(v);
            used_[v] = 1;
            bool ok = extend(st);
            if (!ok) seq_.pop_back(), used_[v] = 0;
            return ok;
        };
        if (len < k_ - 1) {
            // Early prefix: need the prefix to sit inside some edge (it is a face of the first window).
            for (int v : support_) {
                if (used_[v]) continue;
                seq_.push_back(v);
                bool in_face = prefix_has_extension();
                seq_.pop_back();
                if (!in_face) {
                    ++st.pruned;
                    continue;
                }
                if (try_vertex(v)) return true;
            }
            return false;
        }
        auto it = next_.find(window_ending_at(len - 1, k_ - 1));
        if (it == next_.end()) {
            ++st.pruned;
            return false;
        }
        for (int v : it->second)
            if (try_vertex(v)) return true;
        return false;
    }
    bool prefix_has_extension() const {
        Edge p = Edge::from_range(seq_.begin(), seq_.end());
        for (int id : h_.incident(p.front()))
            if (is_subset(p, h_.edge(id))) return true;
        return false;
    }

    const KGraph& h_;
    int k_, l_;
    bool cyclic_;
    std::unordered_map<Edge, std::vector<int>, EdgeHash> next_;
    std::vector<int> support_;
    std::vector<int> seq_;
    std::vector<char> used_;
};

inline CycleSearchResult search_ordering(const KGraph& h, int l, bool cyclic, int cap) {
    const int min_len = cyclic ? h.k() + 1 : h.k();
    if (l < min_len)
        throw Error(ErrorCode::HypothesisViolated,
                    std::string(cyclic ? "cycle" : "path") + " length must be at least " + std::to_string(min_len));
    auto support = vertex_support(h);
    if (static_cast<int>(support.size()) > cap)
        throw Error(ErrorCode::SearchCapExceeded,
                    "support " + std::to_string(support.size()) + " exceeds cap " + std::to_string(cap));
    OrderingSearch s(h, l, cyclic);
    return s.run();
}

}  // namespace detail

/// Exhaustive search for a tight cycle on l vertices. The witness fixes its
/// smallest vertex first and orients so that the second vertex is below the last.
inline CycleSearchResult find_tight_cycle(const KGraph& h, int l, int cap = kDefaultSupportCap) {
    return detail::search_ordering(h, l, true, cap);
}

inline CycleSearchResult find_tight_cycle(const KGraph& h, const TightDecomposition& d, int component, int l,
                                          int cap = kDefaultSupportCap) {
    auto res = find_tight_cycle(component_graph(h, d, component), l, cap);
    if (res.witness && d.coloured()) res.witness->colour = d.colour[component];
    return res;
}

inline CycleSearchResult find_tight_path(const KGraph& h, int l, int cap = kDefaultSupportCap) {
    return detail::search_ordering(h, l, false, cap);
}

}  // namespace tcr

#pragma once

#include "tcr/errors.hpp"
#include "tcr/rational.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tcr {

using Vertex = std::uint16_t;
inline constexpr int kMaxArity = 6;

/// A sorted vertex set of size at most kMaxArity. Used for edges and for
/// the small sets (links, shadows, windows) that algorithms pass around.
class Edge {
public:
    Edge() = default;
    Edge(std::initializer_list<int> vs) {
        if (vs.size() > kMaxArity) throw Error(ErrorCode::MalformedEdge, "set too large");
        for (int v : vs) v_[n_++] = static_cast<Vertex>(v);
        std::sort(v_.begin(), v_.begin() + n_);
    }
    template <class It>
    static Edge from_range(It first, It last) {
        Edge e;
        for (; first != last; ++first) {
            if (e.n_ == kMaxArity) throw Error(ErrorCode::MalformedEdge, "set too large");
            e.v_[e.n_++] = static_cast<Vertex>(*first);
        }
        std::sort(e.v_.begin(), e.v_.begin() + e.n_);
        return e;
    }

    int size() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }
    Vertex operator[](int i) const noexcept { return v_[i]; }
    const Vertex* begin() const noexcept { return v_.data(); }
    const Vertex* end() const noexcept { return v_.data() + n_; }
    Vertex front() const noexcept { return v_[0]; }
    Vertex back() const noexcept { return v_[n_ - 1]; }

    bool contains(int v) const noexcept {
        for (int i = 0; i < n_; ++i)
            if (v_[i] == v) return true;
        return false;
    }
    bool has_repeats() const noexcept {
        for (int i = 1; i < n_; ++i)
            if (v_[i] == v_[i - 1]) return true;
        return false;
    }
    /// Copy with position i dropped.
    Edge without_index(int i) const noexcept {
        Edge e;
        for (int j = 0; j < n_; ++j)
            if (j != i) e.v_[e.n_++] = v_[j];
        return e;
    }
    Edge without(int v) const noexcept {
        Edge e;
        for (int j = 0; j < n_; ++j)
            if (v_[j] != v) e.v_[e.n_++] = v_[j];
        return e;
    }
    Edge with(int v) const {
        if (contains(v)) return *this;
        if (n_ == kMaxArity) throw Error(ErrorCode::MalformedEdge, "set too large");
        Edge e = *this;
        e.v_[e.n_++] = static_cast<Vertex>(v);
        std::sort(e.v_.begin(), e.v_.begin() + e.n_);
        return e;
    }
    std::uint64_t mask64() const noexcept {
        std::uint64_t m = 0;
        for (int i = 0; i < n_; ++i) m |= std::uint64_t{1} << (v_[i] - 1);
        return m;
    }
    std::vector<int> to_vector() const { return {begin(), end()}; }
    std::string str() const {
        std::string s = "{";
        for (int i = 0; i < n_; ++i) {
            if (i) s += ',';
            s += std::to_string(v_[i]);
        }
        return s + "}";
    }

    friend bool operator==(const Edge& a, const Edge& b) noexcept {
        return a.n_ == b.n_ && std::equal(a.begin(), a.end(), b.begin());
    }
    friend bool operator<(const Edge& a, const Edge& b) noexcept {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }

private:
    std::array<Vertex, kMaxArity> v_{};
    std::uint8_t n_ = 0;
};

struct EdgeHash {
    std::size_t operator()(const Edge& e) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(e.size());
        for (Vertex v : e) {
            h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return static_cast<std::size_t>(h ^ (h >> 33));
    }
};

inline int intersection_size(const Edge& a, const Edge& b) noexcept {
    int i = 0, j = 0, c = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) ++c, ++i, ++j;
        else if (a[i] < b[j]) ++i;
        else ++j;
    }
    return c;
}

inline bool is_subset(const Edge& a, const Edge& b) noexcept {
    return intersection_size(a, b) == a.size();
}

inline Edge set_union(const Edge& a, const Edge& b) {
    Edge e = a;
    for (Vertex v : b) e = e.with(v);
    return e;
}

/// Calls f on each size-i subset of e, in lexicographic order.
template <class F>
void for_each_subset(const Edge& e, int i, F&& f) {
    const int m = e.size();
    if (i < 0 || i > m) return;
    std::array<int, kMaxArity> idx{};
    for (int j = 0; j < i; ++j) idx[j] = j;
    while (true) {
        Edge s;
        std::array<int, kMaxArity> tmp{};
        for (int j = 0; j < i; ++j) tmp[j] = e[idx[j]];
        s = Edge::from_range(tmp.begin(), tmp.begin() + i);
        f(s);
        int j = i - 1;
        while (j >= 0 && idx[j] == m - i + j) --j;
        if (j < 0) return;
        ++idx[j];
        for (int t = j + 1; t < i; ++t) idx[t] = idx[t - 1] + 1;
    }
}

/// Calls f on each i-subset of the given vertex list (kept in list order,
/// so pass a sorted list for lexicographic output).
template <class F>
void for_each_combination(const std::vector<int>& pool, int i, F&& f) {
    const int m = static_cast<int>(pool.size());
    if (i < 0 || i > m || i > kMaxArity) return;
    std::vector<int> idx(i);
    for (int j = 0; j < i; ++j) idx[j] = j;
    std::array<int, kMaxArity> tmp{};
    while (true) {
        for (int j = 0; j < i; ++j) tmp[j] = pool[idx[j]];
        f(Edge::from_range(tmp.begin(), tmp.begin() + i));
        int j = i - 1;
        while (j >= 0 && idx[j] == m - i + j) --j;
        if (j < 0) return;
        ++idx[j];
        for (int t = j + 1; t < i; ++t) idx[t] = idx[t - 1] + 1;
    }
}

inline std::vector<int> iota_vertices(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    return v;
}

template <class F>
void for_each_combination(int n, int i, F&& f) {
    for_each_combination(iota_vertices(n), i, std::forward<F>(f));
}

enum class Colour : std::uint8_t { Red, Blue };

inline Colour other(Colour c) { return c == Colour::Red ? Colour::Blue : Colour::Red; }
inline const char* colour_name(Colour c) { return c == Colour::Red ? "red" : "blue"; }
inline char colour_letter(Colour c) { return c == Colour::Red ? 'R' : 'B'; }

/// k-uniform hypergraph on vertices 1..n with edges held in sorted order.
class KGraph {
public:
    KGraph() = default;
    KGraph(int k, int n) : k_(k), n_(n), incidence_(n + 1) { check_params(); }
    KGraph(int k, int n, std::vector<Edge> edges) : k_(k), n_(n) {
        check_params();
        for (const auto& e : edges) check_edge(e);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        edges_ = std::move(edges);
        index_build();
    }

    int k() const noexcept { return k_; }
    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(int i) const { return edges_[i]; }
    const std::vector<int>& incident(int v) const { return incidence_[v]; }

    int index_of(const Edge& e) const {
        auto it = index_.find(e);
        return it == index_.end() ? -1 : it->second;
    }
    bool contains(const Edge& e) const { return index_.count(e) > 0; }

    void check_edge(const Edge& e) const {
        if (e.size() != k_)
            throw Error(ErrorCode::MalformedEdge,
                        e.str() + " has " + std::to_string(e.size()) + " vertices, expected " +
                            std::to_string(k_));
        if (e.has_repeats()) throw Error(ErrorCode::MalformedEdge, e.str() + " repeats a vertex");
        if (e.front() < 1 || e.back() > n_)
            throw Error(ErrorCode::MalformedEdge, e.str() + " leaves [1," + std::to_string(n_) + "]");
    }

private:
    void check_params() const {
        if (k_ < 2 || k_ > kMaxArity) throw Error(ErrorCode::MalformedEdge, "k out of range");
        if (n_ < k_) throw Error(ErrorCode::MalformedEdge, "n must be at least k");
        if (n_ > 65535) throw Error(ErrorCode::SizeCapExceeded, "too many vertices");
    }
    void index_build() {
        incidence_.assign(n_ + 1, {});
        index_.reserve(edges_.size() * 2);
        for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
            index_.emplace(edges_[i], i);
            for (Vertex v : edges_[i]) incidence_[v].push_back(i);
        }
    }

    int k_ = 2, n_ = 2;
    std::vector<Edge> edges_;
    std::unordered_map<Edge, int, EdgeHash> index_;
    std::vector<std::vector<int>> incidence_;
};

/// A KGraph with a red/blue colour per edge (parallel to edges()).
class ColouredKGraph {
public:
    ColouredKGraph() = default;
    ColouredKGraph(KGraph g, std::vector<Colour> colour) : g_(std::move(g)), colour_(std::move(colour)) {
        if (colour_.size() != g_.size()) throw Error(ErrorCode::MalformedEdge, "colour not total");
    }

    const KGraph& graph() const noexcept { return g_; }
    int k() const noexcept { return g_.k(); }
    int n() const noexcept { return g_.n(); }
    std::size_t size() const noexcept { return g_.size(); }
    const std::vector<Edge>& edges() const noexcept { return g_.edges(); }
    const Edge& edge(int i) const { return g_.edge(i); }
    Colour colour(int i) const { return colour_[i]; }
    const std::vector<Colour>& colours() const noexcept { return colour_; }
    int index_of(const Edge& e) const { return g_.index_of(e); }
    bool contains(const Edge& e) const { return g_.contains(e); }

    std::optional<Colour> colour_of(const Edge& e) const {
        int i = g_.index_of(e);
        if (i < 0) return std::nullopt;
        return colour_[i];
    }
    bool has(const Edge& e, Colour c) const {
        int i = g_.index_of(e);
        return i >= 0 && colour_[i] == c;
    }
    std::size_t count(Colour c) const {
        return static_cast<std::size_t>(std::count(colour_.begin(), colour_.end(), c));
    }
    KGraph subgraph(Colour c) const {
        std::vector<Edge> es;
        for (std::size_t i = 0; i < g_.size(); ++i)
            if (colour_[i] == c) es.push_back(g_.edge(static_cast<int>(i)));
        return KGraph(g_.k(), g_.n(), std::move(es));
    }
    /// Same edges, colours exchanged.
    ColouredKGraph swapped() const {
        std::vector<Colour> c(colour_);
        for (auto& x : c) x = other(x);
        return ColouredKGraph(g_, std::move(c));
    }

private:
    KGraph g_;
    std::vector<Colour> colour_;
};

/// Validating constructor. Duplicate edges are merged when the colours agree.
inline ColouredKGraph build(int k, int n, const std::vector<std::pair<Colour, Edge>>& coloured_edges) {
    KGraph shape(k, n);
    std::unordered_map<Edge, Colour, EdgeHash> seen;
    seen.reserve(coloured_edges.size() * 2);
    std::vector<Edge> es;
    es.reserve(coloured_edges.size());
    for (const auto& [c, e] : coloured_edges) {
        shape.check_edge(e);
        auto [it, fresh] = seen.emplace(e, c);
        if (!fresh) {
            if (it->second != c)
                throw Error(ErrorCode::ConflictingColour, e.str() + " given both colours");
            continue;
        }
        es.push_back(e);
    }
    KGraph g(k, n, std::move(es));
    std::vector<Colour> col(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) col[i] = seen.at(g.edge(static_cast<int>(i)));
    return ColouredKGraph(std::move(g), std::move(col));
}

inline KGraph complete_graph(int k, int n) {
    std::vector<Edge> es;
    es.reserve(static_cast<std::size_t>(binomial(n, k)));
    for_each_combination(n, k, [&](const Edge& e) { es.push_back(e); });
    return KGraph(k, n, std::move(es));
}

inline ColouredKGraph monochrome(const KGraph& g, Colour c) {
    return ColouredKGraph(g, std::vector<Colour>(g.size(), c));
}

/// Colours every k-subset of [n] by a predicate.
template <class Pred>
ColouredKGraph colour_complete(int k, int n, Pred&& red) {
    KGraph g = complete_graph(k, n);
    std::vector<Colour> col(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        col[i] = red(g.edge(static_cast<int>(i))) ? Colour::Red : Colour::Blue;
    return ColouredKGraph(std::move(g), std::move(col));
}

/// d_H(S) and N_H(S) = { T : S ∪ T ∈ E(H) }.
inline std::pair<std::size_t, std::vector<Edge>> degree_and_link(const KGraph& h, const Edge& s) {
    if (s.size() < 1 || s.size() > h.k() - 1)
        throw Error(ErrorCode::BadArity, "|S| must lie in [1, k-1]");
    std::vector<Edge> link;
    if (s.front() < 1 || s.back() > h.n()) return {0, link};
    for (int id : h.incident(s.front())) {
        const Edge& e = h.edge(id);
        if (!is_subset(s, e)) continue;
        Edge t;
        for (Vertex v : e)
            if (!s.contains(v)) t = t.with(v);
        link.push_back(t);
    }
    std::sort(link.begin(), link.end());
    return {link.size(), link};
}

inline std::size_t degree(const KGraph& h, const Edge& s) { return degree_and_link(h, s).first; }

/// All (k-1)-subsets of edges, as a (k-1)-graph. For k = 2 the result would be
/// 1-uniform, which KGraph cannot hold; use shadow_sets for that case.
inline std::vector<Edge> shadow_sets(const KGraph& h) {
    std::vector<Edge> out;
    out.reserve(h.size() * h.k());
    for (const auto& e : h.edges())
        for (int i = 0; i < e.size(); ++i) out.push_back(e.without_index(i));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline KGraph shadow(const KGraph& h) {
    if (h.k() < 3) throw Error(ErrorCode::BadArity, "shadow of a 2-graph is not a k-graph here");
    return KGraph(h.k() - 1, h.n(), shadow_sets(h));
}

/// Rank of a sorted set of vertices in colexicographic order (0-based).
inline std::int64_t colex_rank(const Edge& s) {
    std::int64_t r = 0;
    for (int j = 0; j < s.size(); ++j) r += binomial(s[j] - 1, j + 1);
    return r;
}

/// Degrees of all i-sets with positive degree, as a sparse map.
inline std::unordered_map<Edge, std::size_t, EdgeHash> level_degrees(const KGraph& h, int i) {
    std::unordered_map<Edge, std::size_t, EdgeHash> deg;
    for (const auto& e : h.edges()) for_each_subset(e, i, [&](const Edge& s) { ++deg[s]; });
    return deg;
}

/// Calls f(d) once per i-subset of [n] with its degree d (zeros included).
template <class F>
void for_each_level_degree(const KGraph& h, int i, F&& f) {
    const std::int64_t total = binomial(h.n(), i);
    if (total <= 8'000'000) {
        std::vector<std::size_t> dense(static_cast<std::size_t>(total), 0);
        for (const auto& e : h.edges())
            for_each_subset(e, i, [&](const Edge& s) { ++dense[colex_rank(s)]; });
        for (auto d : dense) f(d);
        return;
    }
    auto sparse = level_degrees(h, i);
    std::vector<std::size_t> ds;
    ds.reserve(sparse.size());
    for (const auto& kv : sparse) ds.push_back(kv.second);
    std::sort(ds.begin(), ds.end());
    for (std::int64_t u = total - static_cast<std::int64_t>(ds.size()); u > 0; --u) f(std::size_t{0});
    for (auto d : ds) f(d);
}

struct DensityLevel {
    int i = 0;
    std::int64_t total = 0;       // C(n, i)
    Rational threshold;           // mu * C(n - i, k - i)
    std::int64_t at_least = 0;    // degree >= threshold
    std::int64_t zero = 0;        // degree 0 and below threshold
    std::int64_t violating = 0;   // 0 < degree < threshold
};

struct DensityReport {
    Rational mu, alpha;
    std::vector<DensityLevel> per_level;
    bool pass = true;
};

/// (mu, alpha)-density: per level, at most alpha*C(n,i) sets fall below the
/// threshold, and each of those has degree 0.
inline DensityReport density_check(const KGraph& h, const Rational& mu, const Rational& alpha) {
    if (mu < 0 || mu > 1 || alpha < 0 || alpha > 1)
        throw Error(ErrorCode::HypothesisViolated, "mu and alpha must lie in [0,1]");
    DensityReport rep{mu, alpha, {}, true};
    const int n = h.n(), k = h.k();
    for (int i = 1; i <= k - 1; ++i) {
        DensityLevel lv;
        lv.i = i;
        lv.total = binomial(n, i);
        lv.threshold = mu * binomial(n - i, k - i);
        for_each_level_degree(h, i, [&](std::size_t d) {
            if (Rational(d) >= lv.threshold) ++lv.at_least;
            else if (d == 0) ++lv.zero;
            else ++lv.violating;
        });
        if (lv.violating > 0 || Rational(lv.zero) > alpha * lv.total) rep.pass = false;
        rep.per_level.push_back(lv);
    }
    return rep;
}

/// Smallest eps for which h is (1-eps, eps)-dense.
inline Rational min_density_eps(const KGraph& h) {
    Rational best = 0;
    for (int i = 1; i <= h.k() - 1; ++i) {
        std::int64_t zero = 0, min_pos = -1;
        for_each_level_degree(h, i, [&](std::size_t d) {
            if (d == 0) ++zero;
            else if (min_pos < 0 || static_cast<std::int64_t>(d) < min_pos) min_pos = static_cast<std::int64_t>(d);
        });
        best = std::max(best, Rational(zero, binomial(h.n(), i)));
        if (min_pos >= 0)
            best = std::max(best, 1 - Rational(min_pos, binomial(h.n() - i, h.k() - i)));
    }
    return best;
}

/// Vertex-induced subgraph on a vertex subset (vertex labels unchanged).
inline ColouredKGraph induced(const ColouredKGraph& h, const std::vector<int>& vertices) {
    std::vector<char> in(h.n() + 1, 0);
    for (int v : vertices) in[v] = 1;
    std::vector<std::pair<Colour, Edge>> es;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const Edge& e = h.edge(static_cast<int>(i));
        bool ok = true;
        for (Vertex v : e) ok = ok && in[v];
        if (ok) es.emplace_back(h.colour(static_cast<int>(i)), e);
    }
    return build(h.k(), h.n(), es);
}

}  // namespace tcr

#pragma once

#include "tcr/hypergraph.hpp"
#include "tcr/lp.hpp"
#include "tcr/tight.hpp"

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace tcr {

/// Edge weights over a host edge set. Only positive weights are stored.
struct FractionalMatching {
    std::vector<Edge> host;  // sorted
    std::map<Edge, Rational> weights;
    std::optional<int> component;  // host component id, when the host is one

    Rational weight() const {
        Rational w = 0;
        for (const auto& kv : weights) w += kv.second;
        return w;
    }
    Rational at(const Edge& e) const {
        auto it = weights.find(e);
        return it == weights.end() ? Rational(0) : it->second;
    }
    std::vector<Edge> support() const {
        std::vector<Edge> s;
        for (const auto& kv : weights) s.push_back(kv.first);
        return s;
    }
    void set(const Edge& e, const Rational& w) {
        if (w == 0) weights.erase(e);
        else weights[e] = w;
    }
    /// True when every weight is a multiple of 1/r.
    bool is_one_over(std::int64_t r) const {
        for (const auto& kv : weights) {
            Rational t = kv.second * r;
            if (boost::multiprecision::denominator(t) != 1) return false;
        }
        return true;
    }
    std::vector<int> vertices() const {
        std::vector<int> vs;
        for (const auto& kv : weights)
            for (Vertex v : kv.first) vs.push_back(v);
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }
};

inline std::vector<Edge> sorted_edges(std::vector<Edge> es) {
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    return es;
}

/// The fractional matching induced by a matching: weight 1 on each edge.
inline FractionalMatching induced_by(const std::vector<Edge>& matching) {
    FractionalMatching f;
    f.host = sorted_edges(matching);
    for (const auto& e : f.host) f.weights[e] = 1;
    return f;
}

/// Completion: same weights, host enlarged to a superset.
inline FractionalMatching completion(const FractionalMatching& phi, const std::vector<Edge>& bigger_host) {
    FractionalMatching out;
    out.host = sorted_edges(bigger_host);
    for (const auto& e : phi.host)
        if (!std::binary_search(out.host.begin(), out.host.end(), e))
            throw Error(ErrorCode::HypothesisViolated, "completion host must contain " + e.str());
    out.weights = phi.weights;
    return out;
}

/// Sum of fractional matchings on vertex-disjoint hosts.
inline FractionalMatching disjoint_sum(const FractionalMatching& a, const FractionalMatching& b) {
    std::map<int, char> used;
    for (const auto& e : a.host)
        for (Vertex v : e) used[v] = 1;
    for (const auto& e : b.host)
        for (Vertex v : e)
            if (used.count(v)) throw Error(ErrorCode::HypothesisViolated, "hosts share vertex " + std::to_string(v));
    FractionalMatching out;
    out.host = a.host;
    out.host.insert(out.host.end(), b.host.begin(), b.host.end());
    out.host = sorted_edges(out.host);
    out.weights = a.weights;
    for (const auto& kv : b.weights) out.weights[kv.first] = kv.second;
    return out;
}

struct FractionalCheck {
    bool valid = true;
    std::string violation;
    std::optional<int> vertex;
};

/// Vertex constraints, weight range and host membership.
inline FractionalCheck validate_fractional(const std::vector<Edge>& host, const FractionalMatching& phi) {
    std::vector<Edge> h = sorted_edges(host);
    std::map<int, Rational> load;
    for (const auto& [e, w] : phi.weights) {
        if (w < 0 || w > 1) return {false, e.str() + " has weight " + to_string(w) + " outside [0,1]", {}};
        if (!std::binary_search(h.begin(), h.end(), e)) return {false, e.str() + " is not in the host", {}};
        for (Vertex v : e) load[v] += w;
    }
    for (const auto& [v, s] : load)
        if (s > 1) return {false, "vertex " + std::to_string(v) + " carries " + to_string(s), v};
    return {};
}

inline FractionalCheck validate_fractional(const FractionalMatching& phi) { return validate_fractional(phi.host, phi); }

inline bool is_matching(const std::vector<Edge>& es) {
    std::map<int, int> seen;
    for (const auto& e : es)
        for (Vertex v : e)
            if (seen[v]++) return false;
    return true;
}

struct MatchingCertificate {
    std::vector<Edge> edges;
    std::size_t size = 0;
    bool optimal = false;
    std::uint64_t states = 0;     // memo entries explored
    std::size_t upper_bound = 0;  // floor(|support| / k)
};

inline constexpr std::size_t kDefaultMatchingCap = 10000;

namespace detail {

/// Fixed-width vertex bitset used as a memo key.
template <int W>
struct Bits {
    std::array<std::uint64_t, W> w{};
    void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    int lowest() const {
        for (int j = 0; j < W; ++j)
            if (w[j]) return j * 64 + __builtin_ctzll(w[j]);
        return -1;
    }
    int count() const {
        int c = 0;
        for (auto x : w) c += __builtin_popcountll(x);
        return c;
    }
    bool operator==(const Bits& o) const { return w == o.w; }
};

template <int W>
struct BitsHash {
    std::size_t operator()(const Bits<W>& b) const noexcept {
        std::uint64_t h = 0;
        for (auto x : b.w) h = (h ^ x) * 0x9e3779b97f4a7c15ull + (h >> 29);
        return static_cast<std::size_t>(h);
    }
};

/// Exact maximum matching by memoised search over remaining-vertex sets.
/// Vertices with identical links (twins; never in a common edge) are
/// interchangeable, so each branch only uses the lowest remaining twins.
template <int W>
class MatchingSearch {
public:
    MatchingSearch(const std::vector<Edge>& host, int k) : host_(host), k_(k) {
        int maxv = 0;
        for (const auto& e : host_) maxv = std::max<int>(maxv, e.back());
        n_ = maxv;
        std::vector<std::vector<Edge>> link(n_ + 1);
        for (const auto& e : host_)
            for (int i = 0; i < e.size(); ++i) link[e[i]].push_back(e.without_index(i));
        for (auto& l : link) std::sort(l.begin(), l.end());
        cls_.assign(n_ + 1, -1);
        std::map<std::vector<Edge>, int> by_link;
        for (int v = 1; v <= n_; ++v) {
            if (link[v].empty()) continue;
            auto [it, fresh] = by_link.emplace(link[v], static_cast<int>(members_.size()));
            if (fresh) members_.emplace_back();
            cls_[v] = it->second;
            members_[it->second].push_back(v);
        }
        for (const auto& e : host_) index_.emplace(e, 1);
        // Per vertex: the distinct multisets of twin classes among the other k-1 vertices.
        patterns_.assign(n_ + 1, {});
        for (const auto& e : host_)
            for (int i = 0; i < e.size(); ++i) {
                std::vector<int> p;
                for (int j = 0; j < e.size(); ++j)
                    if (j != i) p.push_back(cls_[e[j]]);
                std::sort(p.begin(), p.end());
                patterns_[e[i]].push_back(p);
            }
        for (auto& ps : patterns_) {
            std::sort(ps.begin(), ps.end());
            ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
        }
        for (int v = 1; v <= n_; ++v)
            if (cls_[v] >= 0) full_.set(v - 1);
    }

    MatchingCertificate run() {
        MatchingCertificate cert;
        cert.upper_bound = static_cast<std::size_t>(full_.count() / k_);
        solve(full_);
        Bits<W> cur = full_;
        while (true) {
            auto it = memo_.find(cur);
            if (it == memo_.end() || it->second.first == 0) break;
            const Edge& pick = it->second.second;
            if (pick.empty()) {
                for (int u : members_[cls_[cur.lowest() + 1]]) cur.reset(u - 1);
            } else {
                cert.edges.push_back(pick);
                for (Vertex v : pick) cur.reset(v - 1);
            }
        }
        std::sort(cert.edges.begin(), cert.edges.end());
        cert.size = cert.edges.size();
        cert.optimal = true;
        cert.states = memo_.size();
        return cert;
    }

private:
    int solve(const Bits<W>& mask) {
        int low = mask.lowest();
        if (low < 0 || mask.count() < k_) return 0;
        auto it = memo_.find(mask);
        if (it != memo_.end()) return it->second.first;
        const int v = low + 1;
        const int bound = mask.count() / k_;
        int best = -1;
        Edge arg;
        // Branch: v's whole remaining twin class stays unmatched.
        {
            Bits<W> next = mask;
            for (int u : members_[cls_[v]]) next.reset(u - 1);
            best = solve(next);
        }
        std::vector<int> lowest_free;
        for (const auto& p : patterns_[v]) {
            if (best == bound) break;
            Edge cand{v};
            bool ok = true;
            std::map<int, int> used_in_class;
            for (int c : p) {
                int skip = used_in_class[c]++;
                int pick = -1;
                for (int u : members_[c]) {
                    if (u == v || !mask.test(u - 1)) continue;
                    if (skip-- == 0) {
                        pick = u;
                        break;
                    }
                }
                if (pick < 0) {
                    ok = false;
                    break;
                }
                cand = cand.with(pick);
            }
            if (!ok || cand.size() != k_ || !index_.count(cand)) continue;
            Bits<W> next = mask;
            for (Vertex u : cand) next.reset(u - 1);
            int val = 1 + solve(next);
            if (val > best) best = val, arg = cand;
        }
        memo_.emplace(mask, std::make_pair(best, arg));
        return best;
    }

    const std::vector<Edge>& host_;
    int k_, n_ = 0;
    std::vector<int> cls_;
    std::vector<std::vector<int>> members_;
    std::vector<std::vector<std::vector<int>>> patterns_;
    std::unordered_map<Edge, int, EdgeHash> index_;
    std::unordered_map<Bits<W>, std::pair<int, Edge>, BitsHash<W>> memo_;
    Bits<W> full_;
};

}  // namespace detail

/// Maximum matching with an optimality certificate from exhaustive memoised search.
inline MatchingCertificate max_matching_exact(const std::vector<Edge>& host_in,
                                              std::size_t cap = kDefaultMatchingCap) {
    auto host = sorted_edges(host_in);
    if (host.size() > cap)
        throw Error(ErrorCode::SearchCapExceeded,
                    std::to_string(host.size()) + " host edges exceed cap " + std::to_string(cap));
    if (host.empty()) return MatchingCertificate{{}, 0, true, 0, 0};
    const int k = host.front().size();
    int maxv = 0;
    for (const auto& e : host) maxv = std::max<int>(maxv, e.back());
    if (maxv <= 64) return detail::MatchingSearch<1>(host, k).run();
    if (maxv <= 128) return detail::MatchingSearch<2>(host, k).run();
    if (maxv <= 256) return detail::MatchingSearch<4>(host, k).run();
    throw Error(ErrorCode::SearchCapExceeded, "exact matching supports at most 256 vertices");
}

/// Solves the fractional matching LP over the given host edges, optionally
/// forcing weight at least `floor` on the edges flagged in `lower`.
inline LpSolution<Rational> fractional_lp(const std::vector<Edge>& host, const std::vector<char>& zero,
                                          const std::vector<char>& lower, const Rational& floor) {
    std::vector<int> verts;
    for (const auto& e : host)
        for (Vertex v : e) verts.push_back(v);
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    std::vector<int> live;
    for (int j = 0; j < static_cast<int>(host.size()); ++j)
        if (zero.empty() || !zero[j]) live.push_back(j);
    std::vector<std::vector<Rational>> a(verts.size(), std::vector<Rational>(live.size()));
    std::vector<Rational> b(verts.size(), Rational(1)), c(live.size(), Rational(1));
    Rational shift = 0;
    for (std::size_t j = 0; j < live.size(); ++j) {
        const Edge& e = host[live[j]];
        bool lo = !lower.empty() && lower[live[j]];
        if (lo) shift += floor;
        for (Vertex v : e) {
            auto r = std::lower_bound(verts.begin(), verts.end(), v) - verts.begin();
            a[r][j] = 1;
            if (lo) b[r] -= floor;
        }
    }
    auto sol = solve_lp(a, b, c);
    if (sol.status != LpStatus::Optimal) return sol;
    std::vector<Rational> x(host.size(), Rational(0));
    for (std::size_t j = 0; j < live.size(); ++j) {
        bool lo = !lower.empty() && lower[live[j]];
        x[live[j]] = sol.x[j] + (lo ? floor : Rational(0));
    }
    sol.x = std::move(x);
    sol.value += shift;
    return sol;
}

/// Optimal fractional matching on a host edge set, by exact simplex.
inline FractionalMatching max_fractional_lp(const std::vector<Edge>& host_in) {
    auto host = sorted_edges(host_in);
    if (host.empty()) throw Error(ErrorCode::HypothesisViolated, "host must be non-empty");
    auto sol = fractional_lp(host, {}, {}, 0);
    FractionalMatching f;
    f.host = host;
    for (std::size_t j = 0; j < host.size(); ++j) f.set(host[j], sol.x[j]);
    return f;
}

/// Empty-intersection construction: weight 1/(s-1) on each of the s edges of F, which must
/// have empty common intersection.
inline FractionalMatching empty_intersection_matching(const std::vector<Edge>& f_in) {
    auto f = sorted_edges(f_in);
    if (f.empty()) throw Error(ErrorCode::HypothesisViolated, "F must be non-empty");
    Edge common = f.front();
    for (const auto& e : f) {
        Edge keep;
        for (Vertex v : common)
            if (e.contains(v)) keep = keep.with(v);
        common = keep;
    }
    if (!common.empty()) throw Error(ErrorCode::NonEmptyIntersection, "F shares " + common.str());
    if (f.size() < 2) throw Error(ErrorCode::NonEmptyIntersection, "a single edge has non-empty intersection");
    FractionalMatching out;
    out.host = f;
    const Rational w(1, static_cast<long>(f.size() - 1));
    for (const auto& e : f) out.weights[e] = w;
    auto chk = validate_fractional(out);
    if (!chk.valid) throw Error(ErrorCode::ContractUnmet, chk.violation);
    return out;
}

struct MuEstimate {
    Rational value = 0;
    bool exact = true;
    std::vector<int> components;  // chosen component ids
    FractionalMatching matching;
    std::string method;
};

namespace detail {

/// Semi-continuous search: each edge weight is 0 or at least beta.
inline void floor_branch(const std::vector<Edge>& host, std::vector<char>& zero, std::vector<char>& lower,
                         const Rational& beta, Rational& best, std::vector<Rational>& best_x,
                         std::uint64_t& nodes) {
    ++nodes;
    auto sol = fractional_lp(host, zero, lower, beta);
    if (sol.status != LpStatus::Optimal || sol.value <= best) return;
    int split = -1;
    for (int j = 0; j < static_cast<int>(host.size()); ++j)
        if (sol.x[j] > 0 && sol.x[j] < beta) {
            split = j;
            break;
        }
    if (split < 0) {
        best = sol.value;
        best_x = sol.x;
        return;
    }
    lower[split] = 1;
    floor_branch(host, zero, lower, beta, best, best_x, nodes);
    lower[split] = 0;
    zero[split] = 1;
    floor_branch(host, zero, lower, beta, best, best_x, nodes);
    zero[split] = 0;
}

inline MuEstimate mu_on_host(const std::vector<Edge>& host, const Rational& beta, std::size_t exact_limit) {
    MuEstimate out;
    if (host.empty()) return out;
    if (beta >= 1) {
        auto m = max_matching_exact(host);
        out.value = static_cast<long>(m.size);
        out.matching = induced_by(m.edges);
        out.matching.host = host;
        out.method = "integral";
        return out;
    }
    auto sol = fractional_lp(host, {}, {}, 0);
    bool floor_ok = true;
    for (const auto& x : sol.x)
        if (x > 0 && x < beta) floor_ok = false;
    std::vector<Rational> x = sol.x;
    Rational val = sol.value;
    if (floor_ok) {
        out.method = "lp";
    } else if (host.size() <= exact_limit) {
        std::vector<char> zero(host.size(), 0), lower(host.size(), 0);
        Rational best = -1;
        std::uint64_t nodes = 0;
        floor_branch(host, zero, lower, beta, best, x, nodes);
        val = best < 0 ? Rational(0) : best;
        if (best < 0) x.assign(host.size(), Rational(0));
        out.method = "floor-branch";
    } else {
        val = 0;
        for (auto& xi : x) {
            if (xi < beta) xi = 0;
            val += xi;
        }
        out.exact = false;
        out.method = "lp-truncated";
    }
    out.value = val;
    out.matching.host = host;
    for (std::size_t j = 0; j < host.size(); ++j) out.matching.set(host[j], x[j]);
    return out;
}

}  // namespace detail

inline constexpr std::size_t kMuExactEdgeLimit = 20;

/// Best fractional matching whose support lies in s monochromatic tight
/// components and whose positive weights are all at least beta.
inline MuEstimate mu_estimate(const ColouredKGraph& ch, int s, const Rational& beta,
                              std::size_t exact_limit = kMuExactEdgeLimit) {
    if (s < 1) throw Error(ErrorCode::Unsupported, "s must be positive");
    auto d = monochromatic_components(ch);
    if (static_cast<std::size_t>(s) > d.count())
        throw Error(ErrorCode::Unsupported, "s exceeds the number of monochromatic components");
    MuEstimate best;
    bool have = false;
    std::vector<int> pick(s);
    for (int i = 0; i < s; ++i) pick[i] = i;
    const int m = static_cast<int>(d.count());
    while (true) {
        std::vector<Edge> host;
        for (int c : pick)
            for (int id : d.components[c]) host.push_back(ch.edge(id));
        auto est = detail::mu_on_host(sorted_edges(host), beta, exact_limit);
        est.components = pick;
        if (est.matching.weights.size() && s == 1) est.matching.component = pick[0];
        if (!have || est.value > best.value) best = est, have = true;
        int j = s - 1;
        while (j >= 0 && pick[j] == m - s + j) --j;
        if (j < 0) break;
        ++pick[j];
        for (int t = j + 1; t < s; ++t) pick[t] = pick[t - 1] + 1;
    }
    return best;
}

}  // namespace tcr

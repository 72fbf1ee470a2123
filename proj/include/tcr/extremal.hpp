#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tcr/hypergraph.hpp"
#include "tcr/matching.hpp"
#include "tcr/tight.hpp"

namespace tcr {

enum class ExtremalForm { Split, Parity };
inline const char* form_name(ExtremalForm f) { return f == ExtremalForm::Split ? "split" : "parity"; }

/// Parameters of a lower-bound colouring. X = {1..|X|}, Y = the rest.
struct ExtremalSpec {
    ExtremalForm form = ExtremalForm::Split;
    int k = 0, n = 0, i = 0, d = 0;
    int N = 0;
    int x_size = 0, y_size = 0;

    bool in_x(int v) const { return v >= 1 && v <= x_size; }
    int x_count(const Edge& e) const {
        int c = 0;
        for (Vertex v : e) c += in_x(v);
        return c;
    }
    /// The cycle length the colouring is built to avoid.
    int target_length() const { return k * n + i; }
};

inline constexpr std::size_t kDefaultColouringCap = 2'000'000;

struct ExtremalColouring {
    ColouredKGraph graph;
    ExtremalSpec spec;
};

namespace detail {

inline void check_edge_budget(int k, int big_n, std::size_t cap) {
    double c = 1;
    for (int j = 0; j < k; ++j) c = c * (big_n - j) / (j + 1);
    if (c > static_cast<double>(cap))
        throw Error(ErrorCode::SizeCapExceeded, "C(" + std::to_string(big_n) + "," + std::to_string(k) + ") exceeds cap " +
                                                    std::to_string(cap));
}

}  // namespace detail

/// Red: edges meeting X, |X| = n - 1. Blue: edges inside Y, |Y| = kn - 1.
inline ExtremalSpec split_spec(int k, int n) {
    if (k < 2 || n < 2) throw Error(ErrorCode::HypothesisViolated, "split colouring needs k, n >= 2");
    if (k > kMaxArity) throw Error(ErrorCode::BadArity, "k above " + std::to_string(kMaxArity));
    ExtremalSpec s;
    s.form = ExtremalForm::Split;
    s.k = k, s.n = n, s.i = 0, s.d = k;
    s.N = (k + 1) * n - 2;
    s.x_size = n - 1;
    s.y_size = k * n - 1;
    return s;
}

inline ExtremalColouring split_coloring(int k, int n, std::size_t cap = kDefaultColouringCap) {
    auto s = split_spec(k, n);
    detail::check_edge_budget(k, s.N, cap);
    auto g = colour_complete(k, s.N, [&](const Edge& e) { return s.x_count(e) > 0; });
    return {std::move(g), s};
}

/// Red: edges with an even number of vertices in X. d = gcd(k, i),
/// |X| = (k/d) n - 1, |Y| = kn - 1, N = |X| + |Y|.
inline ExtremalSpec parity_spec(int k, int n, int i) {
    if (k < 2 || n < 1) throw Error(ErrorCode::HypothesisViolated, "parity colouring needs k >= 2, n >= 1");
    if (i < 0 || i > k - 1) throw Error(ErrorCode::HypothesisViolated, "i must lie in [0, k-1]");
    if (k > kMaxArity) throw Error(ErrorCode::BadArity, "k above " + std::to_string(kMaxArity));
    ExtremalSpec s;
    s.form = ExtremalForm::Parity;
    s.k = k, s.n = n, s.i = i;
    s.d = std::gcd(k, i);
    s.x_size = (k / s.d) * n - 1;
    s.y_size = k * n - 1;
    s.N = s.x_size + s.y_size;
    return s;
}

inline ExtremalColouring parity_coloring(int k, int n, int i, std::size_t cap = kDefaultColouringCap) {
    auto s = parity_spec(k, n, i);
    detail::check_edge_budget(k, s.N, cap);
    auto g = colour_complete(k, s.N, [&](const Edge& e) { return s.x_count(e) % 2 == 0; });
    return {std::move(g), s};
}

enum class AbsenceMethod { MatchingBound, Divisibility, Counting, VertexCount, Exhaustive };
inline const char* method_name(AbsenceMethod m) {
    switch (m) {
        case AbsenceMethod::MatchingBound: return "matching-bound";
        case AbsenceMethod::Divisibility: return "divisibility";
        case AbsenceMethod::Counting: return "counting";
        case AbsenceMethod::VertexCount: return "vertex-count";
        default: return "exhaustive";
    }
}

/// Why one monochromatic tight component holds no tight cycle of length l.
struct ComponentEvidence {
    int component = -1;
    Colour colour = Colour::Red;
    std::size_t edges = 0;
    int vertices = 0;
    AbsenceMethod method = AbsenceMethod::Exhaustive;
    std::optional<int> r1;           // constant |e ∩ X| on the component
    std::optional<int> max_matching; // exact, for the matching bound
    std::optional<SearchStats> search;
    std::string detail;
};

struct AbsenceCertificate {
    int k = 0;
    int length = 0;
    bool absent = true;
    std::vector<ComponentEvidence> components;
    std::optional<TightCycleWitness> witness;  // set when a cycle exists
    // Independent exhaustive search over each colour class.
    bool cross_checked = false;
    std::vector<SearchStats> cross_check;
};

namespace detail {

inline std::optional<int> constant_profile(const ColouredKGraph& h, const ExtremalSpec& s, const std::vector<int>& ids) {
    std::optional<int> r;
    for (int id : ids) {
        int c = s.x_count(h.edge(id));
        if (r && *r != c) return std::nullopt;
        r = c;
    }
    return r;
}

}  // namespace detail

/// Per monochromatic tight component: the profile argument for parity
/// colourings, the matching bound otherwise, exhaustive search as fallback.
inline AbsenceCertificate verify_no_mono_cycle(const ColouredKGraph& h, const ExtremalSpec& s, int l,
                                               bool cross_check = true, int cap = kDefaultSupportCap) {
    const int k = h.k();
    if (l < k + 1) throw Error(ErrorCode::HypothesisViolated, "cycle length must be at least k + 1");
    AbsenceCertificate cert;
    cert.k = k;
    cert.length = l;
    auto d = monochromatic_components(h);
    for (int c = 0; c < static_cast<int>(d.count()); ++c) {
        ComponentEvidence ev;
        ev.component = c;
        ev.colour = d.colour[c];
        ev.edges = d.components[c].size();
        KGraph g = component_graph(h.graph(), d, c);
        ev.vertices = static_cast<int>(vertex_support(g).size());
        if (ev.vertices < l) {
            ev.method = AbsenceMethod::VertexCount;
            ev.detail = "component spans " + std::to_string(ev.vertices) + " < " + std::to_string(l) + " vertices";
            cert.components.push_back(std::move(ev));
            continue;
        }
        if (s.form == ExtremalForm::Parity) {
            ev.r1 = detail::constant_profile(h, s, d.components[c]);
            if (!ev.r1)
                throw Error(ErrorCode::ProfileNotConstant, "component " + std::to_string(c) + " mixes |e ∩ X| values");
            const int r1 = *ev.r1;
            // A tight l-cycle in the component puts each vertex in k windows,
            // so k |V(C) ∩ X| = r1 l.
            if ((r1 * l) % k != 0) {
                ev.method = AbsenceMethod::Divisibility;
                ev.detail = "k = " + std::to_string(k) + " does not divide r1 l = " + std::to_string(r1 * l);
                cert.components.push_back(std::move(ev));
                continue;
            }
            const int in_x = r1 * l / k;
            if (in_x > s.x_size || l - in_x > s.y_size) {
                ev.method = AbsenceMethod::Counting;
                ev.detail = "needs " + std::to_string(in_x) + " vertices in X (|X| = " + std::to_string(s.x_size) + ") and " +
                            std::to_string(l - in_x) + " in Y (|Y| = " + std::to_string(s.y_size) + ")";
                cert.components.push_back(std::move(ev));
                continue;
            }
        }
        // A tight l-cycle holds floor(l/k) disjoint windows.
        auto mm = max_matching_exact(g.edges());
        ev.max_matching = static_cast<int>(mm.size);
        if (ev.max_matching < l / k) {
            ev.method = AbsenceMethod::MatchingBound;
            ev.detail = "max matching " + std::to_string(*ev.max_matching) + " < floor(l/k) = " + std::to_string(l / k);
            cert.components.push_back(std::move(ev));
            continue;
        }
        auto res = find_tight_cycle(g, l, cap);
        ev.method = AbsenceMethod::Exhaustive;
        ev.search = res.stats;
        if (res.witness) {
            res.witness->colour = ev.colour;
            cert.absent = false;
            cert.witness = res.witness;
            ev.detail = "tight cycle found";
        } else {
            ev.detail = "exhaustive search found no tight cycle";
        }
        cert.components.push_back(std::move(ev));
        if (!cert.absent) break;
    }
    if (cert.absent && cross_check) {
        for (Colour c : {Colour::Red, Colour::Blue}) {
            auto res = find_tight_cycle(h.subgraph(c), l, cap);
            if (res.found())
                throw Error(ErrorCode::InconsistentWitness,
                            std::string("certificate claims absence but exhaustive search found a ") + colour_name(c) + " cycle");
            cert.cross_check.push_back(res.stats);
        }
        cert.cross_checked = true;
    }
    return cert;
}

/// Recomputes every cited profile and bound from the colouring.
inline bool recheck_certificate(const ColouredKGraph& h, const ExtremalSpec& s, const AbsenceCertificate& cert) {
    if (!cert.absent) return cert.witness && verify_witness(h.subgraph(*cert.witness->colour), *cert.witness);
    auto d = monochromatic_components(h);
    if (d.count() != cert.components.size()) return false;
    for (const auto& ev : cert.components) {
        if (ev.component < 0 || ev.component >= static_cast<int>(d.count())) return false;
        KGraph g = component_graph(h.graph(), d, ev.component);
        const int verts = static_cast<int>(vertex_support(g).size());
        if (verts != ev.vertices || d.colour[ev.component] != ev.colour) return false;
        const int k = h.k(), l = cert.length;
        switch (ev.method) {
            case AbsenceMethod::VertexCount:
                if (verts >= l) return false;
                break;
            case AbsenceMethod::Divisibility:
            case AbsenceMethod::Counting: {
                auto r1 = detail::constant_profile(h, s, d.components[ev.component]);
                if (!r1 || !ev.r1 || *r1 != *ev.r1) return false;
                if (ev.method == AbsenceMethod::Divisibility && (*r1 * l) % k == 0) return false;
                if (ev.method == AbsenceMethod::Counting) {
                    if ((*r1 * l) % k != 0) return false;
                    int in_x = *r1 * l / k;
                    if (in_x <= s.x_size && l - in_x <= s.y_size) return false;
                }
                break;
            }
            case AbsenceMethod::MatchingBound: {
                auto mm = max_matching_exact(g.edges());
                if (!ev.max_matching || static_cast<int>(mm.size) != *ev.max_matching || *ev.max_matching >= l / k)
                    return false;
                break;
            }
            case AbsenceMethod::Exhaustive:
                if (find_tight_cycle(g, l).found()) return false;
                break;
        }
    }
    return true;
}

enum class TargetKind { Cycle, Path };

struct RamseyTarget {
    TargetKind kind = TargetKind::Cycle;
    int length = 0;
    std::string str() const { return (kind == TargetKind::Cycle ? "c" : "p") + std::to_string(length); }
};

/// "c6" or "p5".
inline RamseyTarget parse_target(const std::string& t) {
    if (t.size() < 2 || (t[0] != 'c' && t[0] != 'p') ||
        !std::all_of(t.begin() + 1, t.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
        throw Error(ErrorCode::Usage, "target must look like c<len> or p<len>");
    return {t[0] == 'c' ? TargetKind::Cycle : TargetKind::Path, std::stoi(t.substr(1))};
}

enum class RamseyVerdict { AllColoured, CounterExample };
inline const char* verdict_name(RamseyVerdict v) {
    return v == RamseyVerdict::AllColoured ? "AllColoured" : "CounterExample";
}

struct RamseyResult {
    RamseyVerdict verdict = RamseyVerdict::AllColoured;
    std::optional<ColouredKGraph> colouring;
    std::string method;  // "exhaustive" or "candidate:<name>"
    std::uint64_t nodes = 0;        // colourings examined
    std::uint64_t canonical = 0;    // kept after isomorph rejection
    std::uint64_t target_hits = 0;  // pruned by a monochromatic target
};

inline bool has_mono_target(const ColouredKGraph& h, const RamseyTarget& t, int cap = kDefaultSupportCap) {
    for (Colour c : {Colour::Red, Colour::Blue}) {
        KGraph g = h.subgraph(c);
        if (g.size() == 0) continue;
        auto res = t.kind == TargetKind::Cycle ? find_tight_cycle(g, t.length, cap) : find_tight_path(g, t.length, cap);
        if (res.found()) return true;
    }
    return false;
}

/// Largest N for which exhaustive search runs: 7 for graphs, 6 above.
inline int ramsey_exhaustive_limit(int k) { return k == 2 ? 7 : 6; }

namespace detail {

/// Orderly generation: vertices are added one at a time and all k-sets
/// ending at the new vertex are coloured. Edges are listed in colex order,
/// so the colouring of the first v vertices is a prefix of the string. A
/// partial colouring survives only if no vertex permutation (possibly with
/// the colours swapped) gives a lexicographically smaller string.
class OrderlyRamsey {
public:
    OrderlyRamsey(int k, int big_n, RamseyTarget t) : k_(k), n_(big_n), t_(t) {
        for_each_combination(big_n, k, [&](const Edge& e) { edges_.push_back(e); });
        std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) { return colex_rank(a) < colex_rank(b); });
        for (int i = 0; i < static_cast<int>(edges_.size()); ++i) rank_[edges_[i]] = i;
        prefix_.assign(big_n + 1, 0);
        for (int v = 1; v <= big_n; ++v)
            prefix_[v] = static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.back() <= v; }));
    }

    RamseyResult run() {
        RamseyResult r;
        colour_.assign(edges_.size(), 0);
        if (n_ < k_) {
            r.verdict = RamseyVerdict::CounterExample;
            r.colouring = build_colouring(n_);
            return r;
        }
        found_ = false;
        grow(k_ - 1 < 1 ? 1 : k_ - 1, r);
        r.method = "exhaustive";
        if (found_) {
            r.verdict = RamseyVerdict::CounterExample;
            r.colouring = build_colouring(n_);
        }
        return r;
    }

private:
    // Vertices 1..v coloured (edges with max vertex <= v); extend to v + 1.
    void grow(int v, RamseyResult& r) {
        if (found_) return;
        if (v == n_) {
            found_ = true;
            return;
        }
        const int lo = prefix_[v], hi = prefix_[v + 1], m = hi - lo;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m) && !found_; ++bits) {
            for (int j = 0; j < m; ++j) colour_[lo + j] = static_cast<char>(bits >> j & 1);
            ++r.nodes;
            if (!is_canonical(v + 1)) continue;
            ++r.canonical;
            if (has_mono_target(build_colouring(v + 1), t_)) {
                ++r.target_hits;
                continue;
            }
            grow(v + 1, r);
        }
    }

    bool is_canonical(int v) const {
        const int m = prefix_[v];
        std::vector<int> perm(v);
        std::iota(perm.begin(), perm.end(), 1);
        std::vector<char> img(m);
        do {
            for (int swap = 0; swap < 2; ++swap) {
                for (int j = 0; j < m; ++j) {
                    std::array<int, kMaxArity> tmp{};
                    for (int a = 0; a < k_; ++a) tmp[a] = perm[edges_[j][a] - 1];
                    int to = rank_.at(Edge::from_range(tmp.begin(), tmp.begin() + k_));
                    img[to] = static_cast<char>(colour_[j] ^ swap);
                }
                for (int j = 0; j < m; ++j) {
                    if (img[j] < colour_[j]) return false;
                    if (img[j] > colour_[j]) break;
                }
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return true;
    }

    ColouredKGraph build_colouring(int v) const {
        std::vector<std::pair<Colour, Edge>> es;
        for (int j = 0; j < prefix_[v]; ++j) es.push_back({colour_[j] ? Colour::Blue : Colour::Red, edges_[j]});
        return build(k_, v, es);
    }

    int k_, n_;
    RamseyTarget t_;
    std::vector<Edge> edges_;
    std::unordered_map<Edge, int, EdgeHash> rank_;
    std::vector<int> prefix_;
    std::vector<char> colour_;
    bool found_ = false;
};

}  // namespace detail

/// Is every 2-colouring of K_N^(k) forced to hold a monochromatic target?
/// Known lower-bound colourings are tried first; exhaustive orderly search
/// decides the rest within ramsey_exhaustive_limit.
inline RamseyResult ramsey_search_tiny(int k, const RamseyTarget& t, int big_n) {
    if (k < 2 || k > kMaxArity) throw Error(ErrorCode::BadArity, "k must lie in [2, " + std::to_string(kMaxArity) + "]");
    if (big_n < 1) throw Error(ErrorCode::HypothesisViolated, "N must be positive");
    const int min_len = t.kind == TargetKind::Cycle ? k + 1 : k;
    if (t.length < min_len) throw Error(ErrorCode::HypothesisViolated, "target length must be at least " + std::to_string(min_len));
    if (big_n > kDefaultSupportCap) throw Error(ErrorCode::SizeCapExceeded, "N above the search cap");

    std::vector<std::pair<std::string, ColouredKGraph>> candidates;
    for (int n = 2; (k + 1) * n - 2 <= big_n; ++n)
        if ((k + 1) * n - 2 == big_n) candidates.push_back({"split(" + std::to_string(k) + "," + std::to_string(n) + ")", split_coloring(k, n).graph});
    for (int n = 1; n <= big_n; ++n)
        for (int i = 0; i < k; ++i) {
            int d = std::gcd(k, i);
            if ((k / d) * n - 1 + k * n - 1 == big_n)
                candidates.push_back({"parity(" + std::to_string(k) + "," + std::to_string(n) + "," + std::to_string(i) + ")",
                                      parity_coloring(k, n, i).graph});
        }
    RamseyResult r;
    for (auto& [name, g] : candidates) {
        ++r.nodes;
        if (!has_mono_target(g, t)) {
            r.verdict = RamseyVerdict::CounterExample;
            r.method = "candidate:" + name;
            r.colouring = std::move(g);
            return r;
        }
    }
    if (big_n > ramsey_exhaustive_limit(k))
        throw Error(ErrorCode::SizeCapExceeded, "exhaustive search limited to N <= " + std::to_string(ramsey_exhaustive_limit(k)) +
                                                    " for k = " + std::to_string(k) + " and no candidate colouring avoids the target");
    auto ex = detail::OrderlyRamsey(k, big_n, t).run();
    ex.nodes += r.nodes;
    if (ex.colouring && has_mono_target(*ex.colouring, t))
        throw Error(ErrorCode::InconsistentWitness, "counterexample contains the target");
    return ex;
}

}  // namespace tcr

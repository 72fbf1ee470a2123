#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tcr/blueprint.hpp"
#include "tcr/matching.hpp"

namespace tcr {

struct DriverParams {
    Rational eps{1, 50};
    Rational gamma{1, 20};
    Rational delta{1, 10};
    Rational eta{3, 20};
    Rational c{1, 100};
    std::uint64_t seed = 0;
    int max_iterations = 64;
    int sample_retries = 64;
    std::optional<int> n;         // target scale; default floor(N / (5/4 + 3 eta))
    std::optional<Rational> bp_eps;  // default default_blueprint_eps(N)

    void validate() const {
        if (!(0 < eps && eps < gamma && gamma < delta && delta < eta && eta < 1))
            throw Error(ErrorCode::HypothesisViolated, "parameters must satisfy 0 < eps < gamma < delta < eta < 1");
        if (c <= 0) throw Error(ErrorCode::HypothesisViolated, "c must be positive");
        if (max_iterations < 1 || sample_retries < 1) throw Error(ErrorCode::HypothesisViolated, "budgets must be positive");
    }
};

/// Host, its atlas, the trimmed blueprint and the component R carried by
/// the blueprint's spanning colour. Goodness is cached per edge id.
struct AugmentContext {
    const ColouredKGraph* h = nullptr;
    ComponentAtlas atlas;
    Blueprint bp;
    int red = -1;
    int n = 0;

    bool good_id(int id) const {
        if (good_.empty()) good_.assign(h->size(), -1);
        if (good_[id] < 0) good_[id] = is_good(atlas, bp, h->edge(id)) ? 1 : 0;
        return good_[id] == 1;
    }
    /// e is an edge of comp and good.
    bool in_plus(int comp, const Edge& e) const {
        int id = h->index_of(e);
        return id >= 0 && atlas.d.component_of[id] == comp && good_id(id);
    }
    Rational target() const { return Rational(n, 4); }

private:
    mutable std::vector<signed char> good_;
};

inline AugmentContext make_context(const ColouredKGraph& h, ComponentAtlas atlas, Blueprint bp, int red, int n) {
    AugmentContext ctx;
    ctx.h = &h;
    ctx.atlas = std::move(atlas);
    ctx.bp = std::move(bp);
    ctx.red = red;
    ctx.n = n;
    return ctx;
}

/// A frozen fractional piece: equal weight on every edge of a family whose
/// vertices no other part of the state touches.
struct Gadget {
    std::vector<Edge> edges;
    Rational each;
    std::string origin;

    Rational weight() const { return each * static_cast<long>(edges.size()); }
    std::vector<int> vertices() const {
        std::vector<int> vs;
        for (const auto& e : edges) vs.insert(vs.end(), e.begin(), e.end());
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        return vs;
    }
};

enum class Hypothesis { H1, H2 };
inline const char* hypothesis_name(Hypothesis h) { return h == Hypothesis::H1 ? "H1" : "H2"; }

struct AugmentationState {
    int component = -1;
    std::vector<Edge> matching;
    std::vector<Gadget> gadgets;

    Rational weight() const {
        Rational w(static_cast<long>(matching.size()));
        for (const auto& g : gadgets) w += g.weight();
        return w;
    }
    std::vector<char> covered(int n) const {
        std::vector<char> c(n + 1, 0);
        for (const auto& e : matching)
            for (Vertex v : e) c[v] = 1;
        for (const auto& g : gadgets)
            for (int v : g.vertices()) c[v] = 1;
        return c;
    }
    FractionalMatching to_fractional(const AugmentContext& ctx) const {
        FractionalMatching phi;
        if (component < 0) return phi;
        phi.component = component;
        for (int id : ctx.atlas.d.components[component]) phi.host.push_back(ctx.h->edge(id));
        phi.host = sorted_edges(phi.host);
        for (const auto& e : matching) phi.set(e, 1);
        for (const auto& g : gadgets)
            for (const auto& e : g.edges) phi.set(e, phi.at(e) + g.each);
        return phi;
    }
};

struct StateCheck {
    bool valid = true;          // fractional matching constraints
    bool single_component = true;
    bool good = true;
    bool min_weight_ok = true;  // every positive weight >= c
    std::string violation;
    bool ok() const { return valid && single_component && good; }
};

inline StateCheck check_state(const AugmentContext& ctx, const AugmentationState& s, const Rational& c) {
    StateCheck r;
    auto phi = s.to_fractional(ctx);
    auto v = validate_fractional(phi);
    if (!v.valid) r.valid = false, r.violation = v.violation;
    for (const auto& [e, w] : phi.weights) {
        int id = ctx.h->index_of(e);
        if (id < 0 || ctx.atlas.d.component_of[id] != s.component) {
            r.single_component = false;
            if (r.violation.empty()) r.violation = e.str() + " lies outside component " + std::to_string(s.component);
        } else if (!ctx.good_id(id)) {
            r.good = false;
            if (r.violation.empty()) r.violation = e.str() + " is not good";
        }
        if (w < c) r.min_weight_ok = false;
    }
    return r;
}

inline Hypothesis hypothesis_of(const AugmentContext& ctx, const AugmentationState& s) {
    if (s.component < 0 || s.component >= ctx.atlas.count())
        throw Error(ErrorCode::HypothesisViolated, "state names no component");
    Hypothesis hyp;
    if (s.component == ctx.red) hyp = Hypothesis::H1;
    else if (ctx.atlas.colour(s.component) == other(ctx.atlas.colour(ctx.red))) hyp = Hypothesis::H2;
    else throw Error(ErrorCode::HypothesisViolated, "component " + std::to_string(s.component) + " is neither R nor of the other colour");
    if (!is_matching(s.matching)) throw Error(ErrorCode::HypothesisViolated, "M is not a matching");
    for (const auto& e : s.matching)
        if (!ctx.in_plus(s.component, e)) throw Error(ErrorCode::HypothesisViolated, e.str() + " is not a good edge of the component");
    auto chk = check_state(ctx, s, 0);
    if (!chk.ok()) throw Error(ErrorCode::HypothesisViolated, chk.violation);
    return hyp;
}

namespace detail {

inline Edge common_part(const std::vector<Edge>& fam) {
    if (fam.empty()) return {};
    Edge common = fam.front();
    for (const auto& e : fam) {
        Edge keep;
        for (Vertex v : common)
            if (e.contains(v)) keep = keep.with(v);
        common = keep;
    }
    return common;
}

/// Adds good edges of comp on free vertices, in edge-id order.
inline int greedy_extend(const AugmentContext& ctx, int comp, std::vector<char>& free, std::vector<Edge>& out) {
    int added = 0;
    for (int id : ctx.atlas.d.components[comp]) {
        const Edge& e = ctx.h->edge(id);
        bool ok = std::all_of(e.begin(), e.end(), [&](Vertex v) { return free[v]; });
        if (!ok || !ctx.good_id(id)) continue;
        for (Vertex v : e) free[v] = 0;
        out.push_back(e);
        ++added;
    }
    return added;
}

/// Maximum bipartite matching, left i to right j when adj[i] lists j.
/// Deterministic augmenting-path search.
inline std::vector<int> bipartite_matching(const std::vector<std::vector<int>>& adj, int right) {
    std::vector<int> owner(right, -1), mate(adj.size(), -1);
    for (int i = 0; i < static_cast<int>(adj.size()); ++i) {
        std::vector<char> seen(right, 0);
        std::function<bool(int)> go = [&](int u) -> bool {
            for (int j : adj[u]) {
                if (seen[j]) continue;
                seen[j] = 1;
                if (owner[j] < 0 || go(owner[j])) {
                    owner[j] = u;
                    mate[u] = j;
                    return true;
                }
            }
            return false;
        };
        go(i);
    }
    return mate;
}

inline std::vector<int> free_list(const std::vector<char>& free, const Blueprint& bp) {
    std::vector<int> w;
    for (int v : bp.vertices)
        if (free[v]) w.push_back(v);
    return w;
}

}  // namespace detail

/// U-case: H[f+u] is a monochromatic K_5 of good edges of comp and (f, {u})
/// is suitable. Returns the five edges.
inline std::optional<std::vector<Edge>> k5_extension(const AugmentContext& ctx, int comp, const Edge& f, int u) {
    Edge all = f.with(u);
    std::vector<Edge> fam;
    bool ok = true;
    for_each_subset(all, 4, [&](const Edge& e) {
        ok = ok && ctx.in_plus(comp, e);
        fam.push_back(e);
    });
    if (!ok || !is_suitable_pair(*ctx.h, ctx.atlas, ctx.bp, f, {u}).suitable()) return std::nullopt;
    return fam;
}

/// Smallest subfamily with empty intersection: exhaustive up to three
/// edges, otherwise greedy pruning of the whole family.
inline std::optional<std::vector<Edge>> minimal_empty_subfamily(const std::vector<Edge>& fam) {
    if (fam.size() < 2 || !detail::common_part(fam).empty()) return std::nullopt;
    const int m = static_cast<int>(fam.size());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (intersection_size(fam[i], fam[j]) == 0) return std::vector<Edge>{fam[i], fam[j]};
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int t = j + 1; t < m; ++t)
                if (detail::common_part({fam[i], fam[j], fam[t]}).empty()) return std::vector<Edge>{fam[i], fam[j], fam[t]};
    std::vector<Edge> cur = fam;
    for (std::size_t i = 0; i < cur.size();) {
        auto trial = cur;
        trial.erase(trial.begin() + static_cast<long>(i));
        if (trial.size() >= 2 && detail::common_part(trial).empty()) cur = std::move(trial);
        else ++i;
    }
    return cur;
}

/// Empty-intersection gadget on f + W_f: the good edges of comp inside the set, reduced
/// to a minimal family with empty intersection. Empty when they share a vertex.
inline std::optional<Gadget> empty_family_gadget(const AugmentContext& ctx, int comp, const Edge& f, const std::vector<int>& wf) {
    std::vector<int> all(f.begin(), f.end());
    all.insert(all.end(), wf.begin(), wf.end());
    std::sort(all.begin(), all.end());
    std::vector<Edge> fam;
    for_each_combination(all, 4, [&](const Edge& e) {
        if (ctx.in_plus(comp, e)) fam.push_back(e);
    });
    auto sub = minimal_empty_subfamily(fam);
    if (!sub) return std::nullopt;
    auto phi = empty_intersection_matching(*sub);
    Gadget g;
    g.edges = phi.support();
    g.each = phi.weights.begin()->second;
    g.origin = "empty-family s=" + std::to_string(g.edges.size());
    return g;
}

enum class StepStatus { Success, Terminal, StepFailed };
inline const char* step_status_name(StepStatus s) {
    switch (s) {
        case StepStatus::Success: return "success";
        case StepStatus::Terminal: return "terminal";
        default: return "step-failed";
    }
}

struct StepReport {
    StepStatus status = StepStatus::StepFailed;
    Hypothesis hypothesis = Hypothesis::H1;
    AugmentationState state;  // the heavier state on success, the best partial one otherwise
    Rational before, after;
    std::string stage;         // stage that closed the step
    std::string failed_claim;  // set on StepFailed
    std::vector<std::string> trace;
};

/// One augmentation step. Stages run in order and accumulate inside the
/// current component: maximal extension, K_5 spreading (U), empty-intersection gadgets on
/// sampled suitable pairs. If they fall short, a fresh matching in the
/// target component T (cross-colour neighbours f*_u plus greedy) is tried.
inline StepReport augment_once(const AugmentContext& ctx, const AugmentationState& in, const DriverParams& p,
                               std::mt19937_64& rng) {
    StepReport rep;
    rep.before = in.weight();
    rep.state = in;
    rep.hypothesis = hypothesis_of(ctx, in);
    if (rep.before >= ctx.target()) {
        rep.status = StepStatus::Terminal;
        rep.after = rep.before;
        rep.stage = "terminal";
        rep.trace.push_back("weight " + to_string(rep.before) + " already reaches n/4");
        return rep;
    }
    const auto& h = *ctx.h;
    const int K = in.component;
    const Rational goal = rep.before + p.gamma * ctx.n;
    auto& tr = rep.trace;
    tr.push_back(std::string("hypothesis ") + hypothesis_name(rep.hypothesis) + ", component " + std::to_string(K) + " (" +
                 colour_name(ctx.atlas.colour(K)) + "), goal " + to_string(goal));

    AugmentationState s = in;
    auto cov = s.covered(h.n());
    std::vector<char> free(h.n() + 1, 0);
    for (int v : ctx.bp.vertices) free[v] = !cov[v];
    auto finish = [&](const AugmentationState& st, const std::string& stage) {
        auto chk = check_state(ctx, st, 0);
        if (!chk.ok()) throw Error(ErrorCode::ContractUnmet, "stage " + stage + " produced an invalid state: " + chk.violation);
        rep.state = st;
        rep.after = st.weight();
        rep.stage = stage;
        rep.status = StepStatus::Success;
        tr.push_back("closed by " + stage + " at weight " + to_string(rep.after));
        return rep;
    };

    int added = detail::greedy_extend(ctx, K, free, s.matching);
    tr.push_back("extension: +" + std::to_string(added) + " edges");
    if (s.weight() >= goal) return finish(s, "extension");
    const std::vector<Edge> m_ext = s.matching;
    const std::vector<int> w_ext = detail::free_list(free, ctx.bp);

    // U: each u in W paired with a distinct f in M spanning a K_5 of K.
    {
        std::vector<std::vector<int>> adj(w_ext.size());
        std::vector<std::vector<std::vector<Edge>>> fams(w_ext.size(), std::vector<std::vector<Edge>>(s.matching.size()));
        for (std::size_t i = 0; i < w_ext.size(); ++i)
            for (std::size_t j = 0; j < s.matching.size(); ++j)
                if (auto fam = k5_extension(ctx, K, s.matching[j], w_ext[i])) adj[i].push_back(static_cast<int>(j)), fams[i][j] = *fam;
        auto mate = detail::bipartite_matching(adj, static_cast<int>(s.matching.size()));
        std::vector<char> drop(s.matching.size(), 0);
        int used = 0;
        for (std::size_t i = 0; i < w_ext.size(); ++i) {
            if (mate[i] < 0) continue;
            drop[mate[i]] = 1;
            free[w_ext[i]] = 0;
            s.gadgets.push_back({fams[i][mate[i]], Rational(1, 4), "K5"});
            ++used;
        }
        std::vector<Edge> keep;
        for (std::size_t j = 0; j < s.matching.size(); ++j)
            if (!drop[j]) keep.push_back(s.matching[j]);
        s.matching = std::move(keep);
        tr.push_back("U-case: |U| = " + std::to_string(used) + " of |W| = " + std::to_string(w_ext.size()));
        if (used > 0 && s.weight() >= goal) return finish(s, "U-case");
    }

    // M*: suitable pairs (f, W_f); empty-intersection gadgets where the component's edges
    // inside f + W_f share no vertex.
    {
        const int ws = rep.hypothesis == Hypothesis::H1 ? 3 : 4;
        auto w_now = detail::free_list(free, ctx.bp);
        auto sample = sample_suitable_pairs(h, ctx.atlas, ctx.bp, s.matching, w_now, ws,
                                            static_cast<int>(s.matching.size()), rng, p.sample_retries);
        int families = 0, case_a = 0, pivots = 0;
        std::vector<Edge> drop;
        for (const auto& pr : sample.pairs) {
            if (auto g = empty_family_gadget(ctx, K, pr.f, pr.w)) {
                drop.push_back(pr.f);
                for (int v : pr.w) free[v] = 0;
                s.gadgets.push_back(std::move(*g));
                ++families;
                continue;
            }
            ++case_a;
            for_each_combination(pr.w, 2, [&](const Edge& e) {
                int i = ctx.bp.index_of(e);
                if (ws != 3 || i < 0 || ctx.bp.assign[i] != K) return;
                try {
                    local_pivot(h, ctx.atlas, ctx.bp, K, pr.f, pr.w, e);
                    ++pivots;
                } catch (const Error&) {
                }
            });
        }
        std::vector<Edge> keep;
        for (const auto& e : s.matching)
            if (std::find(drop.begin(), drop.end(), e) == drop.end()) keep.push_back(e);
        s.matching = std::move(keep);
        tr.push_back("M*: " + std::to_string(sample.pairs.size()) + " suitable pairs (W_f size " + std::to_string(ws) +
                     ", " + std::to_string(sample.attempts) + " draws), " + std::to_string(families) + " empty-family gadgets, " +
                     std::to_string(case_a) + " with common vertex (" + std::to_string(pivots) + " pivots verified)");
        if (s.weight() >= goal) return finish(s, "M*");
        // Gadgets never free vertices, so topping up can only help.
        int late = detail::greedy_extend(ctx, K, free, s.matching);
        if (late) tr.push_back("late extension: +" + std::to_string(late) + " edges");
        if (s.weight() >= goal) return finish(s, "M*");
    }

    // Target component T and cross-colour neighbours f*_u.
    std::optional<AugmentationState> alt;
    {
        int T = -1;
        if (rep.hypothesis == Hypothesis::H1) {
            try {
                T = compute_B_W(h, ctx.atlas, ctx.bp, ctx.red, w_ext).component;
                tr.push_back("B_W = component " + std::to_string(T));
            } catch (const Error& e) {
                tr.push_back(std::string("B_W unavailable: ") + e.what());
            }
        } else {
            T = ctx.red;
        }
        if (T >= 0 && !w_ext.empty()) {
            std::vector<std::vector<int>> adj(w_ext.size());
            std::vector<std::vector<Edge>> star(w_ext.size(), std::vector<Edge>(m_ext.size()));
            for (std::size_t i = 0; i < w_ext.size(); ++i)
                for (std::size_t j = 0; j < m_ext.size(); ++j) {
                    const Edge& f = m_ext[j];
                    const int u = w_ext[i];
                    std::optional<Edge> hit;
                    for (Vertex x : f)
                        if (!hit && ctx.in_plus(T, f.without(x).with(u))) hit = f.without(x).with(u);
                    if (!hit || !is_suitable_pair(h, ctx.atlas, ctx.bp, f, {u}).suitable()) continue;
                    adj[i].push_back(static_cast<int>(j));
                    star[i][j] = *hit;
                }
            auto mate = detail::bipartite_matching(adj, static_cast<int>(m_ext.size()));
            AugmentationState a;
            a.component = T;
            std::vector<char> tfree(h.n() + 1, 0);
            for (int v : ctx.bp.vertices) tfree[v] = 1;
            for (std::size_t i = 0; i < w_ext.size(); ++i)
                if (mate[i] >= 0) {
                    a.matching.push_back(star[i][mate[i]]);
                    for (Vertex v : star[i][mate[i]]) tfree[v] = 0;
                }
            const std::size_t m1 = a.matching.size();
            int m2 = detail::greedy_extend(ctx, T, tfree, a.matching);
            tr.push_back("target T = " + std::to_string(T) + ": |M1*| = " + std::to_string(m1) + ", |M2*| = " + std::to_string(m2));
            if (a.weight() >= goal) return finish(a, "target switch");
            alt = std::move(a);
        }
    }

    rep.status = StepStatus::StepFailed;
    rep.failed_claim = "gain below gamma n: stages reached " + to_string(s.weight() - rep.before) +
                       (alt ? ", target switch reached " + to_string(alt->weight() - rep.before) : std::string()) +
                       ", needed " + to_string(p.gamma * ctx.n);
    rep.state = alt && alt->weight() > s.weight() ? *alt : s;
    auto chk = check_state(ctx, rep.state, 0);
    if (!chk.ok()) throw Error(ErrorCode::ContractUnmet, "partial state invalid: " + chk.violation);
    rep.after = rep.state.weight();
    tr.push_back("failed: " + rep.failed_claim);
    return rep;
}

enum class InitialStatus { Found, TargetReached, Stuck };
inline const char* initial_status_name(InitialStatus s) {
    switch (s) {
        case InitialStatus::Found: return "found";
        case InitialStatus::TargetReached: return "target-reached";
        default: return "stuck";
    }
}

struct InitialResult {
    InitialStatus status = InitialStatus::Stuck;
    AugmentationState state;
    bool claim_bound = false;  // |M| >= 3 delta n
    std::string route;
    std::vector<std::string> trace;
};

/// A starting good matching: greedy in R^+, else inside W = V(G) - V(M_R)
/// via T_W triples extended by Gamma_W into B_W and then greedy in B_W^+.
inline InitialResult initial_matching(const AugmentContext& ctx, const DriverParams& p) {
    InitialResult out;
    if (ctx.red < 0 || ctx.bp.vertices.empty()) return out;
    const auto& h = *ctx.h;
    auto classify = [&](InitialResult& r) {
        Rational size(static_cast<long>(r.state.matching.size()));
        r.claim_bound = size >= 3 * p.delta * ctx.n;
        if (r.state.matching.empty()) r.status = InitialStatus::Stuck;
        else if (size >= ctx.target()) r.status = InitialStatus::TargetReached;
        else r.status = InitialStatus::Found;
        return r;
    };
    std::vector<char> free(h.n() + 1, 0);
    for (int v : ctx.bp.vertices) free[v] = 1;
    out.state.component = ctx.red;
    detail::greedy_extend(ctx, ctx.red, free, out.state.matching);
    out.route = "R greedy";
    out.trace.push_back("greedy matching in R^+: " + std::to_string(out.state.matching.size()));
    const Rational red_size(static_cast<long>(out.state.matching.size()));
    if (red_size >= ctx.target() || red_size >= 3 * p.delta * ctx.n) return classify(out);

    auto w = detail::free_list(free, ctx.bp);
    try {
        auto bw = compute_B_W(h, ctx.atlas, ctx.bp, ctx.red, w);
        AugmentationState blue;
        blue.component = bw.component;
        std::vector<char> bfree = free;
        int via_triples = 0;
        for (const auto& t : bw.triples) {
            if (!std::all_of(t.begin(), t.end(), [&](Vertex v) { return bfree[v]; })) continue;
            for (int x : bw.gamma[t]) {
                Edge e = t.with(x);
                if (!bfree[x] || !ctx.in_plus(bw.component, e)) continue;
                for (Vertex v : e) bfree[v] = 0;
                blue.matching.push_back(e);
                ++via_triples;
                break;
            }
        }
        // B_W^+ edges anywhere in V(G) may join once W is used up.
        for (int v : ctx.bp.vertices) bfree[v] = 1;
        for (const auto& e : blue.matching)
            for (Vertex v : e) bfree[v] = 0;
        int rest = detail::greedy_extend(ctx, bw.component, bfree, blue.matching);
        out.trace.push_back("B_W = component " + std::to_string(bw.component) + ": " + std::to_string(via_triples) +
                            " edges from T_W triples, " + std::to_string(rest) + " by greedy");
        if (blue.matching.size() >= out.state.matching.size()) {
            out.state = std::move(blue);
            out.route = "B_W via T_W";
        }
    } catch (const Error& e) {
        out.trace.push_back(std::string("B_W unavailable: ") + e.what());
    }
    return classify(out);
}

enum class DriverStatus { Reached, StepFailed, Stuck, IterationCap };
inline const char* driver_status_name(DriverStatus s) {
    switch (s) {
        case DriverStatus::Reached: return "reached";
        case DriverStatus::StepFailed: return "step-failed";
        case DriverStatus::Stuck: return "stuck";
        default: return "iteration-cap";
    }
}

struct StepRecord {
    int iteration = 0;
    StepReport report;
};

struct DriverReport {
    DriverStatus status = DriverStatus::Stuck;
    int N = 0;
    int n = 0;
    Rational bp_eps;
    std::size_t blueprint_edges = 0;
    std::size_t blueprint_omitted = 0;
    std::size_t trimmed_vertices = 0;
    Colour spanning_colour = Colour::Red;
    int red = -1;
    InitialResult initial;
    std::vector<StepRecord> steps;
    AugmentationState best;
    Colour colour = Colour::Red;
    Rational weight;
    bool reached = false;
    StateCheck check;
    std::vector<std::string> trace;
    std::shared_ptr<AugmentContext> context;  // keeps best interpretable

    FractionalMatching matching() const { return context ? best.to_fractional(*context) : FractionalMatching{}; }
};

inline int default_target_scale(int big_n, const DriverParams& p) {
    Rational q = Rational(big_n) / (Rational(5, 4) + 3 * p.eta);
    return static_cast<int>(boost::multiprecision::numerator(q) / boost::multiprecision::denominator(q));
}

/// Density check, blueprint, trim and the choice of R. Fills the setup
/// fields of rep and its context.
inline const AugmentContext& prepare_driver(const ColouredKGraph& h, const DriverParams& p, DriverReport& rep) {
    p.validate();
    if (h.k() != 4) throw Error(ErrorCode::Unsupported, "the driver works on 4-graphs");
    auto dens = density_check(h.graph(), 1 - p.eps, p.eps);
    if (!dens.pass) throw Error(ErrorCode::HypothesisViolated, "host is not (1-eps, eps)-dense");
    rep.N = h.n();
    rep.n = p.n ? *p.n : default_target_scale(h.n(), p);
    rep.bp_eps = p.bp_eps ? *p.bp_eps : default_blueprint_eps(h.n());
    auto atlas = make_atlas(h);
    auto bp = build_blueprint(h, atlas, rep.bp_eps);
    rep.blueprint_edges = bp.size();
    rep.blueprint_omitted = bp.omitted.size();
    auto trim = trim_spanning_component(bp, rep.bp_eps);
    rep.trimmed_vertices = trim.graph.vertices.size();
    rep.spanning_colour = trim.colour;
    // BP2 plus connectivity: every spanning-colour edge carries one component.
    for (std::size_t i = 0; i < trim.graph.size(); ++i)
        if (trim.graph.colours[i] == trim.colour) {
            rep.red = trim.graph.assign[i];
            break;
        }
    if (rep.red < 0) throw Error(ErrorCode::ContractUnmet, "trimmed blueprint has no edge of its spanning colour");
    rep.trace.push_back(std::string("spanning colour ") + colour_name(trim.colour) + " plays red; R = component " +
                        std::to_string(rep.red));
    rep.context = std::make_shared<AugmentContext>(make_context(h, std::move(atlas), std::move(trim.graph), rep.red, rep.n));
    return *rep.context;
}

/// Initial matching, then augmentation steps until the weight reaches n/4
/// or a step fails. The host must outlive the report.
inline DriverReport run_driver(const ColouredKGraph& h, const DriverParams& p) {
    DriverReport rep;
    const auto& ctx = prepare_driver(h, p, rep);
    rep.initial = initial_matching(ctx, p);
    rep.best = rep.initial.state;
    std::mt19937_64 rng(p.seed);
    if (rep.initial.status == InitialStatus::Stuck) {
        rep.status = DriverStatus::Stuck;
    } else if (rep.initial.status == InitialStatus::TargetReached) {
        rep.status = DriverStatus::Reached;
    } else {
        rep.status = DriverStatus::IterationCap;
        for (int it = 1; it <= p.max_iterations; ++it) {
            auto step = augment_once(ctx, rep.best, p, rng);
            rep.best = step.state;
            const auto st = step.status;
            rep.steps.push_back({it, std::move(step)});
            if (st == StepStatus::Terminal || rep.best.weight() >= ctx.target()) {
                rep.status = DriverStatus::Reached;
                break;
            }
            if (st == StepStatus::StepFailed) {
                rep.status = DriverStatus::StepFailed;
                break;
            }
        }
    }
    rep.weight = rep.best.weight();
    rep.reached = rep.best.component >= 0 && rep.weight >= ctx.target();
    if (rep.best.component >= 0) rep.colour = ctx.atlas.colour(rep.best.component);
    rep.check = check_state(ctx, rep.best, p.c);
    if (rep.best.component >= 0 && !rep.check.ok())
        throw Error(ErrorCode::ContractUnmet, "driver output failed validation: " + rep.check.violation);
    rep.trace.push_back("absence of a tightly connected matching of size n/4 is judged only by the running best");
    return rep;
}

}  // namespace tcr

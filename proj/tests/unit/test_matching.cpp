#include <gtest/gtest.h>

#include <random>

#include "tcr/matching.hpp"

using namespace tcr;

namespace {

ColouredKGraph lower_bound_k4_n2() {
    return colour_complete(4, 8, [](const Edge& e) { return e.contains(1); });
}

// Plain recursion over edges; only for tiny hosts.
std::size_t brute_matching(const std::vector<Edge>& es, std::size_t i, std::uint64_t used) {
    if (i == es.size()) return 0;
    std::size_t best = brute_matching(es, i + 1, used);
    if (!(es[i].mask64() & used)) best = std::max(best, 1 + brute_matching(es, i + 1, used | es[i].mask64()));
    return best;
}

}  // namespace

TEST(Validate, Examples) {
    auto k5 = complete_graph(4, 5).edges();
    FractionalMatching phi;
    phi.host = k5;
    for (const auto& e : k5) phi.weights[e] = Rational(1, 4);
    EXPECT_TRUE(validate_fractional(phi).valid);
    EXPECT_EQ(phi.weight(), Rational(5, 4));

    FractionalMatching bad;
    bad.host = {Edge{1, 2, 3, 4}, Edge{4, 5, 6, 7}};
    bad.weights = {{Edge{1, 2, 3, 4}, 1}, {Edge{4, 5, 6, 7}, 1}};
    auto chk = validate_fractional(bad);
    EXPECT_FALSE(chk.valid);
    ASSERT_TRUE(chk.vertex.has_value());
    EXPECT_EQ(*chk.vertex, 4);

    FractionalMatching empty;
    EXPECT_TRUE(validate_fractional(empty).valid);
    EXPECT_EQ(empty.weight(), 0);
}

TEST(Validate, HostMembership) {
    FractionalMatching phi;
    phi.host = {Edge{1, 2, 3, 4}};
    phi.weights = {{Edge{1, 2, 3, 5}, Rational(1, 2)}};
    EXPECT_FALSE(validate_fractional(phi).valid);
}

TEST(Algebra, CompletionSumInduced) {
    auto m = induced_by({Edge{1, 2, 3, 4}, Edge{5, 6, 7, 8}});
    EXPECT_EQ(m.weight(), 2);
    auto c = completion(m, complete_graph(4, 8).edges());
    EXPECT_EQ(c.weight(), m.weight());
    EXPECT_TRUE(validate_fractional(c).valid);
    FractionalMatching a;
    a.host = {Edge{1, 2, 3, 4}, Edge{1, 2, 3, 5}};
    a.weights = {{Edge{1, 2, 3, 4}, Rational(1, 2)}, {Edge{1, 2, 3, 5}, Rational(1, 2)}};
    auto b = induced_by({Edge{6, 7, 8, 9}});
    auto s = disjoint_sum(a, b);
    EXPECT_EQ(s.weight(), a.weight() + b.weight());
    EXPECT_THROW(disjoint_sum(a, induced_by({Edge{5, 6, 7, 8}})), Error);
    EXPECT_THROW(completion(m, {Edge{1, 2, 3, 4}}), Error);
}

TEST(ExactMatching, Examples) {
    auto h = lower_bound_k4_n2();
    EXPECT_EQ(max_matching_exact(h.subgraph(Colour::Red).edges()).size, 1u);
    EXPECT_EQ(max_matching_exact(h.subgraph(Colour::Blue).edges()).size, 1u);
    auto k8 = max_matching_exact(complete_graph(4, 8).edges());
    EXPECT_EQ(k8.size, 2u);
    EXPECT_TRUE(k8.optimal);
    EXPECT_TRUE(is_matching(k8.edges));
}

TEST(ExactMatching, AgreesWithBruteForce) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 6 + static_cast<int>(rng() % 7);
        std::vector<Edge> es;
        for_each_combination(n, 3, [&](const Edge& e) {
            if (rng() % 9 == 0 && es.size() < 24) es.push_back(e);
        });
        if (es.empty()) continue;
        auto cert = max_matching_exact(es);
        EXPECT_EQ(cert.size, brute_matching(es, 0, 0));
        EXPECT_TRUE(is_matching(cert.edges));
        for (const auto& e : cert.edges) EXPECT_TRUE(std::find(es.begin(), es.end(), e) != es.end());
    }
}

TEST(ExactMatching, Cap) {
    EXPECT_THROW(max_matching_exact(complete_graph(4, 8).edges(), 10), Error);
}

TEST(ExactMatching, CompleteGraphsWithManyTwins) {
    EXPECT_EQ(max_matching_exact(complete_graph(4, 20).edges()).size, 5u);
    EXPECT_EQ(max_matching_exact(complete_graph(3, 13).edges()).size, 4u);
}

TEST(FractionalLp, Examples) {
    EXPECT_EQ(max_fractional_lp(complete_graph(4, 5).edges()).weight(), Rational(5, 4));
    EXPECT_EQ(max_fractional_lp(complete_graph(4, 8).edges()).weight(), 2);
    auto two = max_fractional_lp({Edge{1, 2, 3, 4}, Edge{1, 2, 3, 5}});
    EXPECT_EQ(two.weight(), 1);
    EXPECT_THROW(max_fractional_lp({}), Error);
}

TEST(FractionalLp, DualCertifiesAndDominatesIntegral) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Edge> es;
        for_each_combination(7, 4, [&](const Edge& e) {
            if (rng() % 4 == 0) es.push_back(e);
        });
        if (es.empty()) continue;
        auto host = sorted_edges(es);
        auto sol = fractional_lp(host, {}, {}, 0);
        ASSERT_EQ(sol.status, LpStatus::Optimal);
        // Dual feasibility over the vertices that appear, and strong duality.
        std::vector<int> verts;
        for (const auto& e : host)
            for (Vertex v : e) verts.push_back(v);
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        Rational dual_obj = 0;
        for (const auto& y : sol.dual) {
            EXPECT_GE(y, 0);
            dual_obj += y;
        }
        EXPECT_EQ(dual_obj, sol.value);
        for (const auto& e : host) {
            Rational cover = 0;
            for (Vertex v : e) cover += sol.dual[std::lower_bound(verts.begin(), verts.end(), v) - verts.begin()];
            EXPECT_GE(cover, 1);
        }
        auto phi = max_fractional_lp(host);
        EXPECT_TRUE(validate_fractional(phi).valid);
        EXPECT_GE(phi.weight(), Rational(static_cast<long>(max_matching_exact(host).size)));
    }
    EXPECT_EQ(max_fractional_lp({Edge{2, 3, 4, 5}}).weight(), 1);
}

TEST(Simplex, InfeasibleAndUnbounded) {
    using V = std::vector<Rational>;
    auto inf = solve_lp<Rational>({V{1}}, V{-1}, V{1});
    EXPECT_EQ(inf.status, LpStatus::Infeasible);
    auto unb = solve_lp<Rational>({V{-1}}, V{1}, V{1});
    EXPECT_EQ(unb.status, LpStatus::Unbounded);
    // x >= 1/2 written as -x <= -1/2, max -x: optimum -1/2.
    auto ph1 = solve_lp<Rational>({V{-1}}, V{Rational(-1, 2)}, V{-1});
    ASSERT_EQ(ph1.status, LpStatus::Optimal);
    EXPECT_EQ(ph1.value, Rational(-1, 2));
}

TEST(EmptyIntersection, Examples) {
    auto k5 = empty_intersection_matching(complete_graph(4, 5).edges());
    EXPECT_EQ(k5.weight(), Rational(5, 4));
    for (const auto& kv : k5.weights) EXPECT_EQ(kv.second, Rational(1, 4));
    auto two = empty_intersection_matching({Edge{1, 2, 3, 4}, Edge{5, 6, 7, 8}});
    EXPECT_EQ(two.weight(), 2);
    auto three = empty_intersection_matching({Edge{1, 2, 3, 4}, Edge{1, 2, 3, 5}, Edge{4, 5, 6, 7}});
    EXPECT_EQ(three.weight(), Rational(3, 2));
    EXPECT_TRUE(validate_fractional(three).valid);
    try {
        empty_intersection_matching({Edge{1, 2, 3, 4}, Edge{1, 5, 6, 7}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonEmptyIntersection);
    }
}

TEST(Mu, Examples) {
    auto all_red = monochrome(complete_graph(4, 8), Colour::Red);
    EXPECT_EQ(mu_estimate(all_red, 1, Rational(1, 100)).value, 2);
    // Blue is K_7^(4) with LP value 7/4; every red edge meets vertex 1, so red stays at 1.
    auto lb = mu_estimate(lower_bound_k4_n2(), 1, Rational(1, 100));
    EXPECT_EQ(lb.value, Rational(7, 4));
    EXPECT_EQ(lb.components, std::vector<int>{1});
    EXPECT_TRUE(lb.exact);
    EXPECT_EQ(mu_estimate(lower_bound_k4_n2(), 1, 1).value, 1);
    EXPECT_EQ(mu_estimate(all_red, 1, 1).value, Rational(static_cast<long>(max_matching_exact(all_red.edges()).size)));
    EXPECT_THROW(mu_estimate(all_red, 2, Rational(1, 2)), Error);
    EXPECT_EQ(mu_estimate(lower_bound_k4_n2(), 2, Rational(1, 100)).value, 2);
}

TEST(Mu, FloorBranchExcludesSmallWeights) {
    // K_5^(4): LP puts 1/4 everywhere; with beta = 1/2 only integral-ish supports survive.
    auto h = monochrome(complete_graph(4, 5), Colour::Red);
    auto est = mu_estimate(h, 1, Rational(1, 2));
    EXPECT_TRUE(est.exact);
    EXPECT_EQ(est.value, 1);
    for (const auto& kv : est.matching.weights) EXPECT_GE(kv.second, Rational(1, 2));
    EXPECT_EQ(mu_estimate(h, 1, Rational(1, 4)).value, Rational(5, 4));
}

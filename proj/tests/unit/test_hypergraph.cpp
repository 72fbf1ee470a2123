#include <gtest/gtest.h>

#include "tcr/hypergraph.hpp"

using namespace tcr;

namespace {

ColouredKGraph lower_bound_k4_n2() {
    return colour_complete(4, 8, [](const Edge& e) { return e.contains(1); });
}

}  // namespace

TEST(Build, SingleRedEdge) {
    auto h = build(4, 4, {{Colour::Red, Edge{1, 2, 3, 4}}});
    ASSERT_EQ(h.size(), 1u);
    EXPECT_EQ(h.colour(0), Colour::Red);
    EXPECT_EQ(h.edge(0), (Edge{1, 2, 3, 4}));
}

TEST(Build, LowerBoundColouring) {
    std::vector<std::pair<Colour, Edge>> es;
    for_each_combination(8, 4, [&](const Edge& e) {
        es.emplace_back(e.contains(1) ? Colour::Red : Colour::Blue, e);
    });
    auto h = build(4, 8, es);
    EXPECT_EQ(h.size(), 70u);
    EXPECT_EQ(h.count(Colour::Red), 35u);
    EXPECT_EQ(h.count(Colour::Blue), 35u);
}

TEST(Build, OutOfRangeVertexIsMalformed) {
    try {
        build(4, 4, {{Colour::Red, Edge{1, 2, 3, 5}}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::MalformedEdge);
    }
}

TEST(Build, WrongArityAndRepeats) {
    EXPECT_THROW(build(4, 6, {{Colour::Red, Edge{1, 2, 3}}}), Error);
    EXPECT_THROW(build(4, 6, {{Colour::Red, Edge{1, 2, 2, 3}}}), Error);
}

TEST(Build, ConflictingColour) {
    try {
        build(3, 5, {{Colour::Red, Edge{1, 2, 3}}, {Colour::Blue, Edge{3, 2, 1}}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConflictingColour);
    }
    auto h = build(3, 5, {{Colour::Red, Edge{1, 2, 3}}, {Colour::Red, Edge{1, 2, 3}}});
    EXPECT_EQ(h.size(), 1u);
}

TEST(DegreeAndLink, SingleEdge) {
    KGraph h(4, 5, {Edge{1, 2, 3, 4}});
    auto [d, link] = degree_and_link(h, Edge{1, 2, 3});
    EXPECT_EQ(d, 1u);
    ASSERT_EQ(link.size(), 1u);
    EXPECT_EQ(link[0], (Edge{4}));
    EXPECT_EQ(degree(h, Edge{5}), 0u);
}

TEST(DegreeAndLink, CompleteGraphPair) {
    auto h = complete_graph(4, 8);
    auto [d, link] = degree_and_link(h, Edge{1, 2});
    EXPECT_EQ(d, 15u);
    std::vector<Edge> expect;
    for_each_combination(std::vector<int>{3, 4, 5, 6, 7, 8}, 2, [&](const Edge& e) { expect.push_back(e); });
    EXPECT_EQ(link, expect);
}

TEST(DegreeAndLink, BadArity) {
    auto h = complete_graph(4, 6);
    EXPECT_THROW(degree_and_link(h, Edge{1, 2, 3, 4}), Error);
    EXPECT_THROW(degree_and_link(h, Edge{}), Error);
}

TEST(Shadow, Examples) {
    KGraph one(4, 4, {Edge{1, 2, 3, 4}});
    EXPECT_EQ(shadow(one).size(), 4u);
    EXPECT_EQ(shadow(complete_graph(4, 5)).size(), 10u);
    EXPECT_EQ(shadow(KGraph(4, 6)).size(), 0u);
}

TEST(Shadow, TwiceEqualsDirect) {
    KGraph h(4, 7, {Edge{1, 2, 3, 4}, Edge{2, 3, 5, 7}, Edge{4, 5, 6, 7}});
    auto twice = shadow(shadow(h));
    std::vector<Edge> direct;
    for (const auto& e : h.edges()) for_each_subset(e, 2, [&](const Edge& s) { direct.push_back(s); });
    std::sort(direct.begin(), direct.end());
    direct.erase(std::unique(direct.begin(), direct.end()), direct.end());
    EXPECT_EQ(twice.edges(), direct);
}

TEST(Degrees, DoubleCounting) {
    auto h = lower_bound_k4_n2().subgraph(Colour::Red);
    for (int i = 1; i <= 3; ++i) {
        std::size_t sum = 0;
        for_each_combination(8, i, [&](const Edge& s) { sum += degree(h, s); });
        EXPECT_EQ(sum, static_cast<std::size_t>(binomial(4, i)) * h.size());
    }
}

TEST(Density, CompleteGraphs) {
    for (int k = 2; k <= 5; ++k)
        for (int n = k; n <= 12; ++n) {
            auto rep = density_check(complete_graph(k, n), 1, 0);
            EXPECT_TRUE(rep.pass) << k << " " << n;
            for (const auto& lv : rep.per_level) EXPECT_EQ(lv.at_least + lv.zero + lv.violating, lv.total);
        }
}

TEST(Density, MissingEdgeFails) {
    auto es = complete_graph(4, 8).edges();
    es.erase(es.begin());
    KGraph h(4, 8, es);
    auto rep = density_check(h, 1, 0);
    EXPECT_FALSE(rep.pass);
    EXPECT_EQ(rep.per_level[2].violating, 4);
}

TEST(Density, MinEps) {
    EXPECT_EQ(min_density_eps(complete_graph(4, 8)), 0);
    auto es = complete_graph(4, 8).edges();
    es.erase(es.begin());
    KGraph h(4, 8, es);
    Rational eps = min_density_eps(h);
    EXPECT_TRUE(density_check(h, 1 - eps, eps).pass);
    EXPECT_EQ(eps, Rational(1, 5));
}

TEST(RationalText, ParseAndPrint) {
    EXPECT_EQ(parse_rational("0.05"), Rational(1, 20));
    EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
    EXPECT_EQ(parse_rational("-2"), Rational(-2));
    EXPECT_EQ(to_string(Rational(2)), "2/1");
    EXPECT_EQ(to_string(Rational(5, 4)), "5/4");
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

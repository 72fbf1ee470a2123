#include <gtest/gtest.h>

#include <random>

#include "tcr/tight.hpp"

using namespace tcr;

namespace {

KGraph tight_cycle_graph(int k, int l) {
    std::vector<Edge> es;
    for (int i = 0; i < l; ++i) {
        std::vector<int> w;
        for (int j = 0; j < k; ++j) w.push_back((i + j) % l + 1);
        es.push_back(Edge::from_range(w.begin(), w.end()));
    }
    return KGraph(k, l, es);
}

// Reference: components by repeated BFS over the pairwise |e ∩ f| = k-1 relation.
std::vector<int> pairwise_labels(const KGraph& h) {
    std::vector<int> label(h.size(), -1);
    int next = 0;
    for (std::size_t s = 0; s < h.size(); ++s) {
        if (label[s] >= 0) continue;
        std::vector<std::size_t> stack{s};
        label[s] = next;
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (std::size_t y = 0; y < h.size(); ++y)
                if (label[y] < 0 && intersection_size(h.edge(int(x)), h.edge(int(y))) == h.k() - 1)
                    label[y] = next, stack.push_back(y);
        }
        ++next;
    }
    return label;
}

}  // namespace

TEST(TightWalk, Examples) {
    auto c8 = tight_cycle_graph(4, 8);
    EXPECT_TRUE(is_tight_walk(c8, {Edge{1, 2, 3, 4}, Edge{2, 3, 4, 5}}));
    KGraph two(4, 8, {Edge{1, 2, 3, 4}, Edge{5, 6, 7, 8}});
    EXPECT_FALSE(is_tight_walk(two, {Edge{1, 2, 3, 4}, Edge{5, 6, 7, 8}}));
    std::vector<Edge> walk;
    for (int i = 0; i < 8; ++i) {
        std::vector<int> w;
        for (int j = 0; j < 4; ++j) w.push_back((i + j) % 8 + 1);
        walk.push_back(Edge::from_range(w.begin(), w.end()));
    }
    EXPECT_TRUE(is_tight_walk(c8, walk));
    EXPECT_THROW(is_tight_walk(c8, {Edge{1, 3, 5, 7}}), Error);
}

TEST(TightComponents, Examples) {
    auto k5 = tight_components(complete_graph(4, 5));
    ASSERT_EQ(k5.count(), 1u);
    EXPECT_EQ(k5.components[0].size(), 5u);
    KGraph two(4, 8, {Edge{1, 2, 3, 4}, Edge{5, 6, 7, 8}});
    EXPECT_EQ(tight_components(two).count(), 2u);
    auto c8 = tight_components(tight_cycle_graph(4, 8));
    ASSERT_EQ(c8.count(), 1u);
    EXPECT_EQ(c8.components[0].size(), 8u);
}

TEST(TightComponents, MatchesPairwiseOracleAndWalks) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Edge> es;
        for_each_combination(8, 4, [&](const Edge& e) {
            if (rng() % 6 == 0) es.push_back(e);
        });
        KGraph h(4, 8, es);
        auto d = tight_components(h);
        auto ref = pairwise_labels(h);
        for (std::size_t a = 0; a < h.size(); ++a)
            for (std::size_t b = a + 1; b < h.size(); ++b) {
                bool same = d.component_of[a] == d.component_of[b];
                EXPECT_EQ(same, ref[a] == ref[b]);
                auto walk = find_tight_walk(h, h.edge(int(a)), h.edge(int(b)));
                EXPECT_EQ(!walk.empty(), same);
                if (!walk.empty()) { EXPECT_TRUE(is_tight_walk(h, walk)); }
            }
    }
}

TEST(TightComponents, ShuffleInvariant) {
    std::mt19937_64 rng(11);
    std::vector<Edge> es;
    for_each_combination(9, 4, [&](const Edge& e) {
        if (rng() % 5 == 0) es.push_back(e);
    });
    KGraph a(4, 9, es);
    std::shuffle(es.begin(), es.end(), rng);
    KGraph b(4, 9, es);
    EXPECT_EQ(tight_components(a).components, tight_components(b).components);
}

TEST(MonochromaticComponents, AllRed) {
    auto d = monochromatic_components(monochrome(complete_graph(4, 5), Colour::Red));
    EXPECT_EQ(d.count(Colour::Red), 1u);
    EXPECT_EQ(d.count(Colour::Blue), 0u);
}

TEST(MonochromaticComponents, LowerBoundColouring) {
    auto h = colour_complete(4, 8, [](const Edge& e) { return e.contains(1); });
    auto d = monochromatic_components(h);
    ASSERT_EQ(d.count(), 2u);
    EXPECT_EQ(d.colour[0], Colour::Red);
    EXPECT_EQ(d.components[0].size(), 35u);
    for (int id : d.components[0]) EXPECT_TRUE(h.edge(id).contains(1));
    for (int id : d.components[1]) EXPECT_FALSE(h.edge(id).contains(1));
}

TEST(FindTightCycle, CompleteFive) {
    auto res = find_tight_cycle(complete_graph(4, 5), 5);
    ASSERT_TRUE(res.found());
    EXPECT_TRUE(verify_witness(complete_graph(4, 5), *res.witness));
}

TEST(FindTightCycle, LowerBoundRedIsAbsent) {
    auto h = colour_complete(4, 8, [](const Edge& e) { return e.contains(1); });
    auto res = find_tight_cycle(h.subgraph(Colour::Red), 8);
    EXPECT_FALSE(res.found());
    EXPECT_GT(res.stats.nodes, 0u);
}

TEST(FindTightCycle, RecoversDefiningOrder) {
    auto c8 = tight_cycle_graph(4, 8);
    auto res = find_tight_cycle(c8, 8);
    ASSERT_TRUE(res.found());
    EXPECT_EQ(res.witness->ordering, (std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8}));
}

TEST(FindTightCycle, CapAndLength) {
    EXPECT_THROW(find_tight_cycle(complete_graph(4, 15), 8), Error);
    EXPECT_THROW(find_tight_cycle(complete_graph(4, 6), 4), Error);
    EXPECT_FALSE(find_tight_cycle(complete_graph(4, 6), 7).found());
}

TEST(FindTightPath, Examples) {
    KGraph one(4, 4, {Edge{1, 2, 3, 4}});
    auto p = find_tight_path(one, 4);
    ASSERT_TRUE(p.found());
    EXPECT_TRUE(verify_witness(one, *p.witness));
    EXPECT_TRUE(find_tight_path(complete_graph(4, 5), 5).found());
    KGraph two(4, 8, {Edge{1, 2, 3, 4}, Edge{5, 6, 7, 8}});
    EXPECT_FALSE(find_tight_path(two, 5).found());
}

TEST(FindTightCycle, WitnessesReverify) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Edge> es;
        for_each_combination(8, 3, [&](const Edge& e) {
            if (rng() % 2 == 0) es.push_back(e);
        });
        KGraph h(3, 8, es);
        for (int l = 4; l <= 8; ++l) {
            auto c = find_tight_cycle(h, l);
            if (c.found()) { EXPECT_TRUE(verify_witness(h, *c.witness)); }
            auto p = find_tight_path(h, l);
            if (p.found()) { EXPECT_TRUE(verify_witness(h, *p.witness)); }
            if (c.found()) { EXPECT_TRUE(p.found()); }
        }
    }
}

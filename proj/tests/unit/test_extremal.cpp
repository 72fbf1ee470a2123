#include <gtest/gtest.h>

#include "tcr/extremal.hpp"

using namespace tcr;

TEST(SplitColouring, Examples) {
    auto a = split_coloring(4, 2);
    EXPECT_EQ(a.spec.N, 8);
    EXPECT_EQ(a.graph.count(Colour::Red), 35u);
    EXPECT_EQ(a.graph.count(Colour::Blue), 35u);
    auto b = split_coloring(2, 2);
    EXPECT_EQ(b.spec.N, 4);
    EXPECT_EQ(b.graph.count(Colour::Red), 3u);
    EXPECT_EQ(b.graph.count(Colour::Blue), 3u);
    // The formula gives N = 6 for k = 3, n = 2, so red = C(6,3) - C(5,3).
    auto c = split_coloring(3, 2);
    EXPECT_EQ(c.spec.N, 6);
    EXPECT_EQ(c.spec.x_size, 1);
    EXPECT_EQ(c.graph.count(Colour::Red), 10u);
}

TEST(SplitColouring, CountsMatchBinomials) {
    for (int k = 2; k <= 5; ++k)
        for (int n = 2; n <= 4; ++n) {
            auto s = split_coloring(k, n);
            EXPECT_EQ(s.graph.count(Colour::Blue), static_cast<std::size_t>(binomial(k * n - 1, k)));
            EXPECT_EQ(s.graph.count(Colour::Red),
                      static_cast<std::size_t>(binomial(s.spec.N, k) - binomial(k * n - 1, k)));
        }
    EXPECT_THROW(split_coloring(5, 4, 1000), Error);
}

TEST(ParityColouring, Examples) {
    auto a = parity_coloring(3, 2, 0);
    EXPECT_EQ(a.spec.d, 3);
    EXPECT_EQ(a.spec.N, 6);
    EXPECT_EQ(a.spec.x_size, 1);
    EXPECT_TRUE(a.graph.has(Edge{2, 3, 4}, Colour::Red));
    EXPECT_TRUE(a.graph.has(Edge{1, 2, 3}, Colour::Blue));
    auto b = parity_coloring(4, 2, 2);
    EXPECT_EQ(b.spec.d, 2);
    EXPECT_EQ(b.spec.N, 10);
    EXPECT_EQ(b.spec.x_size, 3);
    EXPECT_EQ(b.spec.y_size, 7);
    // i = 0 at k = 3, n = 2 is the colour swap of the split colouring.
    auto s = split_coloring(3, 2);
    ASSERT_EQ(s.graph.edges(), a.graph.edges());
    for (std::size_t j = 0; j < s.graph.size(); ++j) EXPECT_EQ(a.graph.colour(static_cast<int>(j)), other(s.graph.colour(static_cast<int>(j))));
}

TEST(ParityColouring, ProfilesAreConstant) {
    for (int k = 2; k <= 4; ++k)
        for (int i = 0; i < k; ++i) {
            auto p = parity_coloring(k, 2, i, 100000);
            auto d = monochromatic_components(p.graph);
            for (const auto& comp : d.components) {
                int r = p.spec.x_count(p.graph.edge(comp.front()));
                for (int id : comp) EXPECT_EQ(p.spec.x_count(p.graph.edge(id)), r);
            }
        }
}

TEST(VerifyNoMonoCycle, ParityCounting) {
    auto p = parity_coloring(3, 2, 0);
    auto cert = verify_no_mono_cycle(p.graph, p.spec, 6);
    EXPECT_TRUE(cert.absent);
    EXPECT_TRUE(cert.cross_checked);
    bool saw_vertex = false, saw_count = false;
    for (const auto& ev : cert.components) {
        if (ev.colour == Colour::Red) saw_vertex |= ev.method == AbsenceMethod::VertexCount && ev.vertices == 5;
        if (ev.colour == Colour::Blue) saw_count |= ev.method == AbsenceMethod::Counting && ev.r1 == 1;
    }
    EXPECT_TRUE(saw_vertex);
    EXPECT_TRUE(saw_count);
    EXPECT_TRUE(recheck_certificate(p.graph, p.spec, cert));
}

TEST(VerifyNoMonoCycle, SplitMatchingBound) {
    auto s = split_coloring(4, 2);
    auto cert = verify_no_mono_cycle(s.graph, s.spec, 8);
    EXPECT_TRUE(cert.absent);
    for (const auto& ev : cert.components) {
        if (ev.method == AbsenceMethod::MatchingBound) {
            EXPECT_EQ(ev.max_matching, 1);
        }
    }
    EXPECT_TRUE(recheck_certificate(s.graph, s.spec, cert));
    auto s3 = split_coloring(3, 2);
    EXPECT_TRUE(verify_no_mono_cycle(s3.graph, s3.spec, 6).absent);
}

TEST(VerifyNoMonoCycle, CompleteGraphHasCycle) {
    auto h = monochrome(complete_graph(4, 8), Colour::Red);
    ExtremalSpec s;
    s.k = 4;
    auto cert = verify_no_mono_cycle(h, s, 8);
    EXPECT_FALSE(cert.absent);
    ASSERT_TRUE(cert.witness);
    EXPECT_TRUE(verify_witness(h.graph(), *cert.witness));
    EXPECT_TRUE(recheck_certificate(h, s, cert));
}

TEST(VerifyNoMonoCycle, TamperedCertificateFailsRecheck) {
    auto p = parity_coloring(3, 2, 0);
    auto cert = verify_no_mono_cycle(p.graph, p.spec, 6);
    cert.components.front().vertices += 1;
    EXPECT_FALSE(recheck_certificate(p.graph, p.spec, cert));
}

TEST(RamseySearch, Triangles) {
    EXPECT_EQ(ramsey_search_tiny(2, {TargetKind::Cycle, 3}, 6).verdict, RamseyVerdict::AllColoured);
    auto five = ramsey_search_tiny(2, {TargetKind::Cycle, 3}, 5);
    ASSERT_EQ(five.verdict, RamseyVerdict::CounterExample);
    ASSERT_TRUE(five.colouring);
    // The pentagon and pentagram: both colour classes 2-regular.
    EXPECT_EQ(five.colouring->count(Colour::Red), 5u);
    EXPECT_FALSE(has_mono_target(*five.colouring, {TargetKind::Cycle, 3}));
}

TEST(RamseySearch, FourCycles) {
    EXPECT_EQ(ramsey_search_tiny(2, {TargetKind::Cycle, 4}, 6).verdict, RamseyVerdict::AllColoured);
    auto five = ramsey_search_tiny(2, {TargetKind::Cycle, 4}, 5);
    ASSERT_EQ(five.verdict, RamseyVerdict::CounterExample);
    EXPECT_FALSE(has_mono_target(*five.colouring, {TargetKind::Cycle, 4}));
}

TEST(RamseySearch, SplitIsTheHypergraphCounterexample) {
    auto r = ramsey_search_tiny(4, {TargetKind::Cycle, 8}, 8);
    ASSERT_EQ(r.verdict, RamseyVerdict::CounterExample);
    EXPECT_EQ(r.method, "candidate:split(4,2)");
    auto s = split_coloring(4, 2);
    EXPECT_EQ(r.colouring->edges(), s.graph.edges());
    EXPECT_EQ(r.colouring->colours(), s.graph.colours());
}

TEST(RamseySearch, PathsAndCaps) {
    // P_3 in a 2-coloured K_3: two edges of one colour share a vertex.
    EXPECT_EQ(ramsey_search_tiny(2, {TargetKind::Path, 3}, 3).verdict, RamseyVerdict::AllColoured);
    EXPECT_EQ(ramsey_search_tiny(2, {TargetKind::Path, 3}, 2).verdict, RamseyVerdict::CounterExample);
    // Split colourings also avoid monochromatic tight paths on 4n vertices at n = 2.
    auto s = split_coloring(4, 2);
    EXPECT_FALSE(has_mono_target(s.graph, {TargetKind::Path, 8}));
    EXPECT_THROW(ramsey_search_tiny(3, {TargetKind::Cycle, 9}, 9), Error);
    EXPECT_EQ(parse_target("c4").length, 4);
    EXPECT_THROW(parse_target("x4"), Error);
}

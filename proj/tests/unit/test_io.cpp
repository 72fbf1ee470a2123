#include <gtest/gtest.h>

#include <random>

#include "tcr/io.hpp"

using namespace tcr;

TEST(TcgFormat, ParsesMinimalFile) {
    auto h = parse_coloured_hypergraph("tcg 1\nk=4 n=8\nR 1 2 3 4\nB 5 6 7 8\n");
    EXPECT_EQ(h.k(), 4);
    EXPECT_EQ(h.n(), 8);
    EXPECT_EQ(h.size(), 2u);
    EXPECT_TRUE(h.has(Edge{1, 2, 3, 4}, Colour::Red));
    EXPECT_TRUE(h.has(Edge{5, 6, 7, 8}, Colour::Blue));
}

TEST(TcgFormat, CommentsAndBlankLines) {
    auto h = parse_coloured_hypergraph("# header next\n\ntcg 1\n  k=2 n=3  # trailing\nR 1 2\n\nB 2 3\n");
    EXPECT_EQ(h.size(), 2u);
}

TEST(TcgFormat, RoundTrip) {
    auto s = split_coloring(4, 2);
    auto text = serialize_coloured_hypergraph(s.graph);
    auto back = parse_coloured_hypergraph(text);
    EXPECT_EQ(back.edges(), s.graph.edges());
    EXPECT_EQ(back.colours(), s.graph.colours());
    EXPECT_EQ(serialize_coloured_hypergraph(back), text);
}

TEST(TcgFormat, ErrorsCarryPosition) {
    try {
        parse_coloured_hypergraph("tcg 1\nk=4 n=8\nR 1 2 3\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
    }
    try {
        parse_coloured_hypergraph("tcg 1\nk=4 n=8\nR 1 2 3 9\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3);
        EXPECT_EQ(e.column(), 9);
    }
    EXPECT_THROW(parse_coloured_hypergraph("tcg 2\n"), ParseError);
    EXPECT_THROW(parse_coloured_hypergraph("tcg 1\nk=4 n=8\nG 1 2 3 4\n"), ParseError);
    EXPECT_THROW(parse_coloured_hypergraph("tcg 1\nk=4 n=8\nR 2 1 3 4\n"), ParseError);
    EXPECT_THROW(parse_coloured_hypergraph("tcg 1\r\nk=4 n=8\r\n"), ParseError);
    EXPECT_THROW(parse_coloured_hypergraph(""), ParseError);
    // Same edge in both colours is a semantic error, not a syntax one.
    try {
        parse_coloured_hypergraph("tcg 1\nk=2 n=3\nR 1 2\nB 1 2\n");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ConflictingColour);
    }
}

TEST(JsonIo, BlueprintRoundTrip) {
    std::mt19937_64 rng(11);
    auto h = colour_complete(4, 14, [&](const Edge&) { return rng() % 3 != 0; });
    auto bp = build_blueprint(h, Rational(1, 20));
    Json j = to_json(bp);
    auto back = blueprint_from_json(Json::parse(j.dump()));
    EXPECT_EQ(back.edges, bp.edges);
    EXPECT_EQ(back.colours, bp.colours);
    EXPECT_EQ(back.assign, bp.assign);
    EXPECT_EQ(back.eps, bp.eps);
    EXPECT_EQ(to_json(back).dump(), j.dump());
    EXPECT_EQ(check_blueprint(h, back).pass, check_blueprint(h, bp).pass);
    EXPECT_THROW(blueprint_from_json(Json::parse("{\"k\":4}")), Error);
}

TEST(JsonIo, CertificateRoundTrip) {
    auto p = parity_coloring(3, 2, 0);
    auto cert = verify_no_mono_cycle(p.graph, p.spec, 6);
    Json j = to_json(cert);
    for (const auto& c : j["components"]) {
        if (c.contains("r1")) {
            EXPECT_EQ(c["r1"].get<int>() + c["r2"].get<int>(), 3);
        }
    }
    auto back = certificate_from_json(Json::parse(j.dump()));
    EXPECT_EQ(back.components.size(), cert.components.size());
    EXPECT_TRUE(recheck_certificate(p.graph, p.spec, back));
}

TEST(JsonIo, Rationals) {
    EXPECT_EQ(to_json(Rational(3, 4)).get<std::string>(), "3/4");
    EXPECT_EQ(rational_from_json(Json("5/10")), Rational(1, 2));
    EXPECT_THROW(rational_from_json(Json("x")), Error);
}

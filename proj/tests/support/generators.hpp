#pragma once

// Seeded random instances shared by unit and acceptance tests.

#include <algorithm>
#include <random>
#include <vector>

#include "tcr/hypergraph.hpp"

namespace tcr::gen {

/// Each k-subset of [n] kept with probability keep/20, coloured uniformly.
inline ColouredKGraph random_coloured(int k, int n, int keep, std::mt19937_64& rng) {
    std::vector<std::pair<Colour, Edge>> es;
    const KGraph full = complete_graph(k, n);
    for (const auto& e : full.edges())
        if (static_cast<int>(rng() % 20) < keep) es.push_back({rng() % 2 ? Colour::Red : Colour::Blue, e});
    return build(k, n, es);
}

/// Non-empty family of s distinct k-sets over [n] with empty intersection.
inline std::vector<Edge> random_empty_family(int k, int n, int s, std::mt19937_64& rng) {
    auto all = complete_graph(k, n).edges();
    while (true) {
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<Edge> f(all.begin(), all.begin() + s);
        std::vector<int> hits(n + 1, 0);
        for (const auto& e : f)
            for (Vertex v : e) ++hits[v];
        if (std::none_of(hits.begin(), hits.end(), [&](int h) { return h == s; })) return f;
    }
}

/// Complete k-graph on [n] under one of several colouring shapes. Complete
/// hosts are (1, 0)-dense; the colouring varies the component structure.
inline ColouredKGraph random_dense_colouring(int k, int n, std::mt19937_64& rng) {
    const int shape = static_cast<int>(rng() % 4);
    std::vector<int> side(n + 1);
    for (int v = 1; v <= n; ++v) side[v] = static_cast<int>(rng() % 3 == 0);
    std::vector<int> label(n + 1);
    for (int v = 1; v <= n; ++v) label[v] = static_cast<int>(rng() % 3);
    const int flip = static_cast<int>(rng() % 10);
    return colour_complete(k, n, [&](const Edge& e) {
        int x = 0, lab = 0;
        for (Vertex v : e) x += side[v], lab += label[v];
        bool red = false;
        switch (shape) {
            case 0: red = rng() % 2 == 0; break;      // uniform
            case 1: red = x > 0; break;               // split-like
            case 2: red = x % 2 == 0; break;          // parity-like
            default: red = lab % 3 != 0; break;       // label sums
        }
        // Sprinkle noise on the structured shapes.
        if (shape != 0 && static_cast<int>(rng() % 100) < flip) red = !red;
        return red;
    });
}

}  // namespace tcr::gen

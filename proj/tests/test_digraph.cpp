#include <keiso/digraph.hpp>
#include <keiso/io.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace keiso;

namespace {

Digraph edge01() { return Digraph(2, {{0, 1}}); }
Digraph edge10() { return Digraph(2, {{1, 0}}); }
Digraph three_cycle() { return Digraph(3, {{0, 1}, {1, 2}, {2, 0}}); }
Digraph path3() { return Digraph(3, {{0, 1}, {1, 2}}); }
Digraph out_star3() { return Digraph(3, {{0, 1}, {0, 2}}); }

} // namespace

TEST(Digraph, RejectsLoops) {
    Digraph g(3);
    EXPECT_THROW(g.add_edge(1, 1), PreconditionViolated);
    EXPECT_THROW(g.add_edge(0, 3), PreconditionViolated);
}

TEST(ParseEdgeList, Examples) {
    const auto g1 = io::parse_edge_list("1\n");
    EXPECT_EQ(g1.size(), 1u);
    EXPECT_TRUE(g1.edges().empty());
    EXPECT_EQ(io::parse_edge_list("2\n0 1\n"), edge01());
}

TEST(ParseEdgeList, Errors) {
    auto kind_of = [](const char* text) {
        try {
            io::parse_edge_list(text);
        } catch (const ParseError& e) {
            return e.kind();
        }
        ADD_FAILURE() << "no error for: " << text;
        return ParseError::Kind::MalformedLine;
    };
    EXPECT_EQ(kind_of("2\n0 0\n"), ParseError::Kind::SelfLoop);
    EXPECT_EQ(kind_of("2\n0 2\n"), ParseError::Kind::OutOfRange);
    EXPECT_EQ(kind_of("2\n0\n"), ParseError::Kind::MalformedLine);
    EXPECT_EQ(kind_of("2\n0 x\n"), ParseError::Kind::MalformedLine);
    EXPECT_EQ(kind_of(""), ParseError::Kind::MalformedLine);
    EXPECT_EQ(kind_of("two\n"), ParseError::Kind::MalformedLine);
}

TEST(IsGraphIsomorphism, Examples) {
    EXPECT_TRUE(is_graph_isomorphism(edge01(), edge01(), Bijection::identity(2)));
    EXPECT_TRUE(is_graph_isomorphism(edge01(), edge10(), Bijection({1, 0})));
    EXPECT_FALSE(is_graph_isomorphism(edge01(), edge01(), Bijection({1, 0})));
    EXPECT_FALSE(is_graph_isomorphism(edge01(), Digraph(3), Bijection::identity(2)));
}

TEST(FindGraphIsomorphism, Examples) {
    const auto f = find_graph_isomorphism(three_cycle(), three_cycle());
    ASSERT_TRUE(f);
    EXPECT_TRUE(is_graph_isomorphism(three_cycle(), three_cycle(), *f));
    EXPECT_FALSE(find_graph_isomorphism(path3(), out_star3()));
    EXPECT_EQ(find_graph_isomorphism(Digraph(4), Digraph(4)), Bijection::identity(4));
    EXPECT_FALSE(find_graph_isomorphism(Digraph(3), Digraph(4)));
}

TEST(FindGraphIsomorphism, MatchesBruteForceOnAllPairsUpTo3) {
    for (std::size_t n = 1; n <= 3; ++n) {
        const auto graphs = enumerate_digraphs(n);
        for (const auto& g : graphs)
            for (const auto& h : graphs) {
                const auto f = find_graph_isomorphism(g, h);
                ASSERT_EQ(f.has_value(), oracle::graphs_isomorphic(g, h));
                if (f) {
                    ASSERT_TRUE(is_graph_isomorphism(g, h, *f));
                }
            }
    }
}

TEST(FindGraphIsomorphism, MatchesBruteForceAt4AgainstSampledTargets) {
    const auto graphs = enumerate_digraphs(4);
    std::mt19937_64 rng(4);
    for (const auto& g : graphs) {
        const auto& h = graphs[rng() % graphs.size()];
        ASSERT_EQ(find_graph_isomorphism(g, h).has_value(), oracle::graphs_isomorphic(g, h));
    }
}

TEST(FindGraphIsomorphism, MatchesBruteForceOnRandomPairs) {
    std::mt19937_64 rng(2024);
    for (std::size_t n : {5u, 6u})
        for (int k = 0; k < 200; ++k) {
            const auto g = random_digraph(n, 0.5, rng);
            const auto h = k % 2 ? relabel(g, random_permutation(n, rng)) : random_digraph(n, 0.5, rng);
            const auto f = find_graph_isomorphism(g, h);
            ASSERT_EQ(f.has_value(), oracle::graphs_isomorphic(g, h));
            if (f) {
                ASSERT_TRUE(is_graph_isomorphism(g, h, *f));
            }
        }
}

TEST(FindGraphIsomorphism, SucceedsOnEveryRelabeling) {
    for (const auto& g : enumerate_digraphs(3)) {
        std::vector<Element> p{0, 1, 2};
        do {
            const auto h = relabel(g, Bijection(p));
            ASSERT_TRUE(find_graph_isomorphism(g, h));
        } while (std::next_permutation(p.begin(), p.end()));
    }
}

TEST(EnumerateDigraphs, Counts) {
    EXPECT_EQ(enumerate_digraphs(1).size(), 1u);
    EXPECT_EQ(enumerate_digraphs(2).size(), 4u);
    EXPECT_EQ(enumerate_digraphs(3).size(), 64u);
    std::size_t count4 = 0;
    for_each_digraph(4, false, [&](const Digraph&) { ++count4; });
    EXPECT_EQ(count4, 4096u);
    EXPECT_THROW(enumerate_digraphs(6), TooLarge);
}

TEST(EnumerateDigraphs, LexicographicCodeOrder) {
    const auto graphs = enumerate_digraphs(3);
    for (std::size_t i = 0; i < graphs.size(); ++i)
        EXPECT_EQ(graph_code(graphs[i]), i);
    // First pair (0,1) is the most significant bit.
    EXPECT_EQ(graph_code(edge01()), 2u);
    EXPECT_EQ(graph_code(edge10()), 1u);
}

TEST(EnumerateDigraphs, DedupeMatchesBruteForceClassCount) {
    const auto reps3 = enumerate_digraphs(3, true);
    EXPECT_EQ(reps3.size(), 16u);
    EXPECT_EQ(oracle::count_isomorphism_classes(enumerate_digraphs(3)), 16u);
    // Representatives are pairwise non-isomorphic.
    EXPECT_EQ(oracle::count_isomorphism_classes(reps3), 16u);
    EXPECT_EQ(enumerate_digraphs(2, true).size(), 3u);
    EXPECT_EQ(enumerate_digraphs(4, true).size(), 218u);
}

TEST(CanonicalCode, InvariantUnderRelabeling) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 50; ++k) {
        const auto g = random_digraph(5, 0.4, rng);
        const auto h = relabel(g, random_permutation(5, rng));
        EXPECT_EQ(canonical_code(g), canonical_code(h));
        EXPECT_LE(canonical_code(g), graph_code(g));
    }
}

TEST(RandomDigraph, Extremes) {
    EXPECT_EQ(random_digraph(3, 0.0, 1), Digraph(3));
    EXPECT_EQ(random_digraph(3, 1.0, 1), Digraph::complete(3));
    EXPECT_THROW(random_digraph(3, 1.5, 1), PreconditionViolated);
}

TEST(RandomDigraph, DeterministicPerSeed) {
    const auto a = random_digraph(5, 0.5, 42);
    const auto b = random_digraph(5, 0.5, 42);
    EXPECT_EQ(io::format_edge_list(a), io::format_edge_list(b));
    bool differs = false;
    for (std::uint64_t s = 43; s < 60 && !differs; ++s)
        differs = !(random_digraph(5, 0.5, s) == a);
    EXPECT_TRUE(differs);
}

TEST(Bijection, Validation) {
    EXPECT_THROW(Bijection({0, 0}), NotBijective);
    EXPECT_THROW(Bijection({0, 2}), NotBijective);
    const Bijection p({2, 0, 1});
    EXPECT_EQ(p.after(p.inverse()), Bijection::identity(3));
}

TEST(CodeRoundTrip, AllGraphsOn3And4) {
    for (std::size_t n : {3u, 4u})
        for_each_digraph(n, false, [&](const Digraph& g) {
            ASSERT_EQ(digraph_from_code(n, graph_code(g)), g);
        });
}

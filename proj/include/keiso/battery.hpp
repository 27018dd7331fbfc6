#pragma once

// Pair sets for checking that graph isomorphism and kei isomorphism agree,
// and a sharded runner that returns verdicts in pair order.

#include <keiso/digraph.hpp>
#include <keiso/isomorphism.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace keiso {

struct GraphPair {
    Digraph first;
    Digraph second;
};

inline constexpr std::size_t max_all_pairs_vertices = 3;
inline constexpr std::size_t max_canonical_pairs_vertices = 4;

/// Every ordered pair of labeled digraphs on n vertices.
inline std::vector<GraphPair> all_labeled_pairs(std::size_t n) {
    if (n > max_all_pairs_vertices)
        throw TooLarge("all-pairs mode is limited to n <= 3; use canonical pairs for n = 4");
    const auto graphs = enumerate_digraphs(n);
    std::vector<GraphPair> out;
    out.reserve(graphs.size() * graphs.size());
    for (const auto& a : graphs)
        for (const auto& b : graphs)
            out.push_back({a, b});
    return out;
}

/// Every ordered pair of canonical representatives on n vertices.
inline std::vector<GraphPair> canonical_pairs(std::size_t n) {
    if (n > max_canonical_pairs_vertices)
        throw TooLarge("canonical-pairs mode is limited to n <= 4; use sampled mode beyond");
    const auto graphs = enumerate_digraphs(n, true);
    std::vector<GraphPair> out;
    out.reserve(graphs.size() * graphs.size());
    for (const auto& a : graphs)
        for (const auto& b : graphs)
            out.push_back({a, b});
    return out;
}

/// Even-indexed pairs are (G, relabeled G); odd-indexed pairs are two
/// independent graphs. Edge probability 1/2 throughout.
inline std::vector<GraphPair> sampled_pairs(std::size_t n, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<GraphPair> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Digraph g = random_digraph(n, 0.5, rng);
        if (k % 2 == 0) {
            const auto p = random_permutation(n, rng);
            out.push_back({g, relabel(g, p)});
        } else {
            out.push_back({g, random_digraph(n, 0.5, rng)});
        }
    }
    return out;
}

struct BatteryResult {
    std::vector<Verdict> verdicts;
    std::size_t agreements = 0;
    std::vector<std::size_t> disagreements;
};

/// Runs reduction_check on every pair. Work is sharded across `jobs` threads;
/// verdicts come back in input order regardless.
inline BatteryResult run_battery(const std::vector<GraphPair>& pairs,
                                 const ReductionOptions& opts = {}, unsigned jobs = 1) {
    BatteryResult r;
    r.verdicts.resize(pairs.size());
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(pairs.size())));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < pairs.size();) {
            try {
                r.verdicts[i] = reduction_check(pairs[i].first, pairs[i].second, opts);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next = pairs.size();
            }
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j)
            pool.emplace_back(worker);
    }
    if (failure)
        std::rethrow_exception(failure);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (r.verdicts[i].agree)
            ++r.agreements;
        else
            r.disagreements.push_back(i);
    }
    return r;
}

} // namespace keiso

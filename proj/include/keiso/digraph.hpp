#pragma once

#include <keiso/error.hpp>
#include <keiso/magma.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace keiso {

/// A bijection {0..n-1} -> {0..n-1}, used for vertex maps and for maps
/// between magma carriers alike.
class Bijection {
public:
    Bijection() = default;

    explicit Bijection(std::vector<Element> map) : map_(std::move(map)) {
        std::vector<char> seen(map_.size(), 0);
        for (Element x : map_) {
            if (x >= map_.size() || seen[x])
                throw NotBijective("map is not a permutation of its domain");
            seen[x] = 1;
        }
    }

    static Bijection identity(std::size_t n) {
        std::vector<Element> m(n);
        std::iota(m.begin(), m.end(), 0);
        return Bijection(std::move(m));
    }

    std::size_t size() const noexcept { return map_.size(); }
    Element operator()(Element x) const noexcept { return map_[x]; }
    const std::vector<Element>& map() const noexcept { return map_; }

    Bijection inverse() const {
        std::vector<Element> inv(map_.size());
        for (Element x = 0; x < map_.size(); ++x)
            inv[map_[x]] = x;
        return Bijection(std::move(inv));
    }

    /// (this ∘ inner)(x) = this(inner(x)).
    Bijection after(const Bijection& inner) const {
        if (inner.size() != size())
            throw PreconditionViolated("composing bijections of different sizes");
        std::vector<Element> m(size());
        for (Element x = 0; x < size(); ++x)
            m[x] = map_[inner(x)];
        return Bijection(std::move(m));
    }

    friend bool operator==(const Bijection&, const Bijection&) = default;

private:
    std::vector<Element> map_;
};

/// Irreflexive directed graph on vertices 0..n-1.
class Digraph {
public:
    Digraph() = default;
    explicit Digraph(std::size_t n) : n_(n), adj_(n * n, 0) {}

    Digraph(std::size_t n, const std::vector<std::pair<Element, Element>>& edges) : Digraph(n) {
        for (auto [u, v] : edges)
            add_edge(u, v);
    }

    std::size_t size() const noexcept { return n_; }
    bool has_edge(Element u, Element v) const noexcept { return adj_[u * n_ + v] != 0; }

    void add_edge(Element u, Element v) {
        if (u >= n_ || v >= n_)
            throw PreconditionViolated("edge endpoint outside the vertex set");
        if (u == v)
            throw PreconditionViolated("self-loop on vertex " + std::to_string(u));
        adj_[u * n_ + v] = 1;
    }

    std::size_t out_degree(Element u) const {
        std::size_t d = 0;
        for (Element v = 0; v < n_; ++v)
            d += has_edge(u, v);
        return d;
    }
    std::size_t in_degree(Element v) const {
        std::size_t d = 0;
        for (Element u = 0; u < n_; ++u)
            d += has_edge(u, v);
        return d;
    }

    std::vector<std::pair<Element, Element>> edges() const {
        std::vector<std::pair<Element, Element>> out;
        for (Element u = 0; u < n_; ++u)
            for (Element v = 0; v < n_; ++v)
                if (has_edge(u, v))
                    out.emplace_back(u, v);
        return out;
    }

    static Digraph complete(std::size_t n) {
        Digraph g(n);
        for (Element u = 0; u < n; ++u)
            for (Element v = 0; v < n; ++v)
                if (u != v)
                    g.add_edge(u, v);
        return g;
    }

    friend bool operator==(const Digraph&, const Digraph&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> adj_;
};

// ---------------------------------------------------------------------------
// Bit-pattern codes. The off-diagonal pairs (u,v), u != v, are listed in
// row-major order; the first pair is the most significant bit. Ordering graphs
// by code is lexicographic order of the bit pattern.

inline std::size_t off_diagonal_pairs(std::size_t n) { return n * (n ? n - 1 : 0); }

inline std::uint64_t graph_code(const Digraph& g) {
    const auto n = g.size();
    if (off_diagonal_pairs(n) > 63)
        throw TooLarge("graph codes are limited to 8 vertices");
    std::uint64_t code = 0;
    for (Element u = 0; u < n; ++u)
        for (Element v = 0; v < n; ++v)
            if (u != v)
                code = (code << 1) | (g.has_edge(u, v) ? 1u : 0u);
    return code;
}

inline Digraph digraph_from_code(std::size_t n, std::uint64_t code) {
    const auto m = off_diagonal_pairs(n);
    if (m > 63)
        throw TooLarge("graph codes are limited to 8 vertices");
    Digraph g(n);
    std::size_t k = 0;
    for (Element u = 0; u < n; ++u)
        for (Element v = 0; v < n; ++v)
            if (u != v) {
                if ((code >> (m - 1 - k)) & 1u)
                    g.add_edge(u, v);
                ++k;
            }
    return g;
}

/// "<n>:<code>", a stable identifier for a labeled digraph.
inline std::string graph_id(const Digraph& g) {
    return std::to_string(g.size()) + ":" + std::to_string(graph_code(g));
}

/// The graph with vertex v renamed to p(v).
inline Digraph relabel(const Digraph& g, const Bijection& p) {
    if (p.size() != g.size())
        throw PreconditionViolated("relabeling bijection has the wrong size");
    Digraph h(g.size());
    for (auto [u, v] : g.edges())
        h.add_edge(p(u), p(v));
    return h;
}

/// u E_G v  <=>  f(u) E_H f(v), for all u, v.
inline bool is_graph_isomorphism(const Digraph& g, const Digraph& h, const Bijection& f) {
    if (g.size() != h.size() || f.size() != g.size())
        return false;
    const auto n = static_cast<Element>(g.size());
    for (Element u = 0; u < n; ++u)
        for (Element v = 0; v < n; ++v)
            if (g.has_edge(u, v) != h.has_edge(f(u), f(v)))
                return false;
    return true;
}

namespace detail {

class GraphIsoSearch {
public:
    GraphIsoSearch(const Digraph& g, const Digraph& h)
        : g_(g), h_(h), n_(static_cast<Element>(g.size())), map_(n_, 0), used_(n_, 0) {
        for (Element v = 0; v < n_; ++v) {
            gdeg_.emplace_back(g.in_degree(v), g.out_degree(v));
            hdeg_.emplace_back(h.in_degree(v), h.out_degree(v));
        }
    }

    std::optional<Bijection> run() {
        auto a = gdeg_, b = hdeg_;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            return std::nullopt;
        if (extend(0))
            return Bijection(map_);
        return std::nullopt;
    }

private:
    bool extend(Element u) {
        if (u == n_)
            return true;
        for (Element t = 0; t < n_; ++t) {
            if (used_[t] || gdeg_[u] != hdeg_[t])
                continue;
            if (g_.has_edge(u, u) != h_.has_edge(t, t))
                continue;
            bool ok = true;
            for (Element w = 0; w < u && ok; ++w)
                ok = g_.has_edge(u, w) == h_.has_edge(t, map_[w]) &&
                     g_.has_edge(w, u) == h_.has_edge(map_[w], t);
            if (!ok)
                continue;
            map_[u] = t;
            used_[t] = 1;
            if (extend(u + 1))
                return true;
            used_[t] = 0;
        }
        return false;
    }

    const Digraph& g_;
    const Digraph& h_;
    Element n_;
    std::vector<Element> map_;
    std::vector<char> used_;
    std::vector<std::pair<std::size_t, std::size_t>> gdeg_, hdeg_;
};

} // namespace detail

/// Backtracking over vertex assignments in index order, pruned by
/// (in-degree, out-degree) pairs and by consistency with earlier vertices.
inline std::optional<Bijection> find_graph_isomorphism(const Digraph& g, const Digraph& h) {
    if (g.size() != h.size())
        return std::nullopt;
    if (g.edges().size() != h.edges().size())
        return std::nullopt;
    return detail::GraphIsoSearch(g, h).run();
}

/// Least code over all relabelings. Brute force, so only meant for n <= 5.
inline std::uint64_t canonical_code(const Digraph& g) {
    const auto n = g.size();
    if (n > 5)
        throw TooLarge("canonical form is brute force and limited to n <= 5");
    std::vector<Element> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::uint64_t best = ~std::uint64_t{0};
    do {
        // code of relabel(g, p) without materializing it: the bit for pair
        // (x,y) of the relabeled graph is g.has_edge(p^-1(x), p^-1(y)).
        std::vector<Element> inv(n);
        for (Element v = 0; v < n; ++v)
            inv[p[v]] = v;
        std::uint64_t code = 0;
        for (Element x = 0; x < n; ++x)
            for (Element y = 0; y < n; ++y)
                if (x != y)
                    code = (code << 1) | (g.has_edge(inv[x], inv[y]) ? 1u : 0u);
        best = std::min(best, code);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

inline constexpr std::size_t max_exhaustive_vertices = 5;

/// Calls `visit(const Digraph&)` on every labeled irreflexive digraph on n
/// vertices, in increasing code order. With `dedupe`, only graphs equal to
/// their own canonical form are visited.
template <class Visit>
void for_each_digraph(std::size_t n, bool dedupe, Visit&& visit) {
    if (n > max_exhaustive_vertices)
        throw TooLarge("exhaustive enumeration is limited to n <= " +
                       std::to_string(max_exhaustive_vertices) + " (got " + std::to_string(n) +
                       ")");
    const std::uint64_t count = std::uint64_t{1} << off_diagonal_pairs(n);
    for (std::uint64_t code = 0; code < count; ++code) {
        Digraph g = digraph_from_code(n, code);
        if (dedupe && canonical_code(g) != code)
            continue;
        visit(g);
    }
}

inline std::vector<Digraph> enumerate_digraphs(std::size_t n, bool dedupe = false) {
    std::vector<Digraph> out;
    for_each_digraph(n, dedupe, [&](const Digraph& g) { out.push_back(g); });
    return out;
}

/// Uniform double in [0,1) from the top 53 bits of one 64-bit draw. Kept
/// explicit so sequences are identical across standard libraries.
inline double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform index in [0, bound).
inline std::size_t index_draw(std::mt19937_64& rng, std::size_t bound) {
    return static_cast<std::size_t>(rng() % bound);
}

/// Fisher-Yates with the explicit draws above.
inline Bijection random_permutation(std::size_t n, std::mt19937_64& rng) {
    std::vector<Element> m(n);
    std::iota(m.begin(), m.end(), 0);
    for (std::size_t i = n; i > 1; --i)
        std::swap(m[i - 1], m[index_draw(rng, i)]);
    return Bijection(std::move(m));
}

inline Digraph random_digraph(std::size_t n, double edge_probability, std::mt19937_64& rng) {
    if (!(edge_probability >= 0.0 && edge_probability <= 1.0))
        throw PreconditionViolated("edge probability must lie in [0,1]");
    Digraph g(n);
    for (Element u = 0; u < n; ++u)
        for (Element v = 0; v < n; ++v)
            if (u != v && unit_draw(rng) < edge_probability)
                g.add_edge(u, v);
    return g;
}

inline Digraph random_digraph(std::size_t n, double edge_probability, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_digraph(n, edge_probability, rng);
}

} // namespace keiso

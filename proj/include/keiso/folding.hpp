#pragma once

// Dynamical quandles, the kei Q_G of a digraph, the I_W automorphisms, and
// detection/decoding of folded keis (dynamical keis whose involution has no
// fixed points).

#include <keiso/digraph.hpp>
#include <keiso/error.hpp>
#include <keiso/magma.hpp>

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace keiso {

/// Square 0/1 matrix read as a set-valued map: contains(a, b) iff a ∈ φ(b).
class Membership {
public:
    Membership() = default;
    explicit Membership(std::size_t n, bool value = false) : n_(n), bits_(n * n, value) {}

    std::size_t size() const noexcept { return n_; }
    bool contains(Element a, Element b) const noexcept { return bits_[a * n_ + b] != 0; }
    void set(Element a, Element b, bool v) noexcept { bits_[a * n_ + b] = v; }

    friend bool operator==(const Membership&, const Membership&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> bits_;
};

namespace detail {

inline void require_permutation(std::span<const Element> tau) {
    std::vector<char> seen(tau.size(), 0);
    for (Element x : tau) {
        if (x >= tau.size() || seen[x])
            throw NotBijective("tau is not a permutation of the carrier");
        seen[x] = 1;
    }
}

/// First (a,b) in lexicographic order where φ fails to be τ-replete.
inline void require_replete(std::span<const Element> tau, const Membership& phi) {
    const auto n = static_cast<Element>(tau.size());
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b) {
            if (a == b && !phi.contains(a, a))
                throw NotReplete(a, b, "element is missing from its own set");
            if (phi.contains(a, b) != phi.contains(tau[a], b))
                throw NotReplete(a, b, "set is not closed under tau");
            if (phi.contains(a, b) != phi.contains(a, tau[b]))
                throw NotReplete(a, b, "sets of b and tau(b) differ");
        }
}

} // namespace detail

/// a*b = b if a ∈ φ(b), τ(b) otherwise. τ must be a bijection and φ
/// τ-replete; τ need not be an involution.
inline Magma derive_dynamical_quandle(std::span<const Element> tau, const Membership& phi) {
    if (phi.size() != tau.size())
        throw PreconditionViolated("tau and phi disagree on the carrier size");
    if (tau.empty())
        throw InvalidStructure("carrier must be non-empty");
    detail::require_permutation(tau);
    detail::require_replete(tau, phi);
    return Magma::tabulate(tau.size(), [&](Element a, Element b) {
        return phi.contains(a, b) ? b : tau[b];
    });
}

/// A fixed-point-free involution τ with a τ-replete φ. The invariants are
/// checked on construction.
class FoldedWitness {
public:
    FoldedWitness(std::vector<Element> tau, Membership phi)
        : tau_(std::move(tau)), phi_(std::move(phi)) {
        if (phi_.size() != tau_.size())
            throw PreconditionViolated("tau and phi disagree on the carrier size");
        detail::require_permutation(tau_);
        for (Element a = 0; a < tau_.size(); ++a) {
            if (tau_[a] == a)
                throw InvalidStructure("tau fixes " + std::to_string(a));
            if (tau_[tau_[a]] != a)
                throw InvalidStructure("tau is not an involution at " + std::to_string(a));
        }
        detail::require_replete(tau_, phi_);
    }

    std::size_t size() const noexcept { return tau_.size(); }
    const std::vector<Element>& tau() const noexcept { return tau_; }
    const Membership& phi() const noexcept { return phi_; }

    Magma derive() const { return derive_dynamical_quandle(tau_, phi_); }

    friend bool operator==(const FoldedWitness&, const FoldedWitness&) = default;

private:
    std::vector<Element> tau_;
    Membership phi_;
};

// ---------------------------------------------------------------------------
// Q_G. Vertex v contributes the twins (v,0) = 2v ("bottom") and (v,1) = 2v+1
// ("top").

inline constexpr Element kei_element(Element v, Element i) noexcept { return 2 * v + i; }
inline constexpr Element kei_vertex(Element x) noexcept { return x / 2; }
inline constexpr Element kei_level(Element x) noexcept { return x % 2; }
inline constexpr Element kei_twin(Element x) noexcept { return x ^ 1u; }

struct EncodedKei {
    Magma magma;
    Digraph graph;
};

/// τ swaps twins; (u,i) ∈ φ_G(v,j) iff u E v or u = v.
inline FoldedWitness graph_witness(const Digraph& g) {
    const auto n = static_cast<Element>(g.size());
    std::vector<Element> tau(2 * n);
    for (Element x = 0; x < 2 * n; ++x)
        tau[x] = kei_twin(x);
    Membership phi(2 * n);
    for (Element x = 0; x < 2 * n; ++x)
        for (Element y = 0; y < 2 * n; ++y) {
            const Element u = kei_vertex(x), v = kei_vertex(y);
            phi.set(x, y, u == v || g.has_edge(u, v));
        }
    return FoldedWitness(std::move(tau), std::move(phi));
}

inline EncodedKei encode_kei(const Digraph& g) {
    if (g.size() == 0)
        throw InvalidStructure("graph must have at least one vertex");
    return EncodedKei{graph_witness(g).derive(), g};
}

/// Subset of 0..n-1 as a membership mask.
inline std::vector<char> subset_mask(std::size_t n, std::span<const Element> subset) {
    std::vector<char> mask(n, 0);
    for (Element v : subset) {
        if (v >= n)
            throw PreconditionViolated("subset element " + std::to_string(v) +
                                       " is not a vertex");
        mask[v] = 1;
    }
    return mask;
}

/// I_W fixes the twins of vertices in W and swaps the twins of the others.
inline Bijection involution_IW(const Digraph& g, std::span<const Element> w) {
    const auto in_w = subset_mask(g.size(), w);
    std::vector<Element> map(2 * g.size());
    for (Element x = 0; x < map.size(); ++x)
        map[x] = in_w[kei_vertex(x)] ? x : kei_twin(x);
    return Bijection(std::move(map));
}

/// G plus a new vertex n with edges n -> w for w in W and no edges into it.
inline Digraph apex_extension(const Digraph& g, std::span<const Element> w) {
    const auto in_w = subset_mask(g.size(), w);
    const auto n = static_cast<Element>(g.size());
    Digraph out(n + 1);
    for (auto [u, v] : g.edges())
        out.add_edge(u, v);
    for (Element v = 0; v < n; ++v)
        if (in_w[v])
            out.add_edge(n, v);
    return out;
}

// ---------------------------------------------------------------------------
// Folded-kei detection

namespace detail {

class FoldedSearch {
public:
    explicit FoldedSearch(const Magma& m) : m_(m), n_(static_cast<Element>(m.size())) {}

    /// Collects witnesses into `out`, stopping after `limit` of them.
    void run(std::vector<FoldedWitness>& out, std::size_t limit) {
        if (n_ % 2 != 0)
            return;
        tau_.assign(n_, unset);
        // S_b = { a*b } \ {b} has at most one element, which is then τ(b).
        for (Element b = 0; b < n_; ++b) {
            std::optional<Element> s;
            for (Element a = 0; a < n_; ++a) {
                const Element x = m_.at(a, b);
                if (x == b)
                    continue;
                if (s && *s != x)
                    return;
                s = x;
            }
            if (!s)
                continue;
            if (!bind(b, *s))
                return;
        }
        for (Element b = 0; b < n_; ++b)
            if (tau_[b] != unset && !compatible(b, tau_[b]))
                return;
        out_ = &out;
        limit_ = limit;
        match(0);
    }

private:
    static constexpr Element unset = ~Element{0};

    bool bind(Element b, Element s) {
        if (tau_[b] != unset && tau_[b] != s)
            return false;
        if (tau_[s] != unset && tau_[s] != b)
            return false;
        tau_[b] = s;
        tau_[s] = b;
        return true;
    }

    // Pairing x with y keeps φ replete iff x and y have the same row pattern
    // and the same column pattern of the relation a*b == b.
    bool compatible(Element x, Element y) const {
        for (Element c = 0; c < n_; ++c) {
            if ((m_.at(x, c) == c) != (m_.at(y, c) == c))
                return false;
            if ((m_.at(c, x) == x) != (m_.at(c, y) == y))
                return false;
        }
        return true;
    }

    void match(Element from) {
        if (out_->size() >= limit_)
            return;
        Element x = from;
        while (x < n_ && tau_[x] != unset)
            ++x;
        if (x == n_) {
            emit();
            return;
        }
        for (Element y = x + 1; y < n_ && out_->size() < limit_; ++y) {
            if (tau_[y] != unset || !compatible(x, y))
                continue;
            tau_[x] = y;
            tau_[y] = x;
            match(x + 1);
            tau_[x] = unset;
            tau_[y] = unset;
        }
    }

    void emit() {
        Membership phi(n_);
        for (Element a = 0; a < n_; ++a)
            for (Element b = 0; b < n_; ++b)
                phi.set(a, b, m_.at(a, b) == b);
        FoldedWitness w(tau_, std::move(phi));
        if (w.derive() != m_)
            throw InternalContradiction("folded witness does not reproduce the table");
        out_->push_back(std::move(w));
    }

    const Magma& m_;
    Element n_;
    std::vector<Element> tau_;
    std::vector<FoldedWitness>* out_ = nullptr;
    std::size_t limit_ = 0;
};

inline void require_kei(const Magma& m) {
    const auto c = classify_detailed(m);
    if (!c.ladder.is_kei) {
        for (const auto* r : {&c.ld, &c.unique_left_division, &c.idempotent, &c.involutory})
            if (!r->holds)
                throw NotAKei("input is not a kei: " + r->describe());
    }
}

} // namespace detail

/// Every witness exhibiting `m` as a folded kei, in search order.
inline std::vector<FoldedWitness> detect_folded_all(const Magma& m,
                                                    std::size_t limit = SIZE_MAX) {
    detail::require_kei(m);
    std::vector<FoldedWitness> out;
    detail::FoldedSearch(m).run(out, limit);
    return out;
}

/// The first witness found: forced τ-pairs from the columns, then remaining
/// elements matched in increasing index order.
inline std::optional<FoldedWitness> detect_folded(const Magma& m) {
    auto all = detect_folded_all(m, 1);
    if (all.empty())
        return std::nullopt;
    return std::move(all.front());
}

struct DecodedGraph {
    Digraph graph;
    /// Kei isomorphism from encode_kei(graph) onto the decoded magma:
    /// (v,0) -> t_v, (v,1) -> τ(t_v).
    Bijection iso;
};

/// Recovers a graph G with Q_G isomorphic to `m`. The transversal takes the
/// smaller element of each τ-pair; vertex k is the k-th smallest of those.
/// The diagonal of φ is dropped so the graph stays irreflexive.
inline DecodedGraph decode_graph(const Magma& m, const FoldedWitness& w) {
    if (w.size() != m.size() || w.derive() != m)
        throw WitnessMismatch("witness does not derive the given table");
    const auto& tau = w.tau();
    std::vector<Element> transversal;
    for (Element a = 0; a < tau.size(); ++a)
        if (a < tau[a])
            transversal.push_back(a);
    const auto nv = static_cast<Element>(transversal.size());
    Digraph g(nv);
    for (Element u = 0; u < nv; ++u)
        for (Element v = 0; v < nv; ++v)
            if (u != v && w.phi().contains(transversal[u], transversal[v]))
                g.add_edge(u, v);
    std::vector<Element> map(m.size());
    for (Element v = 0; v < nv; ++v) {
        map[kei_element(v, 0)] = transversal[v];
        map[kei_element(v, 1)] = tau[transversal[v]];
    }
    return DecodedGraph{std::move(g), Bijection(std::move(map))};
}

} // namespace keiso

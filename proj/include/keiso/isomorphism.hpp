#pragma once

// Magma isomorphism (brute-force oracle and pruned search), the kei
// isomorphism induced by a graph isomorphism, and the converse extraction of
// a graph isomorphism from an arbitrary isomorphism Q_G -> Q_G'.

#include <keiso/digraph.hpp>
#include <keiso/error.hpp>
#include <keiso/folding.hpp>
#include <keiso/magma.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace keiso {

/// f(a*b) = f(a)*f(b) for all a, b.
inline bool is_magma_isomorphism(const Magma& m, const Magma& n, const Bijection& f) {
    if (m.size() != n.size() || f.size() != m.size())
        return false;
    const auto k = static_cast<Element>(m.size());
    for (Element a = 0; a < k; ++a)
        for (Element b = 0; b < k; ++b)
            if (f(m.at(a, b)) != n.at(f(a), f(b)))
                return false;
    return true;
}

inline constexpr std::size_t bruteforce_limit = 8;

/// Tries every bijection in lexicographic order.
inline std::optional<Bijection> magma_iso_bruteforce(const Magma& m, const Magma& n) {
    if (m.size() > bruteforce_limit || n.size() > bruteforce_limit)
        throw TooLarge("brute-force magma isomorphism is limited to order " +
                       std::to_string(bruteforce_limit));
    if (m.size() != n.size())
        return std::nullopt;
    const auto k = static_cast<Element>(m.size());
    std::vector<Element> p(k);
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (Element a = 0; a < k && ok; ++a)
            for (Element b = 0; b < k && ok; ++b)
                ok = p[m.at(a, b)] == n.at(p[a], p[b]);
        if (ok)
            return Bijection(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Element profiles. Every component is invariant under isomorphism:
//   idempotent flag, image size of m_a, fixed points of m_a,
//   cycle type of m_a (cycle lengths of its functional graph, sorted),
//   number of x with x*a = a,
//   sorted multiset of cycle types of m_b over the m_a-orbit of a.

namespace detail {

inline std::vector<std::size_t> cycle_type(std::span<const Element> f) {
    const auto n = f.size();
    std::vector<std::size_t> lengths;
    std::vector<int> state(n, 0); // 0 unseen, 1 on current path, 2 done
    std::vector<Element> path;
    for (Element s = 0; s < n; ++s) {
        if (state[s])
            continue;
        path.clear();
        Element x = s;
        while (state[x] == 0) {
            state[x] = 1;
            path.push_back(x);
            x = f[x];
        }
        if (state[x] == 1) {
            auto it = std::find(path.begin(), path.end(), x);
            lengths.push_back(static_cast<std::size_t>(path.end() - it));
        }
        for (Element y : path)
            state[y] = 2;
    }
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

using Signature = std::vector<std::size_t>;

inline void append_list(Signature& sig, const std::vector<std::size_t>& v) {
    sig.push_back(v.size());
    sig.insert(sig.end(), v.begin(), v.end());
}

inline std::vector<Signature> element_signatures(const Magma& m) {
    const auto n = static_cast<Element>(m.size());
    std::vector<std::vector<std::size_t>> types(n);
    for (Element a = 0; a < n; ++a)
        types[a] = cycle_type(m.row(a));
    std::vector<Signature> out(n);
    for (Element a = 0; a < n; ++a) {
        auto row = m.row(a);
        Signature& sig = out[a];
        sig.push_back(m.at(a, a) == a);
        std::vector<char> hit(n, 0);
        std::size_t image = 0, fixed = 0, column = 0;
        for (Element b = 0; b < n; ++b) {
            if (!hit[row[b]]++)
                ++image;
            fixed += row[b] == b;
            column += m.at(b, a) == a;
        }
        sig.push_back(image);
        sig.push_back(fixed);
        sig.push_back(column);
        append_list(sig, types[a]);

        std::vector<char> seen(n, 0);
        std::vector<std::vector<std::size_t>> orbit_types;
        for (Element x = a; !seen[x]; x = row[x]) {
            seen[x] = 1;
            orbit_types.push_back(types[x]);
        }
        std::sort(orbit_types.begin(), orbit_types.end());
        sig.push_back(orbit_types.size());
        for (const auto& t : orbit_types)
            append_list(sig, t);
    }
    return out;
}

class MagmaIsoSearch {
public:
    MagmaIsoSearch(const Magma& m, const Magma& n) : m_(m), n_(n), k_(static_cast<Element>(m.size())) {}

    std::optional<Bijection> run() {
        // Profiles become small integer classes shared by both sides.
        auto sm = element_signatures(m_);
        auto sn = element_signatures(n_);
        std::map<Signature, std::size_t> ids;
        for (const auto* side : {&sm, &sn})
            for (const auto& s : *side)
                ids.emplace(s, ids.size());
        cm_.resize(k_);
        cn_.resize(k_);
        for (Element x = 0; x < k_; ++x) {
            cm_[x] = ids.at(sm[x]);
            cn_[x] = ids.at(sn[x]);
        }
        auto a = cm_, b = cn_;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            return std::nullopt;

        fwd_.assign(k_, unset);
        bwd_.assign(k_, unset);
        if (search())
            return Bijection(fwd_);
        return std::nullopt;
    }

private:
    static constexpr Element unset = ~Element{0};

    bool search() {
        Element x = 0;
        while (x < k_ && fwd_[x] != unset)
            ++x;
        if (x == k_)
            return true;
        for (Element t = 0; t < k_; ++t) {
            if (bwd_[t] != unset || cm_[x] != cn_[t])
                continue;
            const auto mark = trail_.size();
            if (assign(x, t) && search())
                return true;
            undo(mark);
        }
        return false;
    }

    // Assigns x -> t and closes under products: for assigned x, y the value
    // f(x*y) is forced to f(x)*f(y).
    bool assign(Element x0, Element t0) {
        std::size_t head = trail_.size();
        if (!set(x0, t0))
            return false;
        while (head < trail_.size()) {
            const Element x = trail_[head++];
            const Element t = fwd_[x];
            for (std::size_t i = 0; i < trail_.size(); ++i) {
                const Element y = trail_[i];
                const Element s = fwd_[y];
                if (!force(m_.at(x, y), n_.at(t, s)) || !force(m_.at(y, x), n_.at(s, t)))
                    return false;
            }
        }
        return true;
    }

    bool force(Element z, Element w) {
        if (fwd_[z] != unset)
            return fwd_[z] == w;
        if (bwd_[w] != unset)
            return false;
        return set(z, w);
    }

    bool set(Element x, Element t) {
        if (cm_[x] != cn_[t])
            return false;
        fwd_[x] = t;
        bwd_[t] = x;
        trail_.push_back(x);
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            const Element x = trail_.back();
            trail_.pop_back();
            bwd_[fwd_[x]] = unset;
            fwd_[x] = unset;
        }
    }

    const Magma& m_;
    const Magma& n_;
    Element k_;
    std::vector<std::size_t> cm_, cn_;
    std::vector<Element> fwd_, bwd_, trail_;
};

} // namespace detail

/// Backtracking in element order over profile-compatible targets, with
/// forced extension along products. First-found result is deterministic.
inline std::optional<Bijection> magma_iso_search(const Magma& m, const Magma& n) {
    if (m.size() != n.size())
        return std::nullopt;
    return detail::MagmaIsoSearch(m, n).run();
}

// ---------------------------------------------------------------------------
// Isomorphisms between keis of graphs

/// An isomorphism Q_G -> Q_G', checked on construction.
class KeiIso {
public:
    KeiIso(Bijection map, const Digraph& g, const Digraph& gp) : map_(std::move(map)) {
        if (g.size() != gp.size() || map_.size() != 2 * g.size())
            throw InvalidIso("map size does not match the keis");
        if (!is_magma_isomorphism(encode_kei(g).magma, encode_kei(gp).magma, map_))
            throw InvalidIso("map is not a kei isomorphism");
    }

    const Bijection& map() const noexcept { return map_; }
    Element operator()(Element x) const noexcept { return map_(x); }
    Element rho_v(Element x) const noexcept { return kei_vertex(map_(x)); }
    Element rho_i(Element x) const noexcept { return kei_level(map_(x)); }

private:
    Bijection map_;
};

/// h_Q(u,i) = (h(u), i).
inline KeiIso induced_kei_iso(const Bijection& h, const Digraph& g, const Digraph& gp) {
    if (!is_graph_isomorphism(g, gp, h))
        throw NotAGraphIso("vertex map is not a graph isomorphism");
    std::vector<Element> map(2 * g.size());
    for (Element x = 0; x < map.size(); ++x)
        map[x] = kei_element(h(kei_vertex(x)), kei_level(x));
    return KeiIso(Bijection(std::move(map)), g, gp);
}

/// Fixed vertices receive an edge from every other vertex; the rest move.
struct VertexSplit {
    std::vector<Element> fixed;
    std::vector<Element> moving;
};

inline VertexSplit vertex_split(const Digraph& g) {
    const auto n = static_cast<Element>(g.size());
    const Magma q = encode_kei(g).magma;
    VertexSplit s;
    for (Element v = 0; v < n; ++v) {
        bool graph_side = true;
        for (Element u = 0; u < n && graph_side; ++u)
            graph_side = u == v || g.has_edge(u, v);
        bool kei_side = true;
        for (Element x = 0; x < 2 * n && kei_side; ++x)
            kei_side = q.at(x, kei_element(v, 0)) == kei_element(v, 0);
        if (graph_side != kei_side)
            throw InternalContradiction("fixed-point definitions disagree at vertex " +
                                        std::to_string(v));
        (graph_side ? s.fixed : s.moving).push_back(v);
    }
    return s;
}

/// Builds a graph isomorphism G -> G' from any kei isomorphism ρ.
///
/// Moving vertices: f(v) = ρ_V(v,0), which equals ρ_V(v,1).
/// Fixed vertices are walked in chains starting from the least unvisited
/// vertex v_0 with i_{v_0} = 0: (v_{k+1}, i_{v_{k+1}}) is the preimage of
/// the twin of ρ(v_k, 1 - i_{v_k}), and f(v) = ρ_V(v, i_v).
inline Bijection extract_graph_iso(const KeiIso& rho, const Digraph& g, const Digraph& gp) {
    const auto n = static_cast<Element>(g.size());
    if (rho.map().size() != 2 * n || gp.size() != n)
        throw InvalidIso("kei isomorphism does not match the graphs");
    const Bijection inv = rho.map().inverse();
    const auto split = vertex_split(g);
    const auto fixed_mask = subset_mask(n, split.fixed);

    std::vector<Element> f(n, 0);
    for (Element v : split.moving) {
        if (rho.rho_v(kei_element(v, 0)) != rho.rho_v(kei_element(v, 1)))
            throw InternalContradiction("twins of moving vertex " + std::to_string(v) +
                                        " land on different vertices");
        f[v] = rho.rho_v(kei_element(v, 0));
    }

    std::vector<int> level(n, -1);
    for (Element start : split.fixed) {
        if (level[start] >= 0)
            continue;
        level[start] = 0;
        Element cur = start;
        for (;;) {
            const Element x = rho(kei_element(cur, 1 - static_cast<Element>(level[cur])));
            const Element y = inv(kei_twin(x));
            const Element next = kei_vertex(y);
            const auto next_level = static_cast<int>(kei_level(y));
            if (!fixed_mask[next])
                throw InternalContradiction("chain left the fixed vertices at " +
                                            std::to_string(next));
            if (level[next] >= 0) {
                if (next != start || level[next] != next_level)
                    throw InternalContradiction("chain revisits vertex " + std::to_string(next) +
                                                " inconsistently");
                break;
            }
            level[next] = next_level;
            cur = next;
        }
    }
    for (Element v : split.fixed)
        f[v] = rho.rho_v(kei_element(v, static_cast<Element>(level[v])));

    std::vector<char> hit(n, 0);
    for (Element v = 0; v < n; ++v) {
        if (hit[f[v]])
            throw InternalContradiction("extracted vertex map is not injective");
        hit[f[v]] = 1;
    }
    Bijection out(std::move(f));
    if (!is_graph_isomorphism(g, gp, out))
        throw InternalContradiction("extracted vertex map is not a graph isomorphism");
    return out;
}

// ---------------------------------------------------------------------------
// Deciding both sides of the reduction

struct Verdict {
    bool graph_iso = false;
    bool kei_iso = false;
    bool agree = false;
    bool oracle_checked = false;

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct ReductionOptions {
    /// Run magma_iso_bruteforce as a cross-check when the keis have at most
    /// this many elements.
    std::size_t oracle_limit = 6;
    /// Verify returned isomorphisms and extract a graph isomorphism from the
    /// kei isomorphism.
    bool verify = true;
};

inline Verdict reduction_check(const Digraph& g, const Digraph& gp,
                               const ReductionOptions& opts = {}) {
    Verdict v;
    const auto h = find_graph_isomorphism(g, gp);
    v.graph_iso = h.has_value();
    if (g.size() != gp.size()) {
        v.kei_iso = false;
        v.agree = v.graph_iso == v.kei_iso;
        return v;
    }
    const auto q = encode_kei(g);
    const auto qp = encode_kei(gp);
    const auto rho = magma_iso_search(q.magma, qp.magma);
    v.kei_iso = rho.has_value();
    if (q.magma.size() <= opts.oracle_limit && q.magma.size() <= bruteforce_limit) {
        v.oracle_checked = true;
        if (magma_iso_bruteforce(q.magma, qp.magma).has_value() != v.kei_iso)
            throw InternalContradiction("magma search disagrees with brute force on " +
                                        graph_id(g) + " vs " + graph_id(gp));
    }
    if (opts.verify) {
        if (h && !is_graph_isomorphism(g, gp, *h))
            throw InternalContradiction("graph search returned a non-isomorphism");
        if (rho) {
            KeiIso checked(*rho, g, gp); // throws InvalidIso if the search is wrong
            extract_graph_iso(checked, g, gp);
        }
    }
    v.agree = v.graph_iso == v.kei_iso;
    return v;
}

} // namespace keiso

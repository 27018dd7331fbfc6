#pragma once

#include <keiso/error.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace keiso {

/// Elements of a finite carrier are always 0..n-1.
using Element = std::uint32_t;

/// A finite set with one binary operation, stored as a dense row-major table:
/// at(a, b) == a*b.
class Magma {
public:
    Magma() = default;

    Magma(std::size_t n, std::vector<Element> table) : n_(n), table_(std::move(table)) {
        if (n_ == 0)
            throw InvalidStructure("magma carrier must be non-empty");
        if (table_.size() != n_ * n_)
            throw InvalidStructure("magma table has " + std::to_string(table_.size()) +
                                   " entries, expected " + std::to_string(n_ * n_));
        for (std::size_t i = 0; i < table_.size(); ++i)
            if (table_[i] >= n_)
                throw InvalidStructure("entry " + std::to_string(table_[i]) + " at (" +
                                       std::to_string(i / n_) + "," + std::to_string(i % n_) +
                                       ") is outside the carrier");
    }

    static Magma from_rows(const std::vector<std::vector<Element>>& rows) {
        std::vector<Element> flat;
        flat.reserve(rows.size() * rows.size());
        for (const auto& r : rows) {
            if (r.size() != rows.size())
                throw InvalidStructure("magma table is not square");
            flat.insert(flat.end(), r.begin(), r.end());
        }
        return Magma(rows.size(), std::move(flat));
    }

    /// Tabulates `op(a, b)` over the whole carrier.
    template <class Op>
    static Magma tabulate(std::size_t n, Op&& op) {
        std::vector<Element> flat(n * n);
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b)
                flat[a * n + b] = static_cast<Element>(op(a, b));
        return Magma(n, std::move(flat));
    }

    std::size_t size() const noexcept { return n_; }
    Element at(Element a, Element b) const noexcept { return table_[a * n_ + b]; }
    std::span<const Element> row(Element a) const noexcept {
        return {table_.data() + a * n_, n_};
    }
    const std::vector<Element>& table() const noexcept { return table_; }

    friend bool operator==(const Magma&, const Magma&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Element> table_;
};

/// The trivial (right projection) table a*b = b.
inline Magma trivial_magma(std::size_t n) {
    return Magma::tabulate(n, [](Element, Element b) { return b; });
}

/// Left multiplication m_a : b -> a*b.
struct LeftMult {
    Element base = 0;
    std::vector<Element> map;

    bool is_permutation() const {
        std::vector<char> seen(map.size(), 0);
        for (Element x : map) {
            if (seen[x])
                return false;
            seen[x] = 1;
        }
        return true;
    }
};

inline LeftMult left_mult(const Magma& m, Element a) {
    auto r = m.row(a);
    return LeftMult{a, std::vector<Element>(r.begin(), r.end())};
}

/// Outcome of an exhaustive identity check. On failure `witness` holds the
/// lexicographically least violating tuple and `axiom` names the identity.
struct AxiomReport {
    bool holds = true;
    std::string axiom;
    std::vector<Element> witness;

    explicit operator bool() const noexcept { return holds; }

    static AxiomReport pass(std::string name) { return {true, std::move(name), {}}; }
    static AxiomReport fail(std::string name, std::vector<Element> w) {
        return {false, std::move(name), std::move(w)};
    }

    std::string describe() const {
        if (holds)
            return axiom + ": holds";
        std::string s = axiom + ": fails at (";
        for (std::size_t i = 0; i < witness.size(); ++i) {
            if (i)
                s += ",";
            s += std::to_string(witness[i]);
        }
        return s + ")";
    }
};

namespace axiom_names {
inline constexpr const char* ld = "left-distributive";
inline constexpr const char* unique_left_division = "unique-left-division";
inline constexpr const char* idempotent = "idempotent";
inline constexpr const char* involutory = "involutory";
} // namespace axiom_names

/// a*(b*c) = (a*b)*(a*c)
inline AxiomReport check_axiom_ld(const Magma& m) {
    const auto n = static_cast<Element>(m.size());
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c)
                if (m.at(a, m.at(b, c)) != m.at(m.at(a, b), m.at(a, c)))
                    return AxiomReport::fail(axiom_names::ld, {a, b, c});
    return AxiomReport::pass(axiom_names::ld);
}

/// Every m_a is a bijection. Witness (a, c): c is not in the image of m_a.
inline AxiomReport check_axiom_unique_left_division(const Magma& m) {
    const auto n = static_cast<Element>(m.size());
    std::vector<char> hit(n);
    for (Element a = 0; a < n; ++a) {
        std::fill(hit.begin(), hit.end(), 0);
        for (Element b = 0; b < n; ++b)
            hit[m.at(a, b)] = 1;
        for (Element c = 0; c < n; ++c)
            if (!hit[c])
                return AxiomReport::fail(axiom_names::unique_left_division, {a, c});
    }
    return AxiomReport::pass(axiom_names::unique_left_division);
}

inline AxiomReport check_axiom_idempotent(const Magma& m) {
    const auto n = static_cast<Element>(m.size());
    for (Element a = 0; a < n; ++a)
        if (m.at(a, a) != a)
            return AxiomReport::fail(axiom_names::idempotent, {a});
    return AxiomReport::pass(axiom_names::idempotent);
}

/// a*(a*b) = b
inline AxiomReport check_axiom_involutory(const Magma& m) {
    const auto n = static_cast<Element>(m.size());
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            if (m.at(a, m.at(a, b)) != b)
                return AxiomReport::fail(axiom_names::involutory, {a, b});
    return AxiomReport::pass(axiom_names::involutory);
}

/// Re-evaluates a failure witness against the table. True iff the witness
/// really exhibits a violation of the named axiom.
inline bool reproduces_violation(const Magma& m, const AxiomReport& r) {
    if (r.holds)
        return false;
    const auto& w = r.witness;
    const auto n = m.size();
    for (Element x : w)
        if (x >= n)
            return false;
    if (r.axiom == axiom_names::ld && w.size() == 3)
        return m.at(w[0], m.at(w[1], w[2])) != m.at(m.at(w[0], w[1]), m.at(w[0], w[2]));
    if (r.axiom == axiom_names::unique_left_division && w.size() == 2) {
        auto row = m.row(w[0]);
        return std::find(row.begin(), row.end(), w[1]) == row.end();
    }
    if (r.axiom == axiom_names::idempotent && w.size() == 1)
        return m.at(w[0], w[0]) != w[0];
    if (r.axiom == axiom_names::involutory && w.size() == 2)
        return m.at(w[0], m.at(w[0], w[1])) != w[1];
    return false;
}

struct Ladder {
    bool is_ld = false;
    bool is_rack = false;
    bool is_quandle = false;
    bool is_kei = false;

    friend bool operator==(const Ladder&, const Ladder&) = default;
};

/// Full per-axiom breakdown alongside the ladder.
struct Classification {
    Ladder ladder;
    AxiomReport ld, unique_left_division, idempotent, involutory;
};

inline Classification classify_detailed(const Magma& m) {
    Classification c{{},
                     check_axiom_ld(m),
                     check_axiom_unique_left_division(m),
                     check_axiom_idempotent(m),
                     check_axiom_involutory(m)};
    c.ladder.is_ld = c.ld.holds;
    c.ladder.is_rack = c.ladder.is_ld && c.unique_left_division.holds;
    c.ladder.is_quandle = c.ladder.is_rack && c.idempotent.holds;
    c.ladder.is_kei = c.ladder.is_quandle && c.involutory.holds;
    return c;
}

inline Ladder classify(const Magma& m) { return classify_detailed(m).ladder; }

/// The unique b with a*b = c, i.e. the rack's second operation.
inline Element left_division(const Magma& m, Element a, Element c) {
    std::optional<Element> found;
    const auto n = static_cast<Element>(m.size());
    std::vector<char> hit(n, 0);
    for (Element b = 0; b < n; ++b) {
        Element v = m.at(a, b);
        if (hit[v])
            throw NotARack("row " + std::to_string(a) + " is not a permutation");
        hit[v] = 1;
        if (v == c)
            found = b;
    }
    return *found;
}

// ---------------------------------------------------------------------------
// Groups

/// A finite group given by its multiplication table. Validated on construction.
class FiniteGroup {
public:
    explicit FiniteGroup(Magma table) : table_(std::move(table)) {
        const auto n = static_cast<Element>(table_.size());
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b)
                for (Element c = 0; c < n; ++c)
                    if (table_.at(a, table_.at(b, c)) != table_.at(table_.at(a, b), c))
                        throw InvalidStructure("group table is not associative at (" +
                                               std::to_string(a) + "," + std::to_string(b) +
                                               "," + std::to_string(c) + ")");
        std::optional<Element> e;
        for (Element x = 0; x < n && !e; ++x) {
            bool ok = true;
            for (Element a = 0; a < n && ok; ++a)
                ok = table_.at(x, a) == a && table_.at(a, x) == a;
            if (ok)
                e = x;
        }
        if (!e)
            throw InvalidStructure("group table has no two-sided identity");
        identity_ = *e;
        inverse_.assign(n, 0);
        for (Element a = 0; a < n; ++a) {
            bool found = false;
            for (Element b = 0; b < n && !found; ++b)
                if (table_.at(a, b) == identity_ && table_.at(b, a) == identity_) {
                    inverse_[a] = b;
                    found = true;
                }
            if (!found)
                throw InvalidStructure("element " + std::to_string(a) + " has no inverse");
        }
    }

    std::size_t order() const noexcept { return table_.size(); }
    Element mul(Element a, Element b) const noexcept { return table_.at(a, b); }
    Element identity() const noexcept { return identity_; }
    Element inverse(Element a) const noexcept { return inverse_[a]; }
    const std::vector<Element>& inverses() const noexcept { return inverse_; }
    const Magma& table() const noexcept { return table_; }

private:
    Magma table_;
    Element identity_ = 0;
    std::vector<Element> inverse_;
};

/// a*b = a b a^-1
inline Magma conjugation_quandle(const FiniteGroup& g) {
    return Magma::tabulate(g.order(), [&](Element a, Element b) {
        return g.mul(g.mul(a, b), g.inverse(a));
    });
}

// ---------------------------------------------------------------------------
// Algebras with a composition and a left-distributive operation

/// Two operation tables on one carrier: `comp` (a∘b) and `star` (a*b).
class SigmaAlgebra {
public:
    SigmaAlgebra(Magma comp, Magma star) : comp_(std::move(comp)), star_(std::move(star)) {
        if (comp_.size() != star_.size())
            throw InvalidStructure("comp and star tables differ in size");
    }

    std::size_t size() const noexcept { return comp_.size(); }
    Element comp(Element a, Element b) const noexcept { return comp_.at(a, b); }
    Element star(Element a, Element b) const noexcept { return star_.at(a, b); }
    const Magma& comp_table() const noexcept { return comp_; }
    const Magma& star_table() const noexcept { return star_; }

    friend bool operator==(const SigmaAlgebra&, const SigmaAlgebra&) = default;

private:
    Magma comp_, star_;
};

inline std::string sigma_identity_name(int k) { return "sigma-" + std::to_string(k); }

/// Checks one of the four identities:
///   1. a∘(b∘c) = (a∘b)∘c
///   2. (a∘b)*c = a*(b*c)
///   3. a*(b∘c) = (a*b)∘(a*c)
///   4. (a*b)∘a = a∘b
/// Identity 4 has only two variables, so its witness is a pair.
inline AxiomReport check_sigma_identity(const SigmaAlgebra& s, int k) {
    const auto n = static_cast<Element>(s.size());
    const auto name = sigma_identity_name(k);
    if (k == 4) {
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b)
                if (s.comp(s.star(a, b), a) != s.comp(a, b))
                    return AxiomReport::fail(name, {a, b});
        return AxiomReport::pass(name);
    }
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c) {
                bool ok = true;
                switch (k) {
                case 1: ok = s.comp(a, s.comp(b, c)) == s.comp(s.comp(a, b), c); break;
                case 2: ok = s.star(s.comp(a, b), c) == s.star(a, s.star(b, c)); break;
                case 3: ok = s.star(a, s.comp(b, c)) == s.comp(s.star(a, b), s.star(a, c)); break;
                default: throw PreconditionViolated("no such identity: " + std::to_string(k));
                }
                if (!ok)
                    return AxiomReport::fail(name, {a, b, c});
            }
    return AxiomReport::pass(name);
}

/// All four identities, in order; reports the first one violated.
inline AxiomReport check_sigma(const SigmaAlgebra& s) {
    for (int k = 1; k <= 4; ++k)
        if (auto r = check_sigma_identity(s, k); !r.holds)
            return r;
    return AxiomReport::pass("sigma");
}

/// Walks the chain a*(b*c) = (a∘b)*c = ((a*b)∘a)*c = (a*b)*(a*c) link by
/// link. Requires `s` to satisfy all four identities.
inline AxiomReport check_sigma_implies_ld(const SigmaAlgebra& s) {
    if (auto r = check_sigma(s); !r.holds)
        throw PreconditionViolated("algebra does not satisfy the identities: " + r.describe());
    const auto n = static_cast<Element>(s.size());
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c) {
                const Element v0 = s.star(a, s.star(b, c));
                const Element v1 = s.star(s.comp(a, b), c);
                const Element v2 = s.star(s.comp(s.star(a, b), a), c);
                const Element v3 = s.star(s.star(a, b), s.star(a, c));
                if (v0 != v1 || v1 != v2 || v2 != v3)
                    return AxiomReport::fail("sigma-derived-ld", {a, b, c});
            }
    return AxiomReport::pass("sigma-derived-ld");
}

/// The group with its multiplication and conjugation.
inline SigmaAlgebra group_to_sigma(const FiniteGroup& g) {
    return SigmaAlgebra(g.table(), conjugation_quandle(g));
}

} // namespace keiso

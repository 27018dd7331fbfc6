#pragma once

// Small concrete groups: cyclic, dihedral, symmetric, quaternion, products,
// and the list of all groups of order at most 8 up to isomorphism.

#include <keiso/magma.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace keiso::groups {

using Perm = std::vector<Element>;

inline FiniteGroup cyclic(std::size_t n) {
    return FiniteGroup(Magma::tabulate(n, [n](Element a, Element b) { return (a + b) % n; }));
}

inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    const auto m = h.order();
    return FiniteGroup(Magma::tabulate(g.order() * m, [&](Element a, Element b) {
        return g.mul(a / m, b / m) * m + h.mul(a % m, b % m);
    }));
}

/// Closes a set of permutations of {0..degree-1} under composition
/// (p∘q)(x) = p(q(x)). Elements are numbered in lexicographic order of their
/// images, so the identity is element 0.
inline FiniteGroup permutation_group(std::size_t degree, const std::vector<Perm>& gens) {
    Perm id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::vector<Perm> elems{id};
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : gens) {
            Perm p(degree);
            for (std::size_t x = 0; x < degree; ++x)
                p[x] = elems[i][g[x]];
            if (std::find(elems.begin(), elems.end(), p) == elems.end())
                elems.push_back(std::move(p));
        }
    std::sort(elems.begin(), elems.end());
    std::map<Perm, Element> index;
    for (std::size_t i = 0; i < elems.size(); ++i)
        index[elems[i]] = static_cast<Element>(i);
    return FiniteGroup(Magma::tabulate(elems.size(), [&](Element a, Element b) {
        Perm p(degree);
        for (std::size_t x = 0; x < degree; ++x)
            p[x] = elems[a][elems[b][x]];
        return index.at(p);
    }));
}

/// S_k with elements in lexicographic order of their image tuples.
inline FiniteGroup symmetric(std::size_t k) {
    std::vector<Perm> gens;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        Perm t(k);
        std::iota(t.begin(), t.end(), 0);
        std::swap(t[i], t[i + 1]);
        gens.push_back(t);
    }
    return permutation_group(k, gens);
}

/// Symmetries of the regular m-gon, order 2m.
inline FiniteGroup dihedral(std::size_t m) {
    Perm rot(m), refl(m);
    for (std::size_t x = 0; x < m; ++x) {
        rot[x] = static_cast<Element>((x + 1) % m);
        refl[x] = static_cast<Element>((m - x) % m);
    }
    return permutation_group(m, {rot, refl});
}

/// Q_8 = {±1, ±i, ±j, ±k}; element 2q+s stands for (-1)^s times unit q in
/// the order 1, i, j, k.
inline FiniteGroup quaternion() {
    // unit_mul[p][q] = {sign, unit} for the product of units p and q.
    static constexpr int unit_sign[4][4] = {
        {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    static constexpr int unit_prod[4][4] = {
        {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    return FiniteGroup(Magma::tabulate(8, [](Element a, Element b) {
        const Element p = a / 2, q = b / 2;
        const Element s = (a % 2 + b % 2 + unit_sign[p][q]) % 2;
        return static_cast<Element>(2 * unit_prod[p][q] + s);
    }));
}

struct NamedGroup {
    std::string name;
    FiniteGroup group;
};

/// One representative of every isomorphism class of groups of order <= 8.
inline std::vector<NamedGroup> all_groups_up_to_order_8() {
    std::vector<NamedGroup> out;
    for (std::size_t n = 1; n <= 8; ++n)
        out.push_back({"Z" + std::to_string(n), cyclic(n)});
    out.push_back({"Z2xZ2", direct_product(cyclic(2), cyclic(2))});
    out.push_back({"S3", symmetric(3)});
    out.push_back({"Z4xZ2", direct_product(cyclic(4), cyclic(2))});
    out.push_back({"Z2xZ2xZ2", direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2))});
    out.push_back({"D4", dihedral(4)});
    out.push_back({"Q8", quaternion()});
    return out;
}

} // namespace keiso::groups

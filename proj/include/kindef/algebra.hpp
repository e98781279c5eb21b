#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kindef/pbw.hpp"

namespace kindef {

// ---------------------------------------------------------------------------
// Algebra definitions as data: generators + bracket table + named invariants
// + structural metadata (Cartan splits, involutions, associated spaces).

struct CasimirDef {
    std::string name;
    Element element;
    int eigenvalue_param; // interned param id the invariant is pinned to
};

struct CartanSplit {
    std::string label;
    std::vector<std::string> p;
    std::vector<std::string> h;
    std::string pattern; // "zero" ([p,p] = 0) or "subh" ([p,p] in span h)
};

// Signed generator permutation; unlisted generators map to themselves.
struct Involution {
    std::string name;
    std::map<std::string, std::pair<std::string, int>> images;

    std::pair<std::string, int> image_of(const std::string& g) const {
        auto it = images.find(g);
        return it == images.end() ? std::make_pair(g, 1) : it->second;
    }
};

struct SpaceRecord {
    std::string label; // e.g. "spacetime", "worldlines"
    int dim = 0;
    Scalar curvature;
    int rank = 0;
};

struct AlgebraDef {
    std::string name;
    std::vector<std::string> params; // free scalar parameters, declaration order
    ParamContext defines;            // named scalar combinations (kappa1 = -lambda^2, ...)
    BasisPtr basis;
    std::vector<CasimirDef> casimirs;
    std::vector<CartanSplit> cartan;
    std::vector<Involution> involutions;
    std::vector<SpaceRecord> spaces;

    const SpaceRecord* space(const std::string& label) const {
        for (auto& s : spaces)
            if (s.label == label) return &s;
        return nullptr;
    }
    const CasimirDef* casimir(const std::string& nm) const {
        for (auto& c : casimirs)
            if (c.name == nm) return &c;
        return nullptr;
    }
    const Involution* involution(const std::string& nm) const {
        for (auto& v : involutions)
            if (v.name == nm) return &v;
        return nullptr;
    }
};

inline bool algebra_equal(const AlgebraDef& a, const AlgebraDef& b) {
    if (a.name != b.name || a.params != b.params) return false;
    if (a.basis->names() != b.basis->names()) return false;
    auto da = a.defines.all();
    auto db = b.defines.all();
    if (da.size() != db.size()) return false;
    for (size_t i = 0; i < da.size(); ++i)
        if (da[i].name != db[i].name || !(da[i].value == db[i].value)) return false;
    int n = a.basis->size();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!(a.basis->bracket(i, j) == b.basis->bracket(i, j))) return false;
    if (a.casimirs.size() != b.casimirs.size()) return false;
    for (size_t i = 0; i < a.casimirs.size(); ++i) {
        if (a.casimirs[i].name != b.casimirs[i].name) return false;
        if (!(a.casimirs[i].element == b.casimirs[i].element)) return false;
        if (param_name(a.casimirs[i].eigenvalue_param) != param_name(b.casimirs[i].eigenvalue_param))
            return false;
    }
    if (a.cartan.size() != b.cartan.size()) return false;
    for (size_t i = 0; i < a.cartan.size(); ++i) {
        auto& x = a.cartan[i];
        auto& y = b.cartan[i];
        if (x.label != y.label || x.p != y.p || x.h != y.h || x.pattern != y.pattern) return false;
    }
    if (a.involutions.size() != b.involutions.size()) return false;
    for (size_t i = 0; i < a.involutions.size(); ++i)
        if (a.involutions[i].name != b.involutions[i].name ||
            a.involutions[i].images != b.involutions[i].images)
            return false;
    if (a.spaces.size() != b.spaces.size()) return false;
    for (size_t i = 0; i < a.spaces.size(); ++i) {
        auto& x = a.spaces[i];
        auto& y = b.spaces[i];
        if (x.label != y.label || x.dim != y.dim || !(x.curvature == y.curvature) || x.rank != y.rank)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Structural checks. Failures are data, not exceptions.

struct JacobiFailure {
    std::string x, y, z;
    Element witness; // the nonzero cyclic sum
};

// Cyclic sum [[x,y],z] + [[y,z],x] + [[z,x],y] over position-ordered triples.
inline std::vector<JacobiFailure> check_jacobi(const AlgebraDef& def) {
    std::vector<JacobiFailure> fails;
    const auto& b = def.basis;
    int n = b->size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                Element s = commutator(b->bracket(i, j), Element::gen(b, k)) +
                            commutator(b->bracket(j, k), Element::gen(b, i)) +
                            commutator(b->bracket(k, i), Element::gen(b, j));
                if (!s.is_zero()) fails.push_back({b->name(i), b->name(j), b->name(k), s});
            }
    return fails;
}

struct CasimirFailure {
    std::string casimir, generator;
    Element witness; // the nonzero commutator
};

inline std::vector<CasimirFailure> check_casimirs(const AlgebraDef& def) {
    std::vector<CasimirFailure> fails;
    for (auto& c : def.casimirs)
        for (int i = 0; i < def.basis->size(); ++i) {
            Element w = commutator(c.element, Element::gen(def.basis, i));
            if (!w.is_zero()) fails.push_back({c.name, def.basis->name(i), w});
        }
    return fails;
}

struct CartanFailure {
    std::string split;
    std::string x, y;
    std::string reason; // which inclusion broke
    Element witness;
};

namespace detail {

// Does the element lie in the linear span of the listed generators (plus 0)?
inline bool in_span(const Element& e, const std::vector<int>& gens) {
    for (auto& [m, c] : e.terms()) {
        if (m.degree() != 1) return false;
        int idx = m.g.front().first;
        bool found = false;
        for (int g : gens)
            if (g == idx) found = true;
        if (!found) return false;
    }
    return true;
}

} // namespace detail

inline std::vector<CartanFailure> check_cartan(const AlgebraDef& def, const CartanSplit& split) {
    std::vector<CartanFailure> fails;
    const auto& b = def.basis;
    std::vector<int> p, h;
    for (auto& nm : split.p) p.push_back(b->require(nm));
    for (auto& nm : split.h) h.push_back(b->require(nm));
    std::set<int> seen(p.begin(), p.end());
    seen.insert(h.begin(), h.end());
    if (p.size() + h.size() != static_cast<size_t>(b->size()) ||
        seen.size() != static_cast<size_t>(b->size()))
        throw DomainError("cartan split '" + split.label + "' does not partition the generators");
    for (int x : p)
        for (int y : p) {
            if (x >= y) continue;
            const Element& e = b->bracket(x, y);
            if (split.pattern == "zero" ? !e.is_zero() : !detail::in_span(e, h))
                fails.push_back({split.label, b->name(x), b->name(y),
                                 split.pattern == "zero" ? "[p,p] = 0" : "[p,p] in h", e});
        }
    for (int x : h)
        for (int y : h) {
            if (x >= y) continue;
            const Element& e = b->bracket(x, y);
            if (!detail::in_span(e, h)) fails.push_back({split.label, b->name(x), b->name(y), "[h,h] in h", e});
        }
    for (int x : h)
        for (int y : p) {
            const Element& e = b->bracket(x, y);
            if (!detail::in_span(e, p)) fails.push_back({split.label, b->name(x), b->name(y), "[h,p] in p", e});
        }
    return fails;
}

struct InvolutionFailure {
    std::string involution;
    std::string x, y; // y empty: the map fails to square to the identity on x
    Element witness;
};

namespace detail {

inline Element apply_involution(const AlgebraDef& def, const Involution& inv, const Element& e) {
    Element r = Element::zero(def.basis);
    for (auto& [m, c] : e.terms()) {
        int sign = 1;
        GMono img;
        for (auto& [g, k] : m.g) {
            auto [nm, s] = inv.image_of(def.basis->name(g));
            if (k % 2 == 1 && s < 0) sign = -sign;
            img.g.emplace_back(def.basis->require(nm), k);
        }
        std::sort(img.g.begin(), img.g.end());
        r.add_term(img, sign < 0 ? -c : c);
    }
    return r;
}

} // namespace detail

inline std::vector<InvolutionFailure> check_involution(const AlgebraDef& def, const Involution& inv) {
    std::vector<InvolutionFailure> fails;
    const auto& b = def.basis;
    for (int i = 0; i < b->size(); ++i) {
        auto [n1, s1] = inv.image_of(b->name(i));
        auto [n2, s2] = inv.image_of(n1);
        if (n2 != b->name(i) || s1 * s2 != 1)
            fails.push_back(
                InvolutionFailure{inv.name, b->name(i), "",
                                  Element::gen(b, b->require(n2), Scalar(static_cast<long>(s1 * s2)))});
    }
    for (int i = 0; i < b->size(); ++i)
        for (int j = i + 1; j < b->size(); ++j) {
            auto [ni, si] = inv.image_of(b->name(i));
            auto [nj, sj] = inv.image_of(b->name(j));
            Element lhs = b->bracket(b->require(ni), b->require(nj)).scaled(Scalar(static_cast<long>(si * sj)));
            Element rhs = detail::apply_involution(def, inv, b->bracket(i, j));
            if (!(lhs == rhs))
                fails.push_back({inv.name, b->name(i), b->name(j), lhs - rhs});
        }
    return fails;
}

struct ContractionFailure {
    std::string x, y;
    Element parent_limit; // parent bracket with the primitive sent to zero
    Element contracted;
};

// Syntactic contraction check: deleting every primitive-proportional part of
// the parent's bracket coefficients must reproduce the contracted table on
// the generators the two algebras share by name.
inline std::vector<ContractionFailure> check_contraction(const AlgebraDef& parent,
                                                         const std::string& primitive,
                                                         const AlgebraDef& contracted) {
    int prim = Params::instance().intern(primitive);
    std::map<int, Scalar> to_zero{{prim, Scalar::zero()}};
    std::vector<ContractionFailure> fails;
    const auto& pb = parent.basis;
    const auto& cb = contracted.basis;
    for (int i = 0; i < pb->size(); ++i) {
        int ci = cb->index_of(pb->name(i));
        if (ci < 0) continue;
        for (int j = 0; j < pb->size(); ++j) {
            int cj = cb->index_of(pb->name(j));
            if (cj < 0) continue;
            Element limit =
                pb->bracket(i, j).map_coeffs([&](const Scalar& s) { return s.substitute(to_zero); });
            Element want = cb->bracket(ci, cj);
            // Compare term-by-term through generator names.
            Element lifted = lift_to(limit, cb);
            if (!(lifted == want)) fails.push_back({pb->name(i), pb->name(j), limit, want});
        }
    }
    return fails;
}

} // namespace kindef

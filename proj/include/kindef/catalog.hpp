#pragma once

// Built-in catalog of the kinematical algebras the engine works with, plus
// the contraction registry that ties them together.  Five entries are built
// from scratch (galilei, galilei-extended, poincare, nh-minus, ds); the other
// five are obtained from those by replacing a primitive parameter q with
// i*qh, which flips the sign of every q^2 coefficient while keeping all
// structural metadata intact.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "kindef/algebra.hpp"
#include "kindef/vectors.hpp"

namespace kindef {

namespace catalog_detail {

// Rebuild an element on another basis with the same generator-name order,
// substituting parameters in every coefficient.
inline Element retag(const Element& e, const BasisPtr& nb, const std::map<int, Scalar>& sub) {
    Element r = Element::zero(nb);
    for (auto& [mono, c] : e.terms()) r.add_term(mono, c.substitute(sub));
    return r;
}

struct Core {
    std::shared_ptr<LieBasis> b;
    Element H = Element();
    std::vector<Element> K, P, J;
};

// Unfrozen basis holding the rotation-covariant brackets common to every
// catalog entry: so(3) acting on J, P, K and [Ki, H] = Pi.
inline Core make_core(bool extended) {
    std::vector<std::string> names;
    if (extended) names.emplace_back("Xi");
    for (const char* n : {"H", "K1", "K2", "K3", "P1", "P2", "P3", "J1", "J2", "J3"})
        names.emplace_back(n);
    Core c;
    c.b = LieBasis::create(names);
    int off = extended ? 1 : 0;
    auto idx = [&](const std::string& base, int i) { return c.b->index_of(base + std::to_string(i)); };
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            if (i == j) continue;
            for (int k = 1; k <= 3; ++k) {
                int s = epsilon(i, j, k);
                if (s == 0) continue;
                c.b->set_bracket(idx("J", i), idx("J", j), Element::gen(c.b, idx("J", k), Scalar(static_cast<long>(s))));
                c.b->set_bracket(idx("J", i), idx("P", j), Element::gen(c.b, idx("P", k), Scalar(static_cast<long>(s))));
                c.b->set_bracket(idx("J", i), idx("K", j), Element::gen(c.b, idx("K", k), Scalar(static_cast<long>(s))));
            }
        }
    for (int i = 1; i <= 3; ++i) c.b->set_bracket(idx("K", i), off, Element::gen(c.b, idx("P", i)));
    c.H = Element::gen(c.b, off);
    return c;
}

inline void finish_vectors(Core& c) {
    c.K = vec3(c.b, "K");
    c.P = vec3(c.b, "P");
    c.J = vec3(c.b, "J");
}

inline std::vector<std::string> kvec(const std::string& base) {
    return {base + "1", base + "2", base + "3"};
}

inline std::vector<std::string> names_cat(std::initializer_list<std::vector<std::string>> parts) {
    std::vector<std::string> r;
    for (auto& p : parts) r.insert(r.end(), p.begin(), p.end());
    return r;
}

inline Involution make_involution(const std::string& name, const std::vector<std::string>& flipped) {
    Involution v;
    v.name = name;
    for (auto& g : flipped) v.images[g] = {g, -1};
    return v;
}

inline void add_common_involutions(AlgebraDef& d, bool extended) {
    // Time reversal composed with space inversion: H and P flip (and the
    // central charge when present, as forced by [Pi, Ki] = -m*Xi).
    std::vector<std::string> pt = names_cat({{"H"}, kvec("P")});
    if (extended) pt.push_back("Xi");
    d.involutions.push_back(make_involution("PT", pt));
    d.involutions.push_back(make_involution("parity", names_cat({kvec("P"), kvec("K")})));
}

inline CartanSplit split1(const std::string& pattern) {
    return CartanSplit{"split1", names_cat({{"H"}, kvec("P")}), names_cat({kvec("K"), kvec("J")}), pattern};
}

inline CartanSplit split2(const std::string& pattern, bool extended) {
    std::vector<std::string> h = extended ? names_cat({{"Xi", "H"}, kvec("J")}) : names_cat({{"H"}, kvec("J")});
    return CartanSplit{"split2", names_cat({kvec("P"), kvec("K")}), h, pattern};
}

inline void add_spaces(AlgebraDef& d, const Scalar& spacetime_curv, const Scalar& worldline_curv) {
    d.spaces.push_back(SpaceRecord{"spacetime", 4, spacetime_curv, 1});
    d.spaces.push_back(SpaceRecord{"worldlines", 6, worldline_curv, 2});
}

} // namespace catalog_detail

// ---------------------------------------------------------------------------
// Casimir formulas.
//
// The defining Casimir expressions of every catalog family, parametric in
// the basis the products are expanded on.  Which family applies is read off
// the algebra `of` itself: a central extension selects the extended triple,
// otherwise the curvature defines present (kappa1 and/or kappa2) select the
// family.  Evaluating the formulas on the algebra's own basis reproduces its
// stored Casimirs.  Evaluating them on the basis of a flat neighbour — the
// products then reorder through the flat brackets — expresses the curved
// Casimirs as elements of the flat enveloping algebra whose curvature
// dependence is explicitly polynomial, which is the form the deformation
// pipeline expands.  The distinction matters: the canonically ordered form
// stored on the curved basis has already absorbed curvature-proportional
// reordering terms and cannot be split into layers after the fact.

inline std::vector<Element> casimir_formulas(const AlgebraDef& of, const BasisPtr& on) {
    auto vec = [&](const std::string& base) {
        std::vector<Element> v;
        for (int i = 1; i <= 3; ++i) v.push_back(Element::gen(on, base + std::to_string(i)));
        return v;
    };
    Element H = Element::gen(on, "H");
    std::vector<Element> K = vec("K"), P = vec("P"), J = vec("J");
    std::vector<Element> W = wedge3(K, P);
    std::vector<Element> out;
    if (of.basis->index_of("Xi") >= 0) {
        Scalar m = Scalar::param("m");
        Element Xi = Element::gen(on, "Xi");
        std::vector<Element> S;
        for (int i = 0; i < 3; ++i)
            S.push_back((Xi * J[static_cast<size_t>(i)]).scaled(m) - W[static_cast<size_t>(i)]);
        out.push_back(Xi);
        out.push_back((Xi * H).scaled(Scalar(2) * m) - dot3(P, P));
        out.push_back(dot3(S, S));
        return out;
    }
    const DefinedParam* k1d = of.defines.find("kappa1");
    const DefinedParam* k2d = of.defines.find("kappa2");
    if (k2d) {
        const Scalar& k2 = k2d->value;
        Element W0 = dot3(J, P);
        std::vector<Element> Wv;
        for (int i = 0; i < 3; ++i)
            Wv.push_back((H * J[static_cast<size_t>(i)]).scaled(k2) + W[static_cast<size_t>(i)]);
        if (k1d) {
            const Scalar& k1 = k1d->value;
            Element JK = dot3(J, K);
            out.push_back(dot3(P, P) + (H * H).scaled(k2) +
                          (dot3(K, K) + dot3(J, J).scaled(k2)).scaled(k1));
            out.push_back(dot3(Wv, Wv) + (W0 * W0).scaled(k2) + (JK * JK).scaled(k1 * k2));
        } else {
            out.push_back(dot3(P, P) + (H * H).scaled(k2));
            out.push_back(dot3(Wv, Wv) + (W0 * W0).scaled(k2));
        }
        return out;
    }
    if (k1d) {
        out.push_back(dot3(P, P) + dot3(K, K).scaled(k1d->value));
        out.push_back(dot3(W, W));
        return out;
    }
    out.push_back(dot3(P, P));
    out.push_back(dot3(W, W));
    return out;
}

namespace catalog_detail {

inline AlgebraDef build_galilei() {
    AlgebraDef d;
    d.name = "galilei";
    d.params = {"c1", "c2"};
    Core c = make_core(false);
    c.b->freeze();
    finish_vectors(c);
    d.basis = c.b;
    auto cf = casimir_formulas(d, d.basis);
    d.casimirs.push_back(CasimirDef{"c1", cf[0], intern_param("c1")});
    d.casimirs.push_back(CasimirDef{"c2", cf[1], intern_param("c2")});
    d.cartan.push_back(split1("zero"));
    d.cartan.push_back(split2("zero", false));
    add_common_involutions(d, false);
    add_spaces(d, Scalar::zero(), Scalar::zero());
    return d;
}

inline AlgebraDef build_galilei_extended() {
    AlgebraDef d;
    d.name = "galilei-extended";
    d.params = {"m", "xi", "eint", "espin"};
    Core c = make_core(true);
    Scalar m = Scalar::param("m");
    auto idx = [&](const std::string& base, int i) { return c.b->index_of(base + std::to_string(i)); };
    for (int i = 1; i <= 3; ++i)
        c.b->set_bracket(idx("P", i), idx("K", i), Element::gen(c.b, c.b->index_of("Xi"), Scalar::zero() - m));
    c.b->freeze();
    finish_vectors(c);
    d.basis = c.b;
    auto cf = casimir_formulas(d, d.basis);
    d.casimirs.push_back(CasimirDef{"xi", cf[0], intern_param("xi")});
    d.casimirs.push_back(CasimirDef{"eint", cf[1], intern_param("eint")});
    d.casimirs.push_back(CasimirDef{"espin", cf[2], intern_param("espin")});
    d.cartan.push_back(split2("subh", true));
    add_common_involutions(d, true);
    add_spaces(d, Scalar::zero(), Scalar::zero());
    return d;
}

inline AlgebraDef build_poincare() {
    AlgebraDef d;
    d.name = "poincare";
    d.params = {"gamma", "cp1", "cp2"};
    Scalar k2 = Scalar::zero() - Scalar::param("gamma") * Scalar::param("gamma");
    d.defines.define("kappa2", k2);
    Core c = make_core(false);
    auto idx = [&](const std::string& base, int i) { return c.b->index_of(base + std::to_string(i)); };
    for (int i = 1; i <= 3; ++i)
        c.b->set_bracket(idx("P", i), idx("K", i), Element::gen(c.b, c.b->index_of("H"), k2));
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k)
                if (int s = epsilon(i, j, k))
                    c.b->set_bracket(idx("K", i), idx("K", j), Element::gen(c.b, idx("J", k), k2 * Scalar(static_cast<long>(s))));
    c.b->freeze();
    finish_vectors(c);
    d.basis = c.b;
    auto cf = casimir_formulas(d, d.basis);
    d.casimirs.push_back(CasimirDef{"cp1", cf[0], intern_param("cp1")});
    d.casimirs.push_back(CasimirDef{"cp2", cf[1], intern_param("cp2")});
    d.cartan.push_back(split1("zero"));
    d.cartan.push_back(split2("subh", false));
    add_common_involutions(d, false);
    add_spaces(d, Scalar::zero(), k2);
    return d;
}

inline AlgebraDef build_nh_minus() {
    AlgebraDef d;
    d.name = "nh-minus";
    d.params = {"lambda", "cnh1", "cnh2"};
    Scalar k1 = Scalar::zero() - Scalar::param("lambda") * Scalar::param("lambda");
    d.defines.define("kappa1", k1);
    Core c = make_core(false);
    auto idx = [&](const std::string& base, int i) { return c.b->index_of(base + std::to_string(i)); };
    for (int i = 1; i <= 3; ++i)
        c.b->set_bracket(c.b->index_of("H"), idx("P", i), Element::gen(c.b, idx("K", i), k1));
    c.b->freeze();
    finish_vectors(c);
    d.basis = c.b;
    auto cf = casimir_formulas(d, d.basis);
    d.casimirs.push_back(CasimirDef{"cnh1", cf[0], intern_param("cnh1")});
    d.casimirs.push_back(CasimirDef{"cnh2", cf[1], intern_param("cnh2")});
    d.cartan.push_back(split1("subh"));
    d.cartan.push_back(split2("zero", false));
    add_common_involutions(d, false);
    add_spaces(d, k1, Scalar::zero());
    return d;
}

inline AlgebraDef build_ds() {
    AlgebraDef d;
    d.name = "ds";
    d.params = {"gamma", "lambda", "cd1", "cd2"};
    Scalar k1 = Scalar::zero() - Scalar::param("lambda") * Scalar::param("lambda");
    Scalar k2 = Scalar::zero() - Scalar::param("gamma") * Scalar::param("gamma");
    d.defines.define("kappa1", k1);
    d.defines.define("kappa2", k2);
    Core c = make_core(false);
    auto idx = [&](const std::string& base, int i) { return c.b->index_of(base + std::to_string(i)); };
    for (int i = 1; i <= 3; ++i)
        c.b->set_bracket(idx("P", i), idx("K", i), Element::gen(c.b, c.b->index_of("H"), k2));
    for (int i = 1; i <= 3; ++i)
        c.b->set_bracket(c.b->index_of("H"), idx("P", i), Element::gen(c.b, idx("K", i), k1));
    for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k)
                if (int s = epsilon(i, j, k)) {
                    c.b->set_bracket(idx("K", i), idx("K", j), Element::gen(c.b, idx("J", k), k2 * Scalar(static_cast<long>(s))));
                    c.b->set_bracket(idx("P", i), idx("P", j), Element::gen(c.b, idx("J", k), k1 * k2 * Scalar(static_cast<long>(s))));
                }
    c.b->freeze();
    finish_vectors(c);
    d.basis = c.b;
    auto cf = casimir_formulas(d, d.basis);
    d.casimirs.push_back(CasimirDef{"cd1", cf[0], intern_param("cd1")});
    d.casimirs.push_back(CasimirDef{"cd2", cf[1], intern_param("cd2")});
    d.cartan.push_back(split1("subh"));
    d.cartan.push_back(split2("subh", false));
    add_common_involutions(d, false);
    add_spaces(d, k1, k2);
    return d;
}

// Replace primitive parameter `from` by i*`to` everywhere (brackets, defined
// combinations, Casimirs, curvatures).  Squares of `from` change sign; no odd
// power of `from` appears anywhere in the catalog, so results stay real.
inline AlgebraDef substitute_primitive(const AlgebraDef& base, const std::string& new_name,
                                       const std::string& from, const std::string& to) {
    AlgebraDef d;
    d.name = new_name;
    std::map<int, Scalar> sub{{intern_param(from), Scalar::imag_unit() * Scalar::param(to)}};
    for (auto& p : base.params) d.params.push_back(p == from ? to : p);
    for (auto& def : base.defines.all()) d.defines.define(def.name, def.value.substitute(sub));
    auto nb = LieBasis::create(base.basis->names());
    int n = base.basis->size();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Element rhs = base.basis->bracket(i, j);
            if (!rhs.is_zero()) nb->set_bracket(i, j, retag(rhs, nb, sub));
        }
    nb->freeze();
    d.basis = nb;
    for (auto& cas : base.casimirs)
        d.casimirs.push_back(CasimirDef{cas.name, retag(cas.element, nb, sub), cas.eigenvalue_param});
    d.cartan = base.cartan;
    d.involutions = base.involutions;
    for (auto& s : base.spaces)
        d.spaces.push_back(SpaceRecord{s.label, s.dim, s.curvature.substitute(sub), s.rank});
    return d;
}

} // namespace catalog_detail

inline std::vector<std::string> catalog_names() {
    return {"galilei", "galilei-extended", "poincare",  "euclidean4", "nh-minus",
            "nh-plus", "ds",               "ads",       "so5",        "so41-euclidean-chain"};
}

inline AlgebraDef catalog_get(const std::string& name) {
    using namespace catalog_detail;
    if (name == "galilei") return build_galilei();
    if (name == "galilei-extended") return build_galilei_extended();
    if (name == "poincare") return build_poincare();
    if (name == "nh-minus") return build_nh_minus();
    if (name == "ds") return build_ds();
    if (name == "euclidean4") return substitute_primitive(build_poincare(), "euclidean4", "gamma", "gammah");
    if (name == "nh-plus") return substitute_primitive(build_nh_minus(), "nh-plus", "lambda", "lambdah");
    if (name == "ads") return substitute_primitive(build_ds(), "ads", "lambda", "lambdah");
    if (name == "so5")
        return substitute_primitive(substitute_primitive(build_ds(), "so5", "lambda", "lambdah"), "so5",
                                    "gamma", "gammah");
    if (name == "so41-euclidean-chain")
        return substitute_primitive(build_ds(), "so41-euclidean-chain", "gamma", "gammah");
    throw DomainError("unknown catalog algebra '" + name + "'");
}

// A known contraction: setting `primitive` to zero in `parent` must reproduce
// the bracket table of `contracted`.
struct ContractionEdge {
    std::string parent;
    std::string primitive;
    std::string contracted;
};

inline std::vector<ContractionEdge> contraction_edges() {
    return {
        {"poincare", "gamma", "galilei"},
        {"euclidean4", "gammah", "galilei"},
        {"nh-minus", "lambda", "galilei"},
        {"nh-plus", "lambdah", "galilei"},
        {"ds", "lambda", "poincare"},
        {"ads", "lambdah", "poincare"},
        {"so5", "lambdah", "euclidean4"},
        {"so41-euclidean-chain", "lambda", "euclidean4"},
    };
}

} // namespace kindef

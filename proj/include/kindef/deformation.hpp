#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kindef/algebra.hpp"
#include "kindef/catalog.hpp"
#include "kindef/pbw.hpp"
#include "kindef/reduce.hpp"
#include "kindef/solve.hpp"

namespace kindef {

// ---------------------------------------------------------------------------
// Deformation tasks.
//
// A deformation runs from a flat algebra towards a curved one: the task is
// derived from a source/target pair by locating the unique space whose
// curvature switches on (zero in the source, nonzero in the target).  The
// target curvature must be a signed square sigma*p^2 of a single primitive
// parameter p; the space's rank fixes how many seed coefficients alpha_s
// are introduced.  The source Casimirs, pinned to their eigenvalue
// parameters, become the central relations closure residuals are reduced by.

struct DeformationTask {
    AlgebraDef source;
    AlgebraDef target;
    std::string space_label;               // space whose curvature switches on
    int primitive = -1;                    // target curvature = sign * primitive^2
    int curvature_sign = 1;
    int rank = 0;
    std::vector<int> alphas;               // seed coefficients alpha1..alphaN
    std::vector<CentralRelation> relations; // source Casimirs -> eigenvalues
    // Target Casimirs as elements of the *source* enveloping algebra with
    // explicitly polynomial curvature dependence (the defining formulas
    // evaluated through the source brackets, not the target-ordered forms).
    std::vector<Element> target_casimirs;
};

inline DeformationTask derive_deformation_task(const AlgebraDef& source,
                                               const AlgebraDef& target) {
    DeformationTask t;
    t.source = source;
    t.target = target;

    const SpaceRecord* on = nullptr;
    for (auto& ts : target.spaces) {
        const SpaceRecord* ss = source.space(ts.label);
        if (!ss || !ss->curvature.is_zero() || ts.curvature.is_zero()) continue;
        if (on)
            throw DomainError("ambiguous deformation: more than one curvature switches on "
                              "between '" + source.name + "' and '" + target.name + "'");
        on = &ts;
    }
    if (!on)
        throw DomainError("no curvature switches on between '" + source.name + "' and '" +
                          target.name + "'");
    for (auto& ts : target.spaces) {
        const SpaceRecord* ss = source.space(ts.label);
        if (ss && &ts != on && !(ss->curvature - ts.curvature).is_zero())
            throw DomainError("curvature of space '" + ts.label + "' changes between '" +
                              source.name + "' and '" + target.name +
                              "' (only one curvature may switch on)");
    }
    t.space_label = on->label;

    const Scalar& curv = on->curvature;
    bool shaped = curv.den.is_one() && curv.num.t.size() == 1;
    if (shaped) {
        auto& [m, c] = *curv.num.t.begin();
        shaped = m.e.size() == 1 && m.e.front().second == 2 && c.is_real() &&
                 (c.re == Rat(1) || c.re == Rat(-1));
        if (shaped) {
            t.primitive = m.e.front().first;
            t.curvature_sign = c.re == Rat(1) ? 1 : -1;
        }
    }
    if (!shaped)
        throw DomainError("curvature '" + curv.str() + "' of space '" + on->label +
                          "' is not a signed square of a primitive parameter");

    for (auto& n : target.basis->names())
        if (source.basis->index_of(n) < 0)
            throw DomainError("target generator '" + n + "' has no counterpart in '" +
                              source.name + "'");

    t.rank = on->rank;
    if (t.rank < 1 || t.rank > static_cast<int>(target.casimirs.size()))
        throw DomainError("space '" + on->label + "' has rank " + std::to_string(t.rank) +
                          " but '" + target.name + "' declares " +
                          std::to_string(target.casimirs.size()) + " Casimirs");
    for (int s = 1; s <= t.rank; ++s) {
        std::string nm = "alpha" + std::to_string(s);
        if (std::find(source.params.begin(), source.params.end(), nm) != source.params.end() ||
            std::find(target.params.begin(), target.params.end(), nm) != target.params.end())
            throw DomainError("seed coefficient '" + nm + "' collides with a declared parameter");
        t.alphas.push_back(intern_param(nm));
    }

    for (auto& cd : source.casimirs)
        t.relations.push_back(
            CentralRelation{cd.name, cd.element, Scalar::param(cd.eigenvalue_param)});

    t.target_casimirs = casimir_formulas(target, source.basis);
    if (t.target_casimirs.size() != target.casimirs.size())
        throw DomainError("Casimir formula count mismatch for '" + target.name + "'");
    return t;
}

// ---------------------------------------------------------------------------
// Curvature expansion of a Casimir.
//
// Rewrites every even power of the primitive through primitive^2 =
// sign * kappa (kappa a reserved fresh parameter) and splits by kappa
// power: layer k is the coefficient of kappa^k, itself free of both kappa
// and the primitive.  Odd powers of the primitive mean the element is not
// polynomial in the curvature and raise DomainError.

inline std::vector<Element> extract_kappa_expansion(const Element& casimir, int primitive,
                                                    int curvature_sign) {
    int kf = intern_param("kappaf");
    if (casimir.coefficient_params().count(kf))
        throw DomainError("element already references the reserved parameter 'kappaf'");
    Scalar image = Scalar::param(kf);
    if (curvature_sign < 0) image = Scalar(-1) * image;
    Element mapped = casimir.map_coeffs(
        [&](const Scalar& c) { return c.substitute_square(primitive, image); });
    return split_by_param_power(mapped, kf);
}

// The seed is the alpha-weighted sum of the linear curvature layers of the
// first r target Casimirs.

inline Element build_seed(const std::vector<Element>& linear_layers,
                          const std::vector<int>& alphas) {
    if (linear_layers.empty())
        throw DomainError("seed needs at least one curvature layer");
    if (linear_layers.size() != alphas.size())
        throw DomainError("seed expects " + std::to_string(linear_layers.size()) +
                          " coefficients, got " + std::to_string(alphas.size()));
    Element seed = Element::zero(linear_layers.front().basis());
    for (size_t s = 0; s < linear_layers.size(); ++s)
        seed = seed + linear_layers[s].scaled(Scalar::param(alphas[s]));
    return seed;
}

// ---------------------------------------------------------------------------
// Generator deformation: X' = X when [seed, X] = 0, else X' = [seed, X].

struct DeformedGenerators {
    std::map<std::string, Element> images;
    std::vector<std::string> unchanged; // generators commuting with the seed
};

inline DeformedGenerators deform_generators(const AlgebraDef& source, const Element& seed) {
    DeformedGenerators out;
    for (auto& n : source.basis->names()) {
        Element x = Element::gen(source.basis, n);
        Element c = commutator(seed, x);
        if (c.is_zero()) {
            out.images.emplace(n, x);
            out.unchanged.push_back(n);
        } else {
            out.images.emplace(n, std::move(c));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Closure residuals over the full target bracket table.

struct BracketRecord {
    std::string x, y;       // target pair, position order
    Element residual;       // raw closure residual, before central reduction
    Reduction reduction;    // residual reduced against the source Casimir relations
    Element final_residual; // reduced residual with the solved relations applied
    std::string status;     // "closed" | "failed" | "unsolved-constraint"
};

inline std::vector<BracketRecord> closure_residuals(const DeformationTask& t,
                                                    const std::map<std::string, Element>& gens) {
    const BasisPtr& tb = t.target.basis;
    std::vector<BracketRecord> out;
    for (int i = 0; i < tb->size(); ++i) {
        for (int j = i + 1; j < tb->size(); ++j) {
            BracketRecord r;
            r.x = tb->name(i);
            r.y = tb->name(j);
            auto xi = gens.find(r.x);
            auto yj = gens.find(r.y);
            if (xi == gens.end() || yj == gens.end())
                throw DomainError("no deformed image for generator '" +
                                  (xi == gens.end() ? r.x : r.y) + "'");
            Element expected = Element::zero(xi->second.basis());
            for (auto& [m, c] : tb->bracket(i, j).terms()) {
                if (m.degree() == 0) {
                    expected = expected + Element::unit(expected.basis()).scaled(c);
                    continue;
                }
                const std::string& gn = tb->name(m.g.front().first);
                auto img = gens.find(gn);
                if (img == gens.end())
                    throw DomainError("target bracket [" + r.x + ", " + r.y + "] references '" +
                                      gn + "' with no deformed image");
                expected = expected + img->second.scaled(c);
            }
            r.residual = commutator(xi->second, yj->second) - expected;
            out.push_back(std::move(r));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Constraint normalization.
//
// Each PBW monomial of a reduced residual contributes one scalar equation.
// The full monomial content is stripped before solving; stripped factors in
// the seed unknowns are recorded (the branch where such a factor vanishes
// collapses the seed to a degenerate deformation and is excluded), then the
// equation is made monic.  Unknown-free content (structure parameters such
// as lambda^2) is kept so inconsistent constraints stay readable.

namespace deformation_detail {

inline Scalar normalize_constraint(const Scalar& c, const std::set<int>& unknowns,
                                   std::vector<int>& assumed_nonzero) {
    Poly p = c.num;
    if (p.is_zero()) return Scalar::zero();
    if (!detail::poly_free_of(p, unknowns)) {
        PMono content = p.mono_content();
        for (auto& [id, k] : content.e)
            if (unknowns.count(id) &&
                std::find(assumed_nonzero.begin(), assumed_nonzero.end(), id) ==
                    assumed_nonzero.end())
                assumed_nonzero.push_back(id);
        if (!content.is_one()) p = p.div_mono(content);
    }
    return Scalar(p.monic());
}

inline Scalar apply_relations_soft(const Scalar& s, const SolveOutcome& o) {
    Scalar r = s;
    for (auto& rel : o.relations) {
        try {
            r = rel.squared ? r.substitute_square(rel.unknown, rel.value)
                            : r.substitute({{rel.unknown, rel.value}});
        } catch (const DomainError&) {
            // odd power under a square relation: leave the coefficient alone
        }
    }
    return r;
}

inline Element apply_relations_soft(const Element& e, const SolveOutcome& o) {
    return e.map_coeffs([&](const Scalar& c) { return apply_relations_soft(c, o); });
}

} // namespace deformation_detail

// ---------------------------------------------------------------------------
// Full pipeline.

struct DeformationResult {
    DeformationTask task;
    std::vector<std::vector<Element>> layers; // curvature layers per target Casimir
    Element seed;
    std::map<std::string, Element> deformed;
    std::vector<std::string> unchanged;     // generators commuting with the seed
    std::vector<Scalar> constraints;        // normalized closure constraints, collection order
    std::vector<int> assumed_nonzero;       // stripped seed factors (degenerate branch excluded)
    SolveOutcome solved;
    std::vector<BracketRecord> records;     // one per unordered target pair
    std::string status;                     // "closed" | "failed" | "unsolved-constraint"

    // Union of the nonzero preconditions: solver denominators plus the
    // nondegeneracy assumptions made while normalizing constraints.
    std::vector<int> preconditions() const {
        std::vector<int> out = solved.requires_nonzero;
        for (int id : assumed_nonzero)
            if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
        return out;
    }
};

inline DeformationResult run_deformation(const DeformationTask& t) {
    DeformationResult r;
    r.task = t;

    for (auto& cas : t.target_casimirs)
        r.layers.push_back(extract_kappa_expansion(cas, t.primitive, t.curvature_sign));

    std::vector<Element> linear;
    for (int s = 0; s < t.rank; ++s) {
        if (r.layers[static_cast<size_t>(s)].size() < 2)
            throw DomainError("target Casimir '" + t.target.casimirs[static_cast<size_t>(s)].name +
                              "' has no linear curvature layer");
        linear.push_back(r.layers[static_cast<size_t>(s)][1]);
    }
    r.seed = build_seed(linear, t.alphas);

    DeformedGenerators dg = deform_generators(t.source, r.seed);
    r.deformed = std::move(dg.images);
    r.unchanged = std::move(dg.unchanged);

    r.records = closure_residuals(t, r.deformed);

    CentralReducer reducer(t.source.basis, t.relations);
    std::set<int> uset(t.alphas.begin(), t.alphas.end());
    std::set<std::string> seen;
    for (auto& rec : r.records) {
        rec.reduction = reducer.reduce(rec.residual, rec.residual.degree());
        for (auto& [m, c] : rec.reduction.reduced.terms()) {
            Scalar eq = deformation_detail::normalize_constraint(c, uset, r.assumed_nonzero);
            if (eq.is_zero()) continue;
            if (seen.insert(eq.str()).second) r.constraints.push_back(eq);
        }
    }

    r.solved = solve_binomial(r.constraints, t.alphas);

    bool any_failed = false, any_open = false;
    for (auto& rec : r.records) {
        rec.final_residual = deformation_detail::apply_relations_soft(rec.reduction.reduced, r.solved);
        if (rec.final_residual.is_zero()) {
            rec.status = "closed";
            continue;
        }
        bool unknown_free_coeff = false;
        for (auto& [m, c] : rec.final_residual.terms()) {
            bool has_unknown = false;
            for (int a : t.alphas)
                if (c.degree_in(a) > 0) has_unknown = true;
            if (!has_unknown) unknown_free_coeff = true;
        }
        rec.status = unknown_free_coeff ? "failed" : "unsolved-constraint";
        (unknown_free_coeff ? any_failed : any_open) = true;
    }
    r.status = any_failed ? "failed" : (any_open ? "unsolved-constraint" : "closed");
    return r;
}

inline DeformationResult run_deformation(const AlgebraDef& source, const AlgebraDef& target) {
    return run_deformation(derive_deformation_task(source, target));
}

// ---------------------------------------------------------------------------
// Evaluation on the deformed generators (composition inside the enveloping
// algebra: each generator of e's basis is replaced, by name, with its
// deformed image and the product re-ordered).

inline Element evaluate_on_deformed(const Element& e, const std::map<std::string, Element>& gens,
                                    const BasisPtr& source) {
    return evaluate_element<Element>(
        e,
        [&](int g) {
            auto it = gens.find(e.basis()->name(g));
            if (it == gens.end())
                throw DomainError("no deformed image for generator '" + e.basis()->name(g) + "'");
            return it->second;
        },
        Element::zero(source), Element::unit(source));
}

// Central value of a target-algebra element on the deformed generators:
// evaluate, reduce against the source relations, apply the solved seed
// relations.  The result must be a scalar.

inline Scalar deformed_casimir_value(const DeformationResult& r, const Element& target_casimir) {
    Element ev = evaluate_on_deformed(target_casimir, r.deformed, r.task.source.basis);
    CentralReducer reducer(r.task.source.basis, r.task.relations);
    Reduction red = reducer.reduce(ev, ev.degree());
    Element fin = deformation_detail::apply_relations_soft(red.reduced, r.solved);
    if (!fin.is_scalar())
        throw DomainError("element does not reduce to a scalar on the deformed generators");
    return fin.scalar_part();
}

// ---------------------------------------------------------------------------
// Positive root determination.
//
// The solved relations fix the seed coefficients only up to sign (squared
// relations).  For reporting and for the observable calculus the roots are
// pinned by substituting the eigenvalues of the ordinary representation of
// the source algebra and taking the principal square root: |P| = u, |W| = w
// for the non-extended kinematics, the trivially-extended values for the
// extended one, and the massive value C1 -> -m^2/gamma^2 on the relativistic
// side.

inline std::map<std::string, Scalar> ordinary_eigenvalues(const std::string& source_name) {
    std::map<std::string, Scalar> out;
    if (source_name == "galilei") {
        out.emplace("c1", Scalar::param(intern_param("u")).pow(2));
        out.emplace("c2", Scalar::param(intern_param("w")).pow(2));
        return out;
    }
    if (source_name == "galilei-extended") return out;
    if (source_name == "poincare") {
        Scalar m = Scalar::param(intern_param("m"));
        Scalar gamma = Scalar::param(intern_param("gamma"));
        out.emplace("cp1", Scalar(-1) * m.pow(2) / gamma.pow(2));
        return out;
    }
    throw DomainError("no ordinary-representation eigenvalue table for '" + source_name + "'");
}

struct RootDetermination {
    std::map<int, Scalar> eigenvalues; // eigenvalue param -> representation value
    std::vector<Relation> roots;       // alpha = explicit value, resolution order
};

inline RootDetermination positive_roots(const DeformationResult& r) {
    RootDetermination out;
    for (auto& [n, v] : ordinary_eigenvalues(r.task.source.name))
        out.eigenvalues.emplace(intern_param(n), v);

    std::map<int, Scalar> known = out.eigenvalues;
    std::vector<Relation> pending = r.solved.relations;
    bool progress = true;
    while (progress && !pending.empty()) {
        progress = false;
        for (auto it = pending.begin(); it != pending.end(); ++it) {
            Scalar v = it->value.substitute(known);
            bool waits = false;
            for (int a : r.task.alphas)
                if (!known.count(a) && v.degree_in(a) > 0) waits = true;
            if (waits) continue;
            if (it->squared) {
                auto root = v.sqrt_exact();
                if (!root)
                    throw DomainError("no exact square root for " + param_name(it->unknown) +
                                      "^2 = " + v.str());
                known.emplace(it->unknown, *root);
                out.roots.push_back(Relation{it->unknown, false, *root});
            } else {
                known.emplace(it->unknown, v);
                out.roots.push_back(Relation{it->unknown, false, v});
            }
            pending.erase(it);
            progress = true;
            break;
        }
    }
    if (!pending.empty())
        throw DomainError("root determination could not resolve all seed coefficients");
    return out;
}

} // namespace kindef

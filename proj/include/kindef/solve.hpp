#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "kindef/scalar.hpp"

namespace kindef {

// A solved relation: unknown = value, or unknown^2 = value.
struct Relation {
    int unknown;
    bool squared;
    Scalar value;

    std::string str() const {
        return param_name(unknown) + (squared ? "^2" : "") + " = " + value.str();
    }
};

struct SolveOutcome {
    std::vector<Relation> relations;
    std::vector<Scalar> unsolved;          // raw equations, reported verbatim
    std::vector<int> requires_nonzero;     // params that must not vanish

    bool fully_solved() const { return unsolved.empty(); }

    // Apply every relation to a scalar (squared relations replace even powers).
    Scalar apply(const Scalar& s) const {
        Scalar r = s;
        for (auto& rel : relations) {
            if (rel.squared)
                r = r.substitute_square(rel.unknown, rel.value);
            else
                r = r.substitute({{rel.unknown, rel.value}});
        }
        return r;
    }
};

namespace detail {

// Normal form used for solving and deduplication: numerator polynomial with
// the monomial content in non-unknown parameters stripped, made monic.
inline Poly solver_normal_form(const Scalar& eq, const std::set<int>& unknowns) {
    Poly p = eq.num;
    if (p.is_zero()) return p;
    PMono content = p.mono_content();
    PMono strip;
    for (auto& [id, k] : content.e)
        if (!unknowns.count(id)) strip.e.emplace_back(id, k);
    if (!strip.is_one()) p = p.div_mono(strip);
    return p.monic();
}

inline bool poly_free_of(const Poly& p, const std::set<int>& unknowns) {
    for (int u : unknowns)
        if (p.degree_in(u) > 0) return false;
    return true;
}

} // namespace detail

// Sequential linear/binomial solver. Each equation must be linear in one
// unknown (with unknown-free coefficient) or of the form A*x^2 - B with A, B
// unknown-free; anything else is carried verbatim as an unsolved constraint.
inline SolveOutcome solve_binomial(const std::vector<Scalar>& equations,
                                   const std::vector<int>& unknowns) {
    SolveOutcome out;
    std::set<int> uset(unknowns.begin(), unknowns.end());

    struct Item {
        Scalar raw;
        Poly norm;
        bool active;
    };
    std::vector<Item> items;
    std::set<std::string> seen;
    for (auto& eq : equations) {
        Poly n = detail::solver_normal_form(eq, uset);
        if (n.is_zero()) continue;
        std::string key = n.str();
        if (!seen.insert(key).second) continue;
        items.push_back(Item{eq, n, true});
    }

    auto resubstitute = [&](const Relation& rel) {
        for (auto& it : items) {
            if (!it.active) continue;
            Scalar s(it.norm);
            try {
                if (rel.squared)
                    s = s.substitute_square(rel.unknown, rel.value);
                else
                    s = s.substitute({{rel.unknown, rel.value}});
            } catch (const DomainError&) {
                continue; // odd power: leave the equation as is
            }
            it.norm = detail::solver_normal_form(s, uset);
            if (it.norm.is_zero()) it.active = false;
        }
    };

    auto record_nonzero = [&](const Scalar& v) {
        for (int id : v.den.vars())
            if (!uset.count(id) &&
                std::find(out.requires_nonzero.begin(), out.requires_nonzero.end(), id) ==
                    out.requires_nonzero.end())
                out.requires_nonzero.push_back(id);
    };

    bool progress = true;
    while (progress) {
        progress = false;
        // Pass 1: equations linear in some unknown, lowest-index unknown first.
        for (int u : unknowns) {
            for (auto& it : items) {
                if (!it.active || it.norm.degree_in(u) != 1) continue;
                Poly a, b;
                for (auto& [m, c] : it.norm.t) {
                    if (m.exponent_of(u) == 1)
                        a.add_term(PMono::var(u).div_into(m), c);
                    else
                        b.add_term(m, c);
                }
                if (!detail::poly_free_of(a, uset)) continue;
                Relation rel{u, false, Scalar(-b, a)};
                record_nonzero(rel.value);
                out.relations.push_back(rel);
                it.active = false;
                resubstitute(rel);
                progress = true;
                break;
            }
            if (progress) break;
        }
        if (progress) continue;
        // Pass 2: pure binomials A*x^2 + C with A, C unknown-free.
        for (int u : unknowns) {
            for (auto& it : items) {
                if (!it.active || it.norm.degree_in(u) != 2) continue;
                Poly a, c;
                bool shape_ok = true;
                for (auto& [m, co] : it.norm.t) {
                    int k = m.exponent_of(u);
                    if (k == 2)
                        a.add_term(PMono::var(u, 2).div_into(m), co);
                    else if (k == 0)
                        c.add_term(m, co);
                    else
                        shape_ok = false;
                }
                if (!shape_ok || !detail::poly_free_of(a, uset) || !detail::poly_free_of(c, uset))
                    continue;
                Relation rel{u, true, Scalar(-c, a)};
                record_nonzero(rel.value);
                out.relations.push_back(rel);
                it.active = false;
                resubstitute(rel);
                progress = true;
                break;
            }
            if (progress) break;
        }
    }

    for (auto& it : items)
        if (it.active) out.unsolved.push_back(it.raw);
    return out;
}

} // namespace kindef

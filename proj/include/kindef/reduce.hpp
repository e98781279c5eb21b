#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kindef/pbw.hpp"

namespace kindef {

// A central element of the enveloping algebra together with the eigenvalue
// parameter it is pinned to on the chosen representation space.
struct CentralRelation {
    std::string name;
    Element casimir;
    Scalar eigenvalue;
};

struct Reduction {
    Element reduced;
    std::vector<Element> cofactors; // parallel to the relations
    bool at_bound = false;          // completion stopped at the degree cap
};

// Reduces elements modulo the two-sided ideal generated by (C_t - c_t) for
// central C_t. Division is exact and self-certifying: every call returns
// cofactors with r = sum_t q_t (C_t - c_t) + reduced, checkable by verify().
// The divisor set is grown by bounded Buchberger completion (S-polynomials
// up to a degree cap) because the raw relations need not form a confluent
// rewriting system on their own.
class CentralReducer {
  public:
    CentralReducer(BasisPtr basis, std::vector<CentralRelation> relations)
        : basis_(std::move(basis)), relations_(std::move(relations)) {
        for (auto& rel : relations_) {
            if (rel.casimir.is_zero()) throw DomainError("relation '" + rel.name + "' is zero");
            if (rel.casimir.basis().get() != basis_.get())
                throw DomainError("relation '" + rel.name + "' lives in a different basis");
            for (int i = 0; i < basis_->size(); ++i)
                if (!commutator(rel.casimir, Element::gen(basis_, i)).is_zero())
                    throw DomainError("relation '" + rel.name + "' is not central: it fails to commute with '" +
                                      basis_->name(i) + "'");
            Member m;
            m.e = rel.casimir - Element::unit(basis_, rel.eigenvalue);
            m.h.assign(relations_.size(), Element::zero(basis_));
            m.h[static_cast<size_t>(&rel - relations_.data())] = Element::unit(basis_);
            make_monic(m);
            base_deg_ = std::max(base_deg_, m.e.degree());
            g_.push_back(std::move(m));
        }
        seed_count_ = g_.size();
    }

    const BasisPtr& basis() const { return basis_; }
    const std::vector<CentralRelation>& relations() const { return relations_; }

    Reduction reduce(const Element& r, int degree_bound = -1) const {
        if (r.basis().get() != basis_.get()) throw DomainError("element lives in a different basis");
        int cap = degree_bound >= 0 ? degree_bound : std::max(r.degree(), base_deg_) + 2;
        complete_to(cap);
        Reduction out;
        out.cofactors.assign(relations_.size(), Element::zero(basis_));
        out.reduced = divide(r, &out.cofactors);
        // One bounded retry with a deeper completion if anything of degree
        // two or more survived; a second failure is reported, not hidden.
        if (out.reduced.degree() >= 2) {
            complete_to(cap + 2);
            out.cofactors.assign(relations_.size(), Element::zero(basis_));
            out.reduced = divide(r, &out.cofactors);
            if (out.reduced.degree() >= 2) out.at_bound = hit_cap_;
        }
        return out;
    }

    // Exact reconstruction check: r == sum_t q_t (C_t - c_t) + reduced.
    bool verify(const Element& r, const Reduction& red) const {
        Element acc = red.reduced;
        for (size_t t = 0; t < relations_.size(); ++t) {
            Element f = relations_[t].casimir - Element::unit(basis_, relations_[t].eigenvalue);
            acc += red.cofactors[t] * f;
        }
        return acc == r;
    }

    size_t divisor_count() const { return g_.size(); }

  private:
    struct Member {
        Element e;
        std::vector<Element> h; // e == sum_t h_t (C_t - c_t)
    };

    void make_monic(Member& m) const {
        Scalar lc = m.e.leading().second;
        Scalar inv = lc.inv();
        m.e = m.e.scaled(inv);
        for (auto& x : m.h) x = x.scaled(inv);
    }

    // Full normal form of r against the current divisor set; cofactors are
    // accumulated into *q when provided.
    Element divide(Element r, std::vector<Element>* q) const {
        long guard = 0;
        bool changed = true;
        while (changed && !r.is_zero()) {
            changed = false;
            // Scan monomials from the largest down; restart after a hit.
            for (auto it = r.terms().rbegin(); it != r.terms().rend(); ++it) {
                const GMono& m = it->first;
                for (auto& g : g_) {
                    const GMono& lm = g.e.leading().first;
                    if (!lm.divides(m)) continue;
                    if (++guard > 200000) throw LimitError("central reduction exceeded the step bound");
                    Scalar c = it->second; // g is monic
                    Element cof = Element::zero(basis_);
                    cof.add_term(lm.div_from(m), c);
                    r -= cof * g.e;
                    if (q)
                        for (size_t t = 0; t < q->size(); ++t) (*q)[t] += cof * g.h[t];
                    changed = true;
                    break;
                }
                if (changed) break;
            }
        }
        return r;
    }

    void complete_to(int cap) const {
        if (cap <= completed_cap_) return;
        bool added = true;
        while (added) {
            added = false;
            for (size_t a = 0; a < g_.size(); ++a)
                for (size_t b = a + 1; b < g_.size(); ++b) {
                    if (done_pairs_.count({a, b})) continue;
                    const GMono& ma = g_[a].e.leading().first;
                    const GMono& mb = g_[b].e.leading().first;
                    GMono lcm = mono_lcm(ma, mb);
                    if (lcm.degree() > cap) {
                        hit_cap_ = true; // pair postponed, revisited if the cap rises
                        continue;
                    }
                    done_pairs_.insert({a, b});
                    Element ca = Element::zero(basis_), cb = Element::zero(basis_);
                    ca.add_term(ma.div_from(lcm), Scalar::one());
                    cb.add_term(mb.div_from(lcm), Scalar::one());
                    Member s;
                    s.e = ca * g_[a].e - cb * g_[b].e;
                    s.h.assign(relations_.size(), Element::zero(basis_));
                    for (size_t t = 0; t < relations_.size(); ++t)
                        s.h[t] = ca * g_[a].h[t] - cb * g_[b].h[t];
                    // Reduce the S-polynomial, carrying its ideal combination.
                    std::vector<Element> q(relations_.size(), Element::zero(basis_));
                    Element rem = divide(s.e, &q);
                    if (rem.is_zero()) continue;
                    Member nm;
                    nm.e = rem;
                    nm.h.assign(relations_.size(), Element::zero(basis_));
                    for (size_t t = 0; t < relations_.size(); ++t) nm.h[t] = s.h[t] - q[t];
                    make_monic(nm);
                    g_.push_back(std::move(nm));
                    added = true;
                }
        }
        completed_cap_ = cap;
    }

    static GMono mono_lcm(const GMono& a, const GMono& b) {
        GMono r;
        size_t i = 0, j = 0;
        while (i < a.g.size() || j < b.g.size()) {
            if (j == b.g.size() || (i < a.g.size() && a.g[i].first < b.g[j].first))
                r.g.push_back(a.g[i++]);
            else if (i == a.g.size() || b.g[j].first < a.g[i].first)
                r.g.push_back(b.g[j++]);
            else {
                r.g.emplace_back(a.g[i].first, std::max(a.g[i].second, b.g[j].second));
                ++i, ++j;
            }
        }
        return r;
    }

    BasisPtr basis_;
    std::vector<CentralRelation> relations_;
    mutable std::vector<Member> g_;
    size_t seed_count_ = 0;
    int base_deg_ = 0;
    mutable int completed_cap_ = -1;
    mutable std::set<std::pair<size_t, size_t>> done_pairs_;
    mutable bool hit_cap_ = false;
};

} // namespace kindef

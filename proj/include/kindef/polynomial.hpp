#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kindef/params.hpp"
#include "kindef/rational.hpp"

namespace kindef {

// Multivariate polynomial over Gaussian rationals in the global parameter
// symbols. Canonical by construction: terms keyed by monomial in the global
// graded-lex order, never holding zero coefficients.
struct Poly {
    std::map<PMono, GRat, PMonoLess> t;

    static Poly zero() { return {}; }
    static Poly constant(GRat c) {
        Poly p;
        if (!c.is_zero()) p.t.emplace(PMono::one(), std::move(c));
        return p;
    }
    static Poly one() { return constant(GRat(1)); }
    static Poly var(int id, int k = 1) { return term(PMono::var(id, k), GRat(1)); }
    static Poly term(PMono m, GRat c) {
        Poly p;
        if (!c.is_zero()) p.t.emplace(std::move(m), std::move(c));
        return p;
    }

    bool is_zero() const { return t.empty(); }
    bool is_one() const { return t.size() == 1 && t.begin()->first.is_one() && t.begin()->second.is_one(); }
    bool is_constant() const { return t.empty() || (t.size() == 1 && t.begin()->first.is_one()); }
    GRat constant_value() const {
        if (t.empty()) return GRat(0);
        return t.begin()->second;
    }
    int total_degree() const {
        int d = 0;
        for (auto& [m, c] : t) d = std::max(d, m.degree());
        return d;
    }

    void add_term(const PMono& m, const GRat& c) {
        if (c.is_zero()) return;
        auto it = t.find(m);
        if (it == t.end()) {
            t.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        for (auto& [m, c] : o.t) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (auto& [m, c] : o.t) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    Poly operator-() const {
        Poly r;
        for (auto& [m, c] : t) r.t.emplace(m, -c);
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (auto& [ma, ca] : a.t)
            for (auto& [mb, cb] : b.t) r.add_term(ma.mul(mb), ca * cb);
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly scaled(const GRat& c) const {
        Poly r;
        if (c.is_zero()) return r;
        for (auto& [m, k] : t) r.t.emplace(m, k * c);
        return r;
    }
    Poly pow(int n) const {
        Poly r = Poly::one();
        for (int k = 0; k < n; ++k) r *= *this;
        return r;
    }

    const std::pair<const PMono, GRat>& leading() const { return *t.rbegin(); }

    std::set<int> vars() const {
        std::set<int> v;
        for (auto& [m, c] : t)
            for (auto& [id, k] : m.e) v.insert(id);
        return v;
    }
    int degree_in(int id) const {
        int d = 0;
        for (auto& [m, c] : t) d = std::max(d, m.exponent_of(id));
        return d;
    }

    // Common monomial factor of all terms.
    PMono mono_content() const {
        if (t.empty()) return PMono::one();
        PMono g = t.begin()->first;
        for (auto& [m, c] : t) {
            g = g.gcd(m);
            if (g.is_one()) break;
        }
        return g;
    }

    Poly div_mono(const PMono& m) const {
        Poly r;
        for (auto& [mm, c] : t) r.t.emplace(m.div_into(mm), c);
        return r;
    }

    Poly substitute_zero(int id) const {
        Poly r;
        for (auto& [m, c] : t)
            if (m.exponent_of(id) == 0) r.t.emplace(m, c);
        return r;
    }

    Poly monic() const {
        if (t.empty()) return *this;
        return scaled(leading().second.inv());
    }

    bool operator==(const Poly&) const = default;

    std::string str() const {
        if (t.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto it = t.rbegin(); it != t.rend(); ++it) {
            const PMono& m = it->first;
            const GRat& c = it->second;
            std::string ms = m.str();
            bool neg = false;
            std::string piece;
            if (c.is_real()) {
                Rat q = c.re;
                neg = q < 0;
                Rat mag = neg ? Rat(-q) : q;
                if (ms.empty())
                    piece = rat_str(mag);
                else if (mag == 1)
                    piece = ms;
                else
                    piece = rat_str(mag) + "*" + ms;
            } else if (c.re == 0) {
                Rat q = c.im;
                neg = q < 0;
                Rat mag = neg ? Rat(-q) : q;
                std::string base = (mag == 1) ? "i" : rat_str(mag) + "*i";
                piece = ms.empty() ? base : base + "*" + ms;
            } else {
                piece = (ms.empty() && t.size() == 1) ? c.str() : "(" + c.str() + ")";
                if (!ms.empty()) piece += "*" + ms;
            }
            if (first) {
                out += (neg ? "-" : "") + piece;
                first = false;
            } else {
                out += (neg ? " - " : " + ") + piece;
            }
        }
        return out;
    }
};

// Exact multivariate division; nullopt when b does not divide a.
inline std::optional<Poly> divexact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw DomainError("polynomial division by zero");
    Poly r = a, q;
    while (!r.is_zero()) {
        auto& [mr, cr] = r.leading();
        auto& [mb, cb] = b.leading();
        if (!mb.divides(mr)) return std::nullopt;
        PMono mq = mb.div_into(mr);
        GRat cq = cr / cb;
        q.add_term(mq, cq);
        r -= Poly::term(mq, cq) * b;
    }
    return q;
}

// Coefficient of x^d when p is read as a univariate polynomial in x.
inline Poly coeff_in(const Poly& p, int x, int d) {
    Poly r;
    for (auto& [m, c] : p.t)
        if (m.exponent_of(x) == d) r.add_term(PMono::var(x, d).div_into(m), c);
    return r;
}

// Pseudo-remainder of a by b with respect to x (deg_in(a,x) >= deg_in(b,x)).
inline Poly prem(Poly r, const Poly& b, int x) {
    int db = b.degree_in(x);
    Poly d = coeff_in(b, x, db);
    while (!r.is_zero() && r.degree_in(x) >= db) {
        int dr = r.degree_in(x);
        Poly lr = coeff_in(r, x, dr);
        r = d * r - lr * Poly::var(x, dr - db) * b;
    }
    return r;
}

Poly poly_gcd(const Poly& a, const Poly& b);

// gcd of the univariate-in-x coefficients of p.
inline Poly content_in(const Poly& p, int x) {
    Poly g = Poly::zero();
    for (int d = 0; d <= p.degree_in(x); ++d) {
        Poly c = coeff_in(p, x, d);
        if (c.is_zero()) continue;
        g = poly_gcd(g, c);
        if (c.is_constant() || (g.is_constant() && !g.is_zero())) return Poly::one();
    }
    return g;
}

// Monic polynomial gcd over the Gaussian-rational field (primitive PRS).
inline Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    if (a.is_constant() || b.is_constant()) return Poly::one();

    PMono ka = a.mono_content(), kb = b.mono_content();
    PMono km = ka.gcd(kb);
    Poly A = a.div_mono(ka), B = b.div_mono(kb);
    Poly gm = Poly::term(km, GRat(1));
    if (A.is_constant() || B.is_constant()) return gm.monic();
    if (A.monic() == B.monic()) return (gm * A).monic();

    auto va = A.vars(), vb = B.vars();
    std::set<int> all = va;
    all.insert(vb.begin(), vb.end());
    // Main variable: alphabetically last name among those present.
    int x = *all.begin();
    for (int id : all)
        if (Params::instance().less(x, id)) x = id;

    if (A.degree_in(x) == 0) return (gm * poly_gcd(A, content_in(B, x))).monic();
    if (B.degree_in(x) == 0) return (gm * poly_gcd(B, content_in(A, x))).monic();

    Poly contA = content_in(A, x), contB = content_in(B, x);
    Poly ppA = *divexact(A, contA), ppB = *divexact(B, contB);
    Poly cg = poly_gcd(contA, contB);

    Poly u = ppA, v = ppB;
    if (u.degree_in(x) < v.degree_in(x)) std::swap(u, v);
    while (!v.is_zero()) {
        if (v.degree_in(x) == 0) {
            u = Poly::one();
            break;
        }
        Poly r = prem(u, v, x);
        u = v;
        if (!r.is_zero()) {
            r = r.div_mono(r.mono_content());
            r = *divexact(r, content_in(r, x));
        }
        v = r;
    }
    return (gm * cg * u).monic();
}

} // namespace kindef

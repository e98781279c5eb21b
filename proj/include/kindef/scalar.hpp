#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kindef/polynomial.hpp"

namespace kindef {

// Canonical rational function num/den over the parameter field:
// den != 0, gcd(num, den) = 1, den monic in the global monomial order.
struct Scalar {
    Poly num = Poly::zero();
    Poly den = Poly::one();

    Scalar() = default;
    Scalar(long v) : num(Poly::constant(GRat(v))) {}
    Scalar(GRat c) : num(Poly::constant(std::move(c))) {}
    Scalar(Poly n) : num(std::move(n)) {}
    Scalar(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) { normalize(); }

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    static Scalar imag_unit() { return Scalar(GRat::imag_unit()); }
    static Scalar param(int id) { return Scalar(Poly::var(id)); }
    static Scalar param(const std::string& name) { return Scalar(Poly::var(intern_param(name))); }
    static Scalar rational(long n, long d) { return Scalar(GRat(Rat(n) / Rat(d))); }

    void normalize() {
        if (den.is_zero()) throw DomainError("division by zero");
        if (num.is_zero()) {
            den = Poly::one();
            return;
        }
        Poly g = poly_gcd(num, den);
        if (!g.is_constant()) {
            num = *divexact(num, g);
            den = *divexact(den, g);
        }
        // Make the denominator monic. Polynomial values stop here (den == 1);
        // proper fractions are then rescaled by the unique positive rational
        // that makes the numerator integer-primitive, so e.g. gamma / (2uw)
        // keeps the 2 in the denominator.
        GRat lc = den.leading().second;
        if (!lc.is_one()) {
            GRat li = lc.inv();
            num = num.scaled(li);
            den = den.scaled(li);
        }
        if (den.is_one()) return;
        Int lcm{1}, gcd{0};
        for (auto& [m, c] : num.t) {
            for (const Rat* q : {&c.re, &c.im}) {
                if (*q == 0) continue;
                Int qn = boost::multiprecision::numerator(*q);
                Int qd = boost::multiprecision::denominator(*q);
                lcm = boost::multiprecision::lcm(lcm, qd);
                gcd = boost::multiprecision::gcd(gcd, boost::multiprecision::abs(qn));
            }
        }
        if (gcd == 0) gcd = 1;
        GRat scale{Rat(lcm, gcd)};
        if (!scale.is_one()) {
            num = num.scaled(scale);
            den = den.scaled(scale);
        }
    }

    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return num == Poly::one() && den.is_one(); }
    bool is_polynomial() const { return den.is_one(); }
    bool is_rational_constant() const { return num.is_constant() && den.is_one(); }
    GRat rational_value() const { return num.constant_value(); }

    Scalar operator-() const {
        Scalar r;
        r.num = -num;
        r.den = den;
        return r;
    }
    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        return Scalar(a.num * b.den + b.num * a.den, a.den * b.den);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        return Scalar(a.num * b.den - b.num * a.den, a.den * b.den);
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return Scalar(a.num * b.num, a.den * b.den);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw DomainError("division by zero");
        return Scalar(a.num * b.den, a.den * b.num);
    }
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    Scalar inv() const { return Scalar::one() / *this; }
    Scalar pow(int n) const {
        if (n < 0) return inv().pow(-n);
        Scalar r = Scalar::one();
        for (int k = 0; k < n; ++k) r *= *this;
        return r;
    }

    bool operator==(const Scalar&) const = default;

    std::set<int> params() const {
        std::set<int> v = num.vars();
        auto d = den.vars();
        v.insert(d.begin(), d.end());
        return v;
    }

    static Scalar eval_poly(const Poly& p, const std::map<int, Scalar>& bindings) {
        Scalar r = Scalar::zero();
        for (auto& [m, c] : p.t) {
            Scalar term{c};
            for (auto& [id, k] : m.e) {
                auto it = bindings.find(id);
                Scalar base = (it == bindings.end()) ? Scalar::param(id) : it->second;
                term *= base.pow(k);
            }
            r += term;
        }
        return r;
    }

    Scalar substitute(const std::map<int, Scalar>& bindings) const {
        Scalar n = eval_poly(num, bindings);
        Scalar d = eval_poly(den, bindings);
        if (d.is_zero()) throw DomainError("substitution makes a denominator vanish");
        return n / d;
    }

    static Scalar eval_poly_square(const Poly& p, int id, const Scalar& sq) {
        Scalar r = Scalar::zero();
        for (auto& [m, c] : p.t) {
            Scalar term{c};
            for (auto& [pid, k] : m.e) {
                if (pid == id) {
                    if (k % 2 != 0)
                        throw DomainError("odd power of '" + param_name(id) +
                                          "' under square substitution (non-polynomial dependence)");
                    term *= sq.pow(k / 2);
                } else {
                    term *= Scalar::param(pid).pow(k);
                }
            }
            r += term;
        }
        return r;
    }

    // Replace id^2 -> sq everywhere; errors on odd powers of id.
    Scalar substitute_square(int id, const Scalar& sq) const {
        Scalar n = eval_poly_square(num, id, sq);
        Scalar d = eval_poly_square(den, id, sq);
        if (d.is_zero()) throw DomainError("substitution makes a denominator vanish");
        return n / d;
    }

    int degree_in(int id) const { return std::max(num.degree_in(id), den.degree_in(id)); }

    // Exact square root of scalars of the form (rational) * monomial / monomial
    // with even exponents; negative rationals yield i * sqrt(-q).
    std::optional<Scalar> sqrt_exact() const {
        if (is_zero()) return Scalar::zero();
        if (num.t.size() != 1 || den.t.size() != 1) return std::nullopt;
        auto& [mn, cn] = *num.t.begin();
        auto& [md, cd] = *den.t.begin();
        if (!cn.is_real() || !cd.is_real() || cd.re <= 0) return std::nullopt;
        for (auto& [id, k] : mn.e)
            if (k % 2 != 0) return std::nullopt;
        for (auto& [id, k] : md.e)
            if (k % 2 != 0) return std::nullopt;
        bool negative = cn.re < 0;
        Rat mag = negative ? Rat(-cn.re / cd.re) : Rat(cn.re / cd.re);
        Rat root;
        if (!perfect_square(mag, root)) return std::nullopt;
        GRat coeff = negative ? GRat(Rat(0), root) : GRat(root);
        PMono half_n, half_d;
        for (auto& [id, k] : mn.e) half_n.e.emplace_back(id, k / 2);
        for (auto& [id, k] : md.e) half_d.e.emplace_back(id, k / 2);
        return Scalar(Poly::term(half_n, coeff), Poly::term(half_d, GRat(1)));
    }

    std::string str() const {
        std::string s = num.str();
        if (!den.is_one()) s += "/(" + den.str() + ")";
        return s;
    }

    // True when the rendering is a single product (no top-level + or -),
    // so it can be placed in a product without parentheses.
    bool is_single_term() const {
        return num.t.size() <= 1 && !num.constant_value().needs_parens();
    }
};

// A named parameter alias with a fixed polynomial definition over free
// parameters (e.g. kappa1 := -lambda^2). Defined parameters never enter
// the global interner; every engine expression stores the expanded form.
struct DefinedParam {
    std::string name;
    Scalar value;
};

class ParamContext {
  public:
    void define(const std::string& name, const Scalar& value) {
        if (!valid_identifier(name)) throw DomainError("invalid parameter name '" + name + "'");
        if (find(name)) throw DomainError("duplicate defined parameter '" + name + "'");
        for (int id : value.params())
            if (find(param_name(id)))
                throw DomainError("definition of '" + name + "' uses defined parameter '" +
                                  param_name(id) + "'");
        defs_.push_back(DefinedParam{name, value});
    }

    const DefinedParam* find(const std::string& name) const {
        for (auto& d : defs_)
            if (d.name == name) return &d;
        return nullptr;
    }

    const std::vector<DefinedParam>& all() const { return defs_; }

    // Substitution front end that refuses bindings of defined parameters.
    Scalar substitute(const Scalar& s, const std::map<std::string, Scalar>& bindings) const {
        std::map<int, Scalar> by_id;
        for (auto& [name, v] : bindings) {
            if (find(name))
                throw DomainError("cannot bind defined parameter '" + name + "'");
            by_id.emplace(intern_param(name), v);
        }
        return s.substitute(by_id);
    }

  private:
    std::vector<DefinedParam> defs_;
};

} // namespace kindef

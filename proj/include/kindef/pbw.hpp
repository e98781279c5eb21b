#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kindef/scalar.hpp"

namespace kindef {

inline constexpr long kMaxRewriteSteps = 20'000'000;

struct Generator {
    std::string name;
    int inverse_of = -1; // index of the base generator when this is an adjoined inverse
    bool is_inverse() const { return inverse_of >= 0; }
};

class LieBasis;
using BasisPtr = std::shared_ptr<const LieBasis>;

// Ordered power product of generators; entries sorted ascending by basis
// position with positive exponents. A canonical monomial never contains a
// generator together with its adjoined inverse.
struct GMono {
    std::vector<std::pair<int, int>> g;

    static GMono one() { return {}; }
    static GMono gen(int idx, int k = 1) {
        GMono m;
        if (k != 0) m.g.emplace_back(idx, k);
        return m;
    }

    bool is_one() const { return g.empty(); }
    int degree() const {
        int d = 0;
        for (auto& [i, k] : g) d += k;
        return d;
    }
    int exponent_of(int idx) const {
        for (auto& [i, k] : g)
            if (i == idx) return k;
        return 0;
    }
    bool contains(int idx) const { return exponent_of(idx) > 0; }

    // Exponent-wise divisibility (commutative reading of the support).
    bool divides(const GMono& o) const {
        for (auto& [i, k] : g)
            if (o.exponent_of(i) < k) return false;
        return true;
    }
    GMono div_from(const GMono& o) const { // o / *this, requires divides(o)
        GMono r;
        for (auto& [i, k] : o.g) {
            int s = exponent_of(i);
            if (k - s > 0) r.g.emplace_back(i, k - s);
        }
        return r;
    }

    std::vector<int> letters() const {
        std::vector<int> w;
        for (auto& [i, k] : g)
            for (int c = 0; c < k; ++c) w.push_back(i);
        return w;
    }

    bool operator==(const GMono&) const = default;
};

// Graded order with ties broken lexicographically by position: among equal
// total degrees, a larger exponent on an earlier generator wins. Compatible
// with multiplication on the associated graded algebra.
struct GMonoLess {
    bool operator()(const GMono& a, const GMono& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        size_t i = 0, j = 0;
        while (i < a.g.size() && j < b.g.size()) {
            if (a.g[i].first != b.g[j].first) return a.g[i].first > b.g[j].first;
            if (a.g[i].second != b.g[j].second) return a.g[i].second < b.g[j].second;
            ++i, ++j;
        }
        return false; // equal
    }
};

class Element;
struct Alias; // named shorthand used by Element::str_with_aliases

// Immutable generator basis with the full antisymmetric bracket table.
// Brackets against an adjoined inverse are derived on demand during
// construction (with cycle detection) and are all forced before the basis
// is handed out, so a finished basis always has a total table.
class LieBasis : public std::enable_shared_from_this<LieBasis> {
  public:
    static std::shared_ptr<LieBasis> create(std::vector<std::string> names);

    int size() const { return static_cast<int>(gens_.size()); }
    const Generator& gen(int i) const { return gens_.at(static_cast<size_t>(i)); }
    const std::string& name(int i) const { return gen(i).name; }
    int index_of(const std::string& name) const {
        for (int i = 0; i < size(); ++i)
            if (gens_[static_cast<size_t>(i)].name == name) return i;
        return -1;
    }
    int require(const std::string& name) const {
        int i = index_of(name);
        if (i < 0) throw DomainError("unknown generator '" + name + "'");
        return i;
    }
    std::vector<std::string> names() const {
        std::vector<std::string> v;
        for (auto& g : gens_) v.push_back(g.name);
        return v;
    }

    const Element& bracket(int i, int j) const;
    void set_bracket(int i, int j, const Element& e); // only before freeze()

    BasisPtr adjoin_inverse(const std::string& base_name) const;

    bool frozen() const { return frozen_; }
    void freeze() const { frozen_ = true; }

  private:
    LieBasis() = default;
    void derive_inverse_bracket(int x) const;

    std::vector<Generator> gens_;
    mutable std::vector<std::vector<std::shared_ptr<Element>>> bracket_;
    mutable bool frozen_ = false;
    // Closure state while an adjoined inverse column is being derived.
    int lazy_base_ = -1;
    int lazy_inv_ = -1;
    mutable std::vector<int> lazy_state_; // 0 pending, 1 computing, 2 done
};

// Normal-ordered element of the universal enveloping algebra (PBW basis).
class Element {
  public:
    Element() = default;
    explicit Element(BasisPtr b) : basis_(std::move(b)) {}

    static Element zero(BasisPtr b) { return Element(std::move(b)); }
    static Element unit(BasisPtr b, Scalar c = Scalar::one()) {
        Element e(std::move(b));
        e.add_term(GMono::one(), c);
        return e;
    }
    static Element gen(BasisPtr b, int idx, Scalar c = Scalar::one()) {
        Element e(std::move(b));
        e.add_term(GMono::gen(idx), c);
        return e;
    }
    static Element gen(const BasisPtr& b, const std::string& name) {
        return gen(b, b->require(name));
    }

    const BasisPtr& basis() const { return basis_; }
    const std::map<GMono, Scalar, GMonoLess>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_scalar() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }
    Scalar scalar_part() const {
        auto it = t_.find(GMono::one());
        return it == t_.end() ? Scalar::zero() : it->second;
    }
    int degree() const {
        int d = 0;
        for (auto& [m, c] : t_) d = std::max(d, m.degree());
        return d;
    }
    size_t term_count() const { return t_.size(); }
    const std::pair<const GMono, Scalar>& leading() const {
        if (t_.empty()) throw DomainError("leading term of zero");
        return *t_.rbegin();
    }
    Scalar coeff(const GMono& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? Scalar::zero() : it->second;
    }

    void add_term(const GMono& m, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = t_.find(m);
        if (it == t_.end()) {
            t_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    Element& operator+=(const Element& o) {
        check_same(o);
        for (auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    Element& operator-=(const Element& o) {
        check_same(o);
        for (auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    Element operator-() const {
        Element r(basis_);
        for (auto& [m, c] : t_) r.t_.emplace(m, -c);
        return r;
    }
    Element scaled(const Scalar& c) const {
        Element r(basis_);
        if (c.is_zero()) return r;
        for (auto& [m, k] : t_) r.add_term(m, k * c);
        return r;
    }

    friend Element operator*(const Element& a, const Element& b) {
        a.check_same(b);
        Element r(a.basis_);
        for (auto& [ma, ca] : a.t_)
            for (auto& [mb, cb] : b.t_) {
                Scalar c = ca * cb;
                if (c.is_zero()) continue;
                std::vector<int> w = ma.letters();
                auto wb = mb.letters();
                w.insert(w.end(), wb.begin(), wb.end());
                r += normal_order_word(a.basis_, std::move(w)).scaled(c);
            }
        return r;
    }
    Element& operator*=(const Element& o) { return *this = *this * o; }

    friend Element commutator(const Element& a, const Element& b) { return a * b - b * a; }

    bool operator==(const Element& o) const { return t_ == o.t_; }

    Element map_coeffs(const std::function<Scalar(const Scalar&)>& f) const {
        Element r(basis_);
        for (auto& [m, c] : t_) r.add_term(m, f(c));
        return r;
    }

    std::set<int> coefficient_params() const {
        std::set<int> v;
        for (auto& [m, c] : t_) {
            auto p = c.params();
            v.insert(p.begin(), p.end());
        }
        return v;
    }

    // Rewrites a flat word of generator indices into the PBW basis.
    static Element normal_order_word(const BasisPtr& basis, std::vector<int> word);

    std::string str() const;
    std::string str_with_aliases(const std::vector<Alias>& aliases) const;

  private:
    void check_same(const Element& o) const {
        if (basis_.get() != o.basis_.get())
            throw DomainError("elements live in different bases");
    }

    BasisPtr basis_;
    std::map<GMono, Scalar, GMonoLess> t_;
};

struct Alias {
    std::string name;
    Element definition;
};

inline std::shared_ptr<LieBasis> LieBasis::create(std::vector<std::string> names) {
    if (names.empty()) throw ParseError("empty generator list");
    auto b = std::shared_ptr<LieBasis>(new LieBasis());
    for (auto& n : names) {
        if (!valid_identifier(n)) throw ParseError("invalid generator name '" + n + "'");
        if (b->index_of(n) >= 0) throw ParseError("duplicate generator name '" + n + "'");
        b->gens_.push_back(Generator{n});
    }
    size_t n = b->gens_.size();
    b->bracket_.assign(n, std::vector<std::shared_ptr<Element>>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) b->bracket_[i][j] = std::make_shared<Element>(Element::zero(b));
    return b;
}

inline const Element& LieBasis::bracket(int i, int j) const {
    const auto& p = bracket_.at(static_cast<size_t>(i)).at(static_cast<size_t>(j));
    if (!p) {
        if (lazy_inv_ < 0 || (i != lazy_inv_ && j != lazy_inv_))
            throw DomainError("bracket not available");
        int x = (i == lazy_inv_) ? j : i;
        derive_inverse_bracket(x);
        return *bracket_[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return *p;
}

inline void LieBasis::set_bracket(int i, int j, const Element& e) {
    if (frozen_) throw DomainError("basis is frozen");
    *bracket_[static_cast<size_t>(i)][static_cast<size_t>(j)] = e;
    *bracket_[static_cast<size_t>(j)][static_cast<size_t>(i)] = -e;
}

inline void LieBasis::derive_inverse_bracket(int x) const {
    int& st = lazy_state_[static_cast<size_t>(x)];
    if (st == 2) return;
    if (st == 1)
        throw DomainError("cannot adjoin the inverse of '" + name(lazy_base_) +
                          "': bracket closure cycles at '" + name(x) + "'");
    st = 1;
    BasisPtr self = shared_from_this();
    const Element& xb = bracket(x, lazy_base_); // plain table entry, always present
    Element ginv = Element::gen(self, lazy_inv_);
    // [x, g^-1] = -g^-1 [x, g] g^-1; normal ordering below may demand other
    // inverse brackets and re-enters this function through bracket().
    Element r = -(ginv * xb * ginv);
    bracket_[static_cast<size_t>(x)][static_cast<size_t>(lazy_inv_)] = std::make_shared<Element>(r);
    bracket_[static_cast<size_t>(lazy_inv_)][static_cast<size_t>(x)] = std::make_shared<Element>(-r);
    st = 2;
}

inline BasisPtr LieBasis::adjoin_inverse(const std::string& base_name) const {
    int base = require(base_name);
    if (gen(base).is_inverse()) throw DomainError("cannot invert an inverse generator");
    std::string inv_name = base_name + "inv";
    if (index_of(inv_name) >= 0) throw DomainError("generator '" + inv_name + "' already exists");

    auto nb = std::shared_ptr<LieBasis>(new LieBasis());
    auto remap = [&](int old) { return old <= base ? old : old + 1; };
    for (int i = 0; i < size(); ++i) {
        nb->gens_.push_back(gens_[static_cast<size_t>(i)]);
        if (nb->gens_.back().inverse_of >= 0) nb->gens_.back().inverse_of = remap(nb->gens_.back().inverse_of);
        if (i == base) nb->gens_.push_back(Generator{inv_name, base}); // right after its base
    }
    size_t n = nb->gens_.size();
    int inv = base + 1;
    nb->bracket_.assign(n, std::vector<std::shared_ptr<Element>>(n));

    auto lift_mono = [&](const GMono& m) {
        GMono r;
        for (auto& [g, k] : m.g) r.g.emplace_back(remap(g), k);
        return r;
    };
    for (int i = 0; i < size(); ++i)
        for (int j = 0; j < size(); ++j) {
            Element e(nb);
            for (auto& [m, c] : bracket(i, j).terms()) e.add_term(lift_mono(m), c);
            nb->bracket_[static_cast<size_t>(remap(i))][static_cast<size_t>(remap(j))] =
                std::make_shared<Element>(std::move(e));
        }
    auto set_zero = [&](int i, int j) {
        nb->bracket_[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            std::make_shared<Element>(Element::zero(nb));
    };
    set_zero(inv, inv);
    set_zero(base, inv);
    set_zero(inv, base);

    nb->lazy_base_ = base;
    nb->lazy_inv_ = inv;
    nb->lazy_state_.assign(n, 0);
    nb->lazy_state_[static_cast<size_t>(base)] = 2;
    nb->lazy_state_[static_cast<size_t>(inv)] = 2;
    for (int x = 0; x < static_cast<int>(n); ++x)
        if (x != base && x != inv) nb->derive_inverse_bracket(x);
    nb->freeze();
    return nb;
}

inline Element Element::normal_order_word(const BasisPtr& basis, std::vector<int> word) {
    Element out(basis);
    struct Item {
        std::vector<int> w;
        Scalar c;
        size_t start;
    };
    std::vector<Item> stack;
    stack.push_back(Item{std::move(word), Scalar::one(), 0});
    long steps = 0;
    const LieBasis& B = *basis;

    while (!stack.empty()) {
        Item it = std::move(stack.back());
        stack.pop_back();
        auto& w = it.w;
        size_t i = it.start;
        while (i + 1 < w.size()) {
            if (++steps > kMaxRewriteSteps) throw LimitError("normal ordering exceeded the step bound");
            int a = w[i], b = w[i + 1];
            const Generator& ga = B.gen(a);
            const Generator& gb = B.gen(b);
            if (ga.inverse_of == b || gb.inverse_of == a) {
                w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
                i = i > 0 ? i - 1 : 0;
                continue;
            }
            if (a > b) {
                // w = ... a b ... -> ... b a ... + ... [a, b] ...
                const Element& br = B.bracket(a, b);
                for (auto& [m, c] : br.terms()) {
                    std::vector<int> nw(w.begin(), w.begin() + static_cast<long>(i));
                    auto mid = m.letters();
                    nw.insert(nw.end(), mid.begin(), mid.end());
                    nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 2, w.end());
                    stack.push_back(Item{std::move(nw), it.c * c, i > 0 ? i - 1 : 0});
                }
                std::swap(w[i], w[i + 1]);
                i = i > 0 ? i - 1 : 0;
                continue;
            }
            ++i;
        }
        GMono m;
        for (int g : w) {
            if (!m.g.empty() && m.g.back().first == g)
                m.g.back().second++;
            else
                m.g.emplace_back(g, 1);
        }
        out.add_term(m, it.c);
    }
    return out;
}

namespace detail {

inline bool scalar_renders_negative(const Scalar& c) {
    if (c.num.is_zero()) return false;
    const GRat& lead = c.num.leading().second;
    return (lead.is_real() && lead.re < 0) || (lead.re == 0 && lead.im < 0);
}

inline void append_term(std::string& out, bool& first, Scalar c, const std::string& body) {
    bool neg = scalar_renders_negative(c);
    if (neg) c = -c;
    std::string cs;
    if (c.is_one() && !body.empty())
        cs = "";
    else if (c.is_single_term())
        cs = c.str();
    else
        cs = "(" + c.str() + ")";
    std::string piece = cs.empty() ? body : (body.empty() ? cs : cs + "*" + body);
    if (first) {
        out += (neg ? "-" : "") + piece;
        first = false;
    } else {
        out += (neg ? " - " : " + ") + piece;
    }
}

} // namespace detail

inline std::string Element::str() const {
    if (t_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        std::string body;
        for (auto& [g, k] : it->first.g) {
            if (!body.empty()) body += "*";
            body += basis_->name(g);
            if (k > 1) body += "^" + std::to_string(k);
        }
        detail::append_term(out, first, it->second, body);
    }
    return out;
}

inline std::string Element::str_with_aliases(const std::vector<Alias>& aliases) const {
    if (t_.empty()) return "0";
    struct Piece {
        GMono cof;
        Scalar c;
        std::string alias;
    };
    std::vector<Piece> pieces;
    Element rest = *this;
    Element collected = Element::zero(basis_);
    // Greedy: match the leading monomial of each alias definition inside the
    // leading monomial of the remainder; keep a piece only if it strictly
    // lowers the leading monomial.
    while (!rest.is_zero()) {
        bool progress = false;
        GMono lm = rest.leading().first;
        Scalar lc = rest.leading().second;
        for (auto& al : aliases) {
            if (al.definition.is_zero()) continue;
            const GMono& am = al.definition.leading().first;
            if (!am.divides(lm)) continue;
            Scalar c = lc / al.definition.leading().second;
            Element cof_el(basis_);
            cof_el.add_term(am.div_from(lm), Scalar::one());
            Element sub = (cof_el * al.definition).scaled(c);
            Element next = rest - sub;
            if (!next.is_zero() && !GMonoLess{}(next.leading().first, lm)) continue;
            rest = std::move(next);
            collected += sub;
            pieces.push_back(Piece{am.div_from(lm), c, al.name});
            progress = true;
            break;
        }
        if (!progress) break;
    }
    if (!(collected + rest == *this)) return str(); // re-expansion check failed
    std::string out;
    bool first = true;
    for (auto& p : pieces) {
        std::string body;
        for (auto& [g, k] : p.cof.g) {
            if (!body.empty()) body += "*";
            body += basis_->name(g);
            if (k > 1) body += "^" + std::to_string(k);
        }
        if (!body.empty()) body += "*";
        body += p.alias;
        detail::append_term(out, first, p.c, body);
    }
    for (auto it = rest.terms().rbegin(); it != rest.terms().rend(); ++it) {
        std::string body;
        for (auto& [g, k] : it->first.g) {
            if (!body.empty()) body += "*";
            body += basis_->name(g);
            if (k > 1) body += "^" + std::to_string(k);
        }
        detail::append_term(out, first, it->second, body);
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Generic evaluation through generator images in any unital algebra A
// supporting operator*, operator+, and scaled(Scalar).

template <class A, class F>
A evaluate_element(const Element& e, F&& img, A zero, A one) {
    A acc = std::move(zero);
    for (auto& [m, c] : e.terms()) {
        A term = one;
        for (auto& [g, k] : m.g)
            for (int i = 0; i < k; ++i) term = term * img(g);
        acc = acc + term.scaled(c);
    }
    return acc;
}

// Transfer an element onto another basis by generator name.
inline Element lift_to(const Element& e, const BasisPtr& target) {
    return evaluate_element<Element>(
        e, [&](int g) { return Element::gen(target, e.basis()->name(g)); }, Element::zero(target),
        Element::unit(target));
}

// Split an element into layers of a parameter power: e = sum_k param^k * layer[k].
// The parameter must not occur in any coefficient denominator.
inline std::vector<Element> split_by_param_power(const Element& e, int param) {
    std::vector<Element> layers;
    auto ensure = [&](size_t k) {
        while (layers.size() <= k) layers.push_back(Element::zero(e.basis()));
    };
    ensure(0);
    for (auto& [m, c] : e.terms()) {
        if (c.den.degree_in(param) > 0)
            throw DomainError("non-polynomial dependence on '" + param_name(param) + "'");
        for (auto& [pm, pc] : c.num.t) {
            int k = pm.exponent_of(param);
            PMono rest = PMono::var(param, k).div_into(pm);
            ensure(static_cast<size_t>(k));
            layers[static_cast<size_t>(k)].add_term(m, Scalar(Poly::term(rest, pc), c.den));
        }
    }
    return layers;
}

} // namespace kindef

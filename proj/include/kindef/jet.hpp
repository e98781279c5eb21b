#pragma once

// Numeric spot checks for the momentum-space realizations.
//
// A jet is a truncated Taylor expansion at a random rational base point p0,
// with coefficients in Q(i)[w0]/(w0^2 - v0) where v0 = p0.p0 + mc0^2 — the
// square root that omega takes at the base point, adjoined exactly.  All
// parameters are bound to random rationals, derivatives act on Taylor
// coefficients, and coefficient functions are evaluated by truncated series
// division.  The path shares only the stored operator data with the symbolic
// calculus (no Leibniz expansion, no fraction cancellation), so agreement
// between the two is evidence rather than a tautology.  Draws come from a
// seeded generator and are reproducible across platforms.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "kindef/reps.hpp"

namespace kindef {

// ---------------------------------------------------------------------------
// The value ring at the base point: x + y*w0 with w0^2 = v0.

struct JetPoint {
    std::array<Scalar, 3> p0; // rational base point, nonzero
    Scalar mc0;               // the mass scale, bound to a rational
    Scalar v0;                // p0.p0 + mc0^2
};

struct QOmega {
    Scalar x, y;

    static QOmega of(const Scalar& s) { return QOmega{s, Scalar::zero()}; }
    static QOmega root() { return QOmega{Scalar::zero(), Scalar::one()}; } // w0 itself
    bool is_zero() const { return x.is_zero() && y.is_zero(); }

    friend QOmega operator+(const QOmega& a, const QOmega& b) { return {a.x + b.x, a.y + b.y}; }
    friend QOmega operator-(const QOmega& a, const QOmega& b) { return {a.x - b.x, a.y - b.y}; }
    friend bool operator==(const QOmega& a, const QOmega& b) { return (a - b).is_zero(); }
};

inline QOmega qmul(const QOmega& a, const QOmega& b, const JetPoint& pt) {
    return {a.x * b.x + (a.y * b.y) * pt.v0, a.x * b.y + a.y * b.x};
}

inline QOmega qinv(const QOmega& a, const JetPoint& pt) {
    Scalar d = a.x * a.x - (a.y * a.y) * pt.v0;
    if (d.is_zero()) throw DomainError("jet base point hit a zero divisor; pick another point");
    Scalar di = d.inv();
    return {a.x * di, (Scalar::zero() - a.y) * di};
}

// ---------------------------------------------------------------------------
// Jets: coefficients are valid for |alpha| <= order, and every operation
// tracks how far the result can still be trusted.

struct Jet {
    using MIdx = std::array<int, 3>;

    int order = 0;
    std::map<MIdx, QOmega> c;

    static Jet zero(int order) { return Jet{order, {}}; }
    static Jet constant(const QOmega& v, int order) {
        Jet j{order, {}};
        if (!v.is_zero()) j.c.emplace(MIdx{0, 0, 0}, v);
        return j;
    }

    void add(const MIdx& m, const QOmega& v) {
        if (v.is_zero()) return;
        auto [it, fresh] = c.emplace(m, v);
        if (!fresh) {
            it->second = it->second + v;
            if (it->second.is_zero()) c.erase(it);
        }
    }
    QOmega at(const MIdx& m) const {
        auto it = c.find(m);
        return it == c.end() ? QOmega::of(Scalar::zero()) : it->second;
    }
    bool is_zero() const { return c.empty(); }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r{std::min(a.order, b.order), {}};
        for (auto& [m, v] : a.c)
            if (m[0] + m[1] + m[2] <= r.order) r.add(m, v);
        for (auto& [m, v] : b.c)
            if (m[0] + m[1] + m[2] <= r.order) r.add(m, v);
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet r{std::min(a.order, b.order), {}};
        for (auto& [m, v] : a.c)
            if (m[0] + m[1] + m[2] <= r.order) r.add(m, v);
        for (auto& [m, v] : b.c)
            if (m[0] + m[1] + m[2] <= r.order) r.add(m, QOmega::of(Scalar::zero()) - v);
        return r;
    }

    // Agreement on every coefficient both sides can vouch for.
    friend bool operator==(const Jet& a, const Jet& b) {
        int n = std::min(a.order, b.order);
        Jet d = a - b;
        for (auto& [m, v] : d.c)
            if (m[0] + m[1] + m[2] <= n && !v.is_zero()) return false;
        return true;
    }

    // One order is consumed per derivative; running out is a usage error.
    Jet derivative(int i) const { // i in 1..3
        if (order < 1) throw DomainError("jet order exhausted; start from a higher-order jet");
        Jet r{order - 1, {}};
        for (auto& [m, v] : c) {
            int e = m[static_cast<size_t>(i - 1)];
            if (e == 0) continue;
            MIdx n = m;
            n[static_cast<size_t>(i - 1)] = e - 1;
            if (n[0] + n[1] + n[2] <= r.order) r.add(n, QOmega{v.x * Scalar(e), v.y * Scalar(e)});
        }
        return r;
    }
};

inline Jet jet_mul(const Jet& a, const Jet& b, const JetPoint& pt) {
    Jet r{std::min(a.order, b.order), {}};
    for (auto& [ma, va] : a.c) {
        if (ma[0] + ma[1] + ma[2] > r.order) continue;
        for (auto& [mb, vb] : b.c) {
            Jet::MIdx m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]};
            if (m[0] + m[1] + m[2] > r.order) continue;
            r.add(m, qmul(va, vb, pt));
        }
    }
    return r;
}

inline Jet jet_scale(const Jet& a, const QOmega& v, const JetPoint& pt) {
    Jet r{a.order, {}};
    for (auto& [m, w] : a.c) r.add(m, qmul(v, w, pt));
    return r;
}

// Series inverse: f = c0 (1 + n) with n nilpotent to the truncation order.
inline Jet jet_inv(const Jet& a, const JetPoint& pt) {
    QOmega g = qinv(a.at({0, 0, 0}), pt);
    Jet u = Jet::constant(QOmega::of(Scalar::one()), a.order) - jet_scale(a, g, pt);
    Jet acc = Jet::constant(QOmega::of(Scalar::one()), a.order);
    Jet pow = u;
    for (int k = 1; k <= a.order && !pow.is_zero(); ++k) {
        acc = acc + pow;
        pow = jet_mul(pow, u, pt);
    }
    return jet_scale(acc, g, pt);
}

// p_i as a jet around the base point.
inline Jet jet_var(const JetPoint& pt, int i, int order) { // i in 1..3
    Jet j = Jet::constant(QOmega::of(pt.p0[static_cast<size_t>(i - 1)]), order);
    if (order >= 1) {
        Jet::MIdx m{0, 0, 0};
        m[static_cast<size_t>(i - 1)] = 1;
        j.add(m, QOmega::of(Scalar::one()));
    }
    return j;
}

// omega as a jet: the square root of p.p + mc0^2 whose value at the base
// point is w0, via the binomial series v0^{1/2} (1 + h)^{1/2}.
inline Jet jet_omega(const JetPoint& pt, int order) {
    Jet rho = Jet::constant(QOmega::of(pt.mc0 * pt.mc0), order);
    for (int i = 1; i <= 3; ++i) {
        Jet p = jet_var(pt, i, order);
        rho = rho + jet_mul(p, p, pt);
    }
    Jet h = jet_scale(rho, QOmega::of(pt.v0.inv()), pt) -
            Jet::constant(QOmega::of(Scalar::one()), order);
    Jet acc = Jet::constant(QOmega::of(Scalar::one()), order);
    Jet pow = h;
    Scalar coeff = Scalar::one();
    for (int k = 1; k <= order && !pow.is_zero(); ++k) {
        coeff = coeff * Scalar::rational(3 - 2 * k, 2 * k); // binom(1/2,k)/binom(1/2,k-1)
        acc = acc + jet_scale(pow, QOmega::of(coeff), pt);
        pow = jet_mul(pow, h, pt);
    }
    return jet_scale(acc, QOmega::root(), pt);
}

// ---------------------------------------------------------------------------
// Evaluation of stored operator data at the point.

// A coefficient function as a jet: numerator term by term, then the
// denominator factors by series division.
inline Jet coeff_jet(const CoeffFn& f, const JetPoint& pt,
                     const std::map<int, Scalar>& par, int order) {
    Jet om = jet_omega(pt, order);
    Jet out = Jet::zero(order);
    std::array<std::vector<Jet>, 4> powers; // cached p_i^k and omega^k
    for (int i = 0; i < 4; ++i)
        powers[static_cast<size_t>(i)].push_back(Jet::constant(QOmega::of(Scalar::one()), order));
    auto power = [&](int i, int k) -> const Jet& {
        auto& cache = powers[static_cast<size_t>(i)];
        while (static_cast<int>(cache.size()) <= k) {
            Jet base = i < 3 ? jet_var(pt, i + 1, order) : om;
            cache.push_back(jet_mul(cache.back(), base, pt));
        }
        return cache[static_cast<size_t>(k)];
    };
    for (auto& [m, c] : f.num.t) {
        Jet term = Jet::constant(QOmega::of(c.substitute(par)), order);
        for (int i = 0; i < 4; ++i)
            if (m[static_cast<size_t>(i)] > 0)
                term = jet_mul(term, power(i, m[static_cast<size_t>(i)]), pt);
        out = out + term;
    }
    if (f.dw > 0) out = jet_mul(out, jet_inv(power(3, f.dw), pt), pt);
    if (f.dmu > 0) {
        Jet mc_om = om + Jet::constant(QOmega::of(pt.mc0), order);
        Jet den = mc_om;
        for (int k = 1; k < f.dmu; ++k) den = jet_mul(den, mc_om, pt);
        out = jet_mul(out, jet_inv(den, pt), pt);
    }
    return out;
}

// Apply an operator to a spinor of jets.
inline std::vector<Jet> apply_diffop(const DiffOp& d, const std::vector<Jet>& psi,
                                     const JetPoint& pt, const std::map<int, Scalar>& par) {
    int order = psi.at(0).order;
    std::vector<Jet> out(psi.size(), Jet::zero(order - d.max_order()));
    for (auto& [alpha, mat] : d.terms) {
        std::vector<Jet> dpsi = psi;
        for (int i = 1; i <= 3; ++i)
            for (int k = 0; k < alpha[static_cast<size_t>(i - 1)]; ++k)
                for (auto& j : dpsi) j = j.derivative(i);
        for (int r = 0; r < mat.dim; ++r)
            for (int c = 0; c < mat.dim; ++c) {
                const CoeffFn& f = mat.at(r, c);
                if (f.is_zero()) continue;
                out[static_cast<size_t>(r)] =
                    out[static_cast<size_t>(r)] +
                    jet_mul(coeff_jet(f, pt, par, order), dpsi[static_cast<size_t>(c)], pt);
            }
    }
    return out;
}

// Apply an enveloping-algebra element through the generator images, factor by
// factor and numerically throughout — no symbolic composition is involved.
inline std::vector<Jet> apply_element_numeric(const Element& e, const Rep& rep,
                                              const std::vector<Jet>& psi, const JetPoint& pt,
                                              const std::map<int, Scalar>& par) {
    int order = psi.at(0).order;
    std::vector<Jet> out(psi.size(), Jet::zero(order));
    for (auto& [mono, coeff] : e.terms()) {
        std::vector<Jet> cur = psi;
        for (size_t f = mono.g.size(); f-- > 0;) {
            auto& [gen, pow] = mono.g[f];
            auto img = rep.images.find(e.basis()->name(gen));
            if (img == rep.images.end())
                throw DomainError("no representation image for generator '" +
                                  e.basis()->name(gen) + "'");
            for (int k = 0; k < pow; ++k) cur = apply_diffop(img->second, cur, pt, par);
        }
        QOmega v = QOmega::of(coeff.substitute(par));
        for (size_t r = 0; r < out.size(); ++r)
            out[r] = out[r] + jet_scale(cur[r], v, pt);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Seeded draws, reproducible across platforms (no library distributions).

struct JetRng {
    std::mt19937_64 eng;

    explicit JetRng(std::uint64_t seed) : eng(seed) {}

    long pick(long lo, long hi) {
        return lo + static_cast<long>(eng() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Scalar rational() { return Scalar::rational(pick(-9, 9), pick(1, 9)); }
    Scalar nonzero() {
        long n = 0;
        while (n == 0) n = pick(-9, 9);
        return Scalar::rational(n, pick(1, 9));
    }
    Scalar positive() { return Scalar::rational(pick(1, 9), pick(1, 9)); }
};

struct JetEnv {
    JetPoint pt;
    std::map<int, Scalar> par; // every symbolic parameter -> rational value
};

inline JetEnv make_jet_env(JetRng& rng, const Rep& rep) {
    JetEnv env;
    for (const char* name : {"m", "a", "gamma", "lambda", "lambdah"})
        env.par.emplace(intern_param(name), rng.positive());
    for (auto& p : env.pt.p0) p = rng.nonzero();
    env.pt.mc0 = rep.ctx->mc.substitute(env.par);
    env.pt.v0 = env.pt.mc0 * env.pt.mc0;
    for (auto& p : env.pt.p0) env.pt.v0 = env.pt.v0 + p * p;
    return env;
}

inline std::vector<Jet> random_spinor(JetRng& rng, int dim, int order) {
    std::vector<Jet> psi;
    for (int r = 0; r < dim; ++r) {
        Jet j = Jet::zero(order);
        for (int n = 0; n < 2 * order + 1; ++n) {
            Jet::MIdx m{0, 0, 0};
            int total = static_cast<int>(rng.pick(0, order));
            for (int i = 0; i < 3 && total > 0; ++i) {
                m[static_cast<size_t>(i)] = static_cast<int>(rng.pick(0, total));
                total -= m[static_cast<size_t>(i)];
            }
            j.add(m, QOmega::of(rng.rational()));
        }
        psi.push_back(j);
    }
    return psi;
}

// ---------------------------------------------------------------------------
// The spot checks proper.

struct SpotReport {
    std::uint64_t seed = 0;
    int checked = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

// Re-check bracket identities numerically on `pairs` random generator pairs
// (all pairs when pairs <= 0): [X, Y] applied to a random polynomial spinor
// must match the image of the bracket element, coefficient by coefficient.
inline SpotReport spot_check_rep(const Rep& rep, std::uint64_t seed, int pairs = 8) {
    SpotReport report;
    report.seed = seed;
    JetRng rng(seed);
    JetEnv env = make_jet_env(rng, rep);
    int dim = rep.twice_s + 1;
    std::vector<Jet> psi = random_spinor(rng, dim, 3);

    const BasisPtr& b = rep.algebra.basis;
    std::vector<std::pair<int, int>> all;
    for (int i = 0; i < b->size(); ++i)
        for (int j = i + 1; j < b->size(); ++j) all.emplace_back(i, j);
    for (size_t i = all.size(); i > 1; --i) // Fisher-Yates, seeded
        std::swap(all[i - 1], all[static_cast<size_t>(rng.pick(0, static_cast<long>(i) - 1))]);
    size_t take = pairs <= 0 ? all.size() : std::min(all.size(), static_cast<size_t>(pairs));

    for (size_t n = 0; n < take; ++n) {
        const std::string x = b->gen(all[n].first).name, y = b->gen(all[n].second).name;
        std::vector<Jet> yp = apply_diffop(rep.images.at(y), psi, env.pt, env.par);
        std::vector<Jet> xp = apply_diffop(rep.images.at(x), psi, env.pt, env.par);
        std::vector<Jet> xyp = apply_diffop(rep.images.at(x), yp, env.pt, env.par);
        std::vector<Jet> yxp = apply_diffop(rep.images.at(y), xp, env.pt, env.par);
        std::vector<Jet> lhs(xyp.size(), Jet::zero(0));
        for (size_t r = 0; r < lhs.size(); ++r) lhs[r] = xyp[r] - yxp[r];
        std::vector<Jet> rhs = apply_element_numeric(
            commutator(Element::gen(b, x), Element::gen(b, y)), rep, psi, env.pt, env.par);
        ++report.checked;
        for (size_t r = 0; r < lhs.size(); ++r)
            if (!(lhs[r] == rhs[r])) {
                report.failures.push_back("[" + x + ", " + y + "] component " +
                                          std::to_string(r + 1));
                break;
            }
    }
    return report;
}

// Numeric check that an element acts as the given scalar: its image applied
// to a random spinor must equal value * spinor at the base point.
inline bool spot_check_scalar_action(const Rep& rep, const Element& element, const Scalar& value,
                                     std::uint64_t seed) {
    JetRng rng(seed);
    JetEnv env = make_jet_env(rng, rep);
    int degree = 0;
    for (auto& [mono, c] : element.terms()) {
        int d = 0;
        for (auto& [gen, pow] : mono.g) d += pow;
        degree = std::max(degree, d);
    }
    std::vector<Jet> psi = random_spinor(rng, rep.twice_s + 1, degree);
    std::vector<Jet> lhs = apply_element_numeric(element, rep, psi, env.pt, env.par);
    QOmega v = QOmega::of(value.substitute(env.par));
    for (size_t r = 0; r < psi.size(); ++r)
        if (!(lhs[r] == jet_scale(psi[r], v, env.pt))) return false;
    return true;
}

} // namespace kindef

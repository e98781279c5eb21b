#pragma once

// Differential operators on momentum space.  Coefficients live in the
// rational-function field in p1, p2, p3 and the on-shell radical omega,
// reduced by
//
//     omega^2 = p^2 + mc^2        (mc held in a shared parameter context),
//
// with denominators restricted to powers of omega and (mc + omega) — exactly
// the shapes the representation displays and their derivatives produce.  An
// operator is a finite sum of matrix coefficients composed with partial
// derivatives in p; the canonical form keeps derivatives rightmost and merges
// terms by (multi-index, matrix slot).  Composition uses the Leibniz rule
// together with d(omega)/dp_i = p_i/omega.

#include <array>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kindef/pbw.hpp"
#include "kindef/spin.hpp"

namespace kindef {

// Shared parameter context: fixes mc and thereby the reduction rule for
// omega^2.  Operators from different contexts do not mix.
struct PPoly;

struct OmegaCtx {
    Scalar mc;  // the mass scale in front of omega^2 = p^2 + mc^2
    Scalar mc2; // cached square
    std::shared_ptr<const PPoly> rho; // p^2 + mc^2, cached for the hot paths
    std::shared_ptr<const PPoly> psq; // p^2
};

using OmegaCtxPtr = std::shared_ptr<const OmegaCtx>;

namespace diffop_detail {

inline void check_ctx(const OmegaCtxPtr& a, const OmegaCtxPtr& b) {
    if (a.get() == b.get()) return;
    if (!a || !b || !(a->mc - b->mc).is_zero()) throw DomainError("parameter context mismatch");
}

inline long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

} // namespace diffop_detail

// ---------------------------------------------------------------------------
// Polynomials in p1, p2, p3, omega with scalar coefficients; the omega degree
// is kept <= 1 by the reduction rule.

struct PPoly {
    // exponents (p1, p2, p3, omega); descending order puts the lead first
    using Mono = std::array<int, 4>;
    std::map<Mono, Scalar, std::greater<Mono>> t;

    static PPoly zero() { return PPoly{}; }
    static PPoly constant(const Scalar& c) {
        PPoly p;
        if (!c.is_zero()) p.t.emplace(Mono{0, 0, 0, 0}, c);
        return p;
    }
    static PPoly var(int i) { // 0..2 -> p_{i+1}, 3 -> omega
        PPoly p;
        Mono m{0, 0, 0, 0};
        m[static_cast<size_t>(i)] = 1;
        p.t.emplace(m, Scalar::one());
        return p;
    }

    bool is_zero() const { return t.empty(); }
    void add_term(const Mono& m, const Scalar& c) {
        auto [it, fresh] = t.emplace(m, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) t.erase(it);
        }
    }

    friend PPoly operator+(const PPoly& a, const PPoly& b) {
        PPoly r = a;
        for (auto& [m, c] : b.t) r.add_term(m, c);
        return r;
    }
    friend PPoly operator-(const PPoly& a, const PPoly& b) {
        PPoly r = a;
        for (auto& [m, c] : b.t) r.add_term(m, Scalar::zero() - c);
        return r;
    }
    PPoly scaled(const Scalar& c) const {
        PPoly r;
        if (c.is_zero()) return r;
        for (auto& [m, k] : t) r.t.emplace(m, k * c);
        return r;
    }
    friend bool operator==(const PPoly& a, const PPoly& b) { return (a - b).is_zero(); }

    // Plain p_i-derivative; only valid on omega-free input at the call sites.
    PPoly derivative_p(int i) const {
        PPoly r;
        for (auto& [m, c] : t) {
            int e = m[static_cast<size_t>(i)];
            if (e == 0) continue;
            Mono n = m;
            n[static_cast<size_t>(i)] = e - 1;
            r.add_term(n, c * Scalar(e));
        }
        return r;
    }

    // Split into A + B*omega.
    void split(PPoly& a, PPoly& b) const {
        for (auto& [m, c] : t) {
            Mono n = m;
            n[3] = 0;
            if (m[3] == 0)
                a.add_term(n, c);
            else
                b.add_term(n, c); // omega degree is canonically <= 1
        }
    }

    std::string str() const {
        if (t.empty()) return "0";
        static const char* names[4] = {"p1", "p2", "p3", "omega"};
        std::string out;
        bool first = true;
        for (auto& [m, c] : t) {
            std::string body;
            for (int i = 0; i < 4; ++i) {
                if (m[static_cast<size_t>(i)] == 0) continue;
                if (!body.empty()) body += "*";
                body += names[i];
                if (m[static_cast<size_t>(i)] > 1)
                    body += "^" + std::to_string(m[static_cast<size_t>(i)]);
            }
            detail::append_term(out, first, c, body);
        }
        return out;
    }
};

namespace diffop_detail {

// Raw product followed by omega^2 -> p^2 + mc^2 reduction.
inline PPoly mul(const PPoly& a, const PPoly& b, const OmegaCtx& ctx) {
    PPoly raw;
    for (auto& [ma, ca] : a.t)
        for (auto& [mb, cb] : b.t) {
            PPoly::Mono m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]};
            raw.add_term(m, ca * cb);
        }
    bool reduced = true;
    for (auto& [m, c] : raw.t)
        if (m[3] >= 2) {
            reduced = false;
            break;
        }
    if (reduced) return raw;
    PPoly out;
    for (auto& [m, c] : raw.t) {
        int q = m[3] / 2, r = m[3] % 2;
        PPoly piece;
        piece.add_term({m[0], m[1], m[2], r}, c);
        for (int k = 0; k < q; ++k) piece = mul(piece, *ctx.rho, ctx); // rho is omega-free
        out = out + piece;
    }
    return out;
}

// Exact division in the omega-free subring; returns false when not divisible.
inline bool div_exact(PPoly p, const PPoly& d, PPoly& q) {
    q = PPoly::zero();
    const auto& dl = *d.t.begin(); // lead of the divisor
    while (!p.t.empty()) {
        const auto& pl = *p.t.begin();
        PPoly::Mono diff{};
        for (size_t i = 0; i < 4; ++i) {
            diff[i] = pl.first[i] - dl.first[i];
            if (diff[i] < 0) return false;
        }
        Scalar c = pl.second / dl.second;
        q.add_term(diff, c);
        // omega-free inputs: plain convolution, no reduction needed
        PPoly sub;
        for (auto& [m, k] : d.t)
            sub.add_term({m[0] + diff[0], m[1] + diff[1], m[2] + diff[2], m[3] + diff[3]}, k * c);
        p = p - sub;
    }
    return true;
}

} // namespace diffop_detail

inline OmegaCtxPtr make_omega_ctx(const Scalar& mc) {
    auto rho = std::make_shared<PPoly>();
    rho->add_term({2, 0, 0, 0}, Scalar::one());
    rho->add_term({0, 2, 0, 0}, Scalar::one());
    rho->add_term({0, 0, 2, 0}, Scalar::one());
    rho->add_term({0, 0, 0, 0}, mc * mc);
    auto psq = std::make_shared<PPoly>();
    psq->add_term({2, 0, 0, 0}, Scalar::one());
    psq->add_term({0, 2, 0, 0}, Scalar::one());
    psq->add_term({0, 0, 2, 0}, Scalar::one());
    return std::make_shared<const OmegaCtx>(OmegaCtx{mc, mc * mc, rho, psq});
}

// ---------------------------------------------------------------------------
// Coefficient functions: num / (omega^dw * (mc + omega)^dmu), num reduced and
// sharing no factor of omega or (mc + omega) with the denominator.

struct CoeffFn {
    OmegaCtxPtr ctx;
    PPoly num;
    int dw = 0, dmu = 0;

    static CoeffFn scalar(const OmegaCtxPtr& ctx, const Scalar& c) {
        return CoeffFn{ctx, PPoly::constant(c), 0, 0};
    }
    static CoeffFn p(const OmegaCtxPtr& ctx, int i) { // i in 1..3
        return CoeffFn{ctx, PPoly::var(i - 1), 0, 0};
    }
    static CoeffFn omega(const OmegaCtxPtr& ctx) { return CoeffFn{ctx, PPoly::var(3), 0, 0}; }
    static CoeffFn inv_omega(const OmegaCtxPtr& ctx) {
        return CoeffFn{ctx, PPoly::constant(Scalar::one()), 1, 0};
    }
    static CoeffFn inv_mc_omega(const OmegaCtxPtr& ctx) {
        return CoeffFn{ctx, PPoly::constant(Scalar::one()), 0, 1};
    }

    bool is_zero() const { return num.is_zero(); }
    bool is_scalar(Scalar& out) const {
        if (num.is_zero()) {
            out = Scalar::zero();
            return true;
        }
        if (dw != 0 || dmu != 0 || num.t.size() != 1) return false;
        auto& [m, c] = *num.t.begin();
        if (m != PPoly::Mono{0, 0, 0, 0}) return false;
        out = c;
        return true;
    }

    // Cancel full factors of omega and (mc + omega) out of the fraction.
    void cancel() {
        if (num.is_zero()) {
            dw = dmu = 0;
            return;
        }
        while (dw > 0) {
            PPoly a, b, q;
            num.split(a, b);
            if (!diffop_detail::div_exact(a, *ctx->rho, q)) break;
            // num = omega * (b + q*omega)
            PPoly next = b;
            for (auto& [m, c] : q.t) next.add_term({m[0], m[1], m[2], 1}, c);
            num = next;
            --dw;
        }
        while (dmu > 0) {
            PPoly a, b, d;
            num.split(a, b);
            if (!diffop_detail::div_exact(a - b.scaled(ctx->mc), *ctx->psq, d)) break;
            // num = (mc + omega) * (c + d*omega) with c = b - mc*d
            PPoly next = b - d.scaled(ctx->mc);
            for (auto& [m, c] : d.t) next.add_term({m[0], m[1], m[2], 1}, c);
            num = next;
            --dmu;
        }
    }

    friend CoeffFn operator+(const CoeffFn& x, const CoeffFn& y) {
        diffop_detail::check_ctx(x.ctx, y.ctx);
        if (x.is_zero()) return y;
        if (y.is_zero()) return x;
        int dw = std::max(x.dw, y.dw), dmu = std::max(x.dmu, y.dmu);
        CoeffFn r{x.ctx, x.lifted(dw, dmu) + y.lifted(dw, dmu), dw, dmu};
        r.cancel();
        return r;
    }
    friend CoeffFn operator-(const CoeffFn& x, const CoeffFn& y) {
        diffop_detail::check_ctx(x.ctx, y.ctx);
        if (y.is_zero()) return x;
        int dw = std::max(x.dw, y.dw), dmu = std::max(x.dmu, y.dmu);
        CoeffFn r{x.ctx, x.lifted(dw, dmu) - y.lifted(dw, dmu), dw, dmu};
        r.cancel();
        return r;
    }
    friend CoeffFn operator*(const CoeffFn& x, const CoeffFn& y) {
        diffop_detail::check_ctx(x.ctx, y.ctx);
        if (x.is_zero() || y.is_zero()) return CoeffFn{x.ctx, PPoly::zero(), 0, 0};
        CoeffFn r{x.ctx, diffop_detail::mul(x.num, y.num, *x.ctx), x.dw + y.dw, x.dmu + y.dmu};
        r.cancel();
        return r;
    }
    CoeffFn scaled(const Scalar& c) const {
        CoeffFn r{ctx, num.scaled(c), dw, dmu};
        if (r.num.is_zero()) r.dw = r.dmu = 0;
        return r;
    }
    friend bool operator==(const CoeffFn& x, const CoeffFn& y) {
        diffop_detail::check_ctx(x.ctx, y.ctx);
        return x.dw == y.dw && x.dmu == y.dmu && x.num == y.num;
    }

    // d/dp_i via the quotient rule and d(omega)/dp_i = p_i/omega.
    CoeffFn derivative(int i) const { // i in 1..3
        if (num.is_zero()) return *this;
        PPoly a, b;
        num.split(a, b);
        const PPoly& rho = *ctx->rho;
        PPoly da = a.derivative_p(i - 1), db = b.derivative_p(i - 1);
        // (dN) * omega = omega^2*dA/omega ... assembled omega-linearly:
        PPoly tilde; // = omega*dA + rho*dB + p_i*B
        for (auto& [m, c] : da.t) tilde.add_term({m[0], m[1], m[2], 1}, c);
        tilde = tilde + diffop_detail::mul(rho, db, *ctx);
        PPoly pb;
        for (auto& [m, c] : b.t) {
            PPoly::Mono n = m;
            n[static_cast<size_t>(i - 1)] += 1;
            pb.add_term(n, c);
        }
        tilde = tilde + pb;
        // numerator: tilde*omega*(mc+omega) - N*p_i*(dw*(mc+omega) + dmu*omega)
        PPoly mc_om = PPoly::constant(ctx->mc);
        mc_om.add_term({0, 0, 0, 1}, Scalar::one());
        PPoly om = PPoly::var(3);
        PPoly lhs = diffop_detail::mul(diffop_detail::mul(tilde, om, *ctx), mc_om, *ctx);
        PPoly weight = mc_om.scaled(Scalar(dw)) + om.scaled(Scalar(dmu));
        PPoly pin = PPoly::var(i - 1);
        PPoly rhs = diffop_detail::mul(diffop_detail::mul(num, pin, *ctx), weight, *ctx);
        CoeffFn r{ctx, lhs - rhs, dw + 2, dmu + 1};
        r.cancel();
        return r;
    }

    std::string str() const {
        std::string n = num.str();
        if (dw == 0 && dmu == 0) return n;
        std::string d;
        if (dw > 0) d += "omega" + (dw > 1 ? "^" + std::to_string(dw) : "");
        if (dmu > 0) {
            std::string mc = ctx->mc.is_single_term() ? ctx->mc.str() : "(" + ctx->mc.str() + ")";
            std::string base = mc + " + omega";
            if (dw == 0 && dmu == 1)
                d = base; // the surrounding /(...) already delimits it
            else {
                if (!d.empty()) d += "*";
                d += "(" + base + ")" + (dmu > 1 ? "^" + std::to_string(dmu) : "");
            }
        }
        bool simple = num.t.size() == 1;
        return (simple ? n : "(" + n + ")") + "/(" + d + ")";
    }

  private:
    PPoly lifted(int tw, int tmu) const { // multiply num up to the common denominator
        PPoly r = num;
        const OmegaCtx& c = *ctx;
        PPoly om = PPoly::var(3);
        PPoly mc_om = PPoly::constant(c.mc);
        mc_om.add_term({0, 0, 0, 1}, Scalar::one());
        for (int k = dw; k < tw; ++k) r = diffop_detail::mul(r, om, c);
        for (int k = dmu; k < tmu; ++k) r = diffop_detail::mul(r, mc_om, c);
        return r;
    }
};

// ---------------------------------------------------------------------------
// Matrix of coefficient functions (the spin slot of one derivative term).

struct CMat {
    int dim = 1;
    std::vector<CoeffFn> a;

    static CMat zero(const OmegaCtxPtr& ctx, int dim) {
        CMat m;
        m.dim = dim;
        m.a.assign(static_cast<size_t>(dim) * static_cast<size_t>(dim), CoeffFn::scalar(ctx, Scalar::zero()));
        return m;
    }
    static CMat identity(const OmegaCtxPtr& ctx, int dim, const CoeffFn& c) {
        CMat m = zero(ctx, dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = c;
        return m;
    }
    static CMat from_spin(const OmegaCtxPtr& ctx, const SpinBlock& s) {
        CMat m = zero(ctx, s.dim);
        for (size_t i = 0; i < s.a.size(); ++i) m.a[i] = CoeffFn::scalar(ctx, s.a[i]);
        return m;
    }

    CoeffFn& at(int r, int c) { return a[static_cast<size_t>(r) * static_cast<size_t>(dim) + static_cast<size_t>(c)]; }
    const CoeffFn& at(int r, int c) const {
        return a[static_cast<size_t>(r) * static_cast<size_t>(dim) + static_cast<size_t>(c)];
    }
    bool is_zero() const {
        for (auto& x : a)
            if (!x.is_zero()) return false;
        return true;
    }
    // True when the matrix is c*identity.
    bool is_scalar(CoeffFn& out) const {
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                if (r != c && !at(r, c).is_zero()) return false;
        for (int r = 1; r < dim; ++r)
            if (!(at(r, r) == at(0, 0))) return false;
        out = at(0, 0);
        return true;
    }

    friend CMat operator+(const CMat& x, const CMat& y) {
        CMat m = x;
        for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = m.a[i] + y.a[i];
        return m;
    }
    friend CMat operator-(const CMat& x, const CMat& y) {
        CMat m = x;
        for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = m.a[i] - y.a[i];
        return m;
    }
    friend CMat operator*(const CMat& x, const CMat& y) {
        CMat m = zero(x.a.at(0).ctx, x.dim);
        for (int r = 0; r < x.dim; ++r)
            for (int k = 0; k < x.dim; ++k) {
                if (x.at(r, k).is_zero()) continue;
                for (int c = 0; c < x.dim; ++c) {
                    if (y.at(k, c).is_zero()) continue;
                    m.at(r, c) = m.at(r, c) + x.at(r, k) * y.at(k, c);
                }
            }
        return m;
    }
    CMat scaled(const Scalar& c) const {
        CMat m = *this;
        for (auto& x : m.a) x = x.scaled(c);
        return m;
    }
    CMat derived(int i) const {
        CMat m = *this;
        for (auto& x : m.a) x = x.derivative(i);
        return m;
    }
    friend bool operator==(const CMat& x, const CMat& y) {
        if (x.dim != y.dim) return false;
        for (size_t i = 0; i < x.a.size(); ++i)
            if (!(x.a[i] == y.a[i])) return false;
        return true;
    }
};

// ---------------------------------------------------------------------------
// The operator proper: sum over derivative multi-indices of matrix
// coefficients, derivatives rightmost.

struct DiffOp {
    using MIdx = std::array<int, 3>;

    OmegaCtxPtr ctx;
    int dim = 1;
    std::map<MIdx, CMat> terms;

    static DiffOp zero(const OmegaCtxPtr& ctx, int dim) { return DiffOp{ctx, dim, {}}; }
    static DiffOp identity(const OmegaCtxPtr& ctx, int dim) {
        return mult(CoeffFn::scalar(ctx, Scalar::one()), dim);
    }
    // Multiplication operator c * id.
    static DiffOp mult(const CoeffFn& c, int dim) {
        DiffOp d{c.ctx, dim, {}};
        d.add_term({0, 0, 0}, CMat::identity(c.ctx, dim, c));
        return d;
    }
    // Pure matrix term (multi-index 0).
    static DiffOp matrix(const CMat& m) {
        DiffOp d{m.a.at(0).ctx, m.dim, {}};
        d.add_term({0, 0, 0}, m);
        return d;
    }
    // d/dp_i, i in 1..3.
    static DiffOp partial(const OmegaCtxPtr& ctx, int i, int dim) {
        DiffOp d{ctx, dim, {}};
        MIdx m{0, 0, 0};
        m[static_cast<size_t>(i - 1)] = 1;
        d.add_term(m, CMat::identity(ctx, dim, CoeffFn::scalar(ctx, Scalar::one())));
        return d;
    }

    void add_term(const MIdx& m, const CMat& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms.emplace(m, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    bool is_zero() const { return terms.empty(); }
    int max_order() const {
        int n = 0;
        for (auto& [m, c] : terms) n = std::max(n, m[0] + m[1] + m[2]);
        return n;
    }

    friend DiffOp operator+(const DiffOp& x, const DiffOp& y) {
        diffop_detail::check_ctx(x.ctx, y.ctx);
        if (x.dim != y.dim) throw DomainError("spin-size mismatch");
        DiffOp r = x;
        for (auto& [m, c] : y.terms) r.add_term(m, c);
        return r;
    }
    friend DiffOp operator-(const DiffOp& x, const DiffOp& y) {
        diffop_detail::check_ctx(x.ctx, y.ctx);
        if (x.dim != y.dim) throw DomainError("spin-size mismatch");
        DiffOp r = x;
        for (auto& [m, c] : y.terms) r.add_term(m, c.scaled(Scalar(-1)));
        return r;
    }
    DiffOp scaled(const Scalar& c) const {
        DiffOp r{ctx, dim, {}};
        for (auto& [m, k] : terms) r.add_term(m, k.scaled(c));
        return r;
    }

    // Composition x then y applied first: (x*y)(psi) = x(y(psi)), expanded by
    // the Leibniz rule so derivatives end up rightmost.
    friend DiffOp operator*(const DiffOp& x, const DiffOp& y) {
        diffop_detail::check_ctx(x.ctx, y.ctx);
        if (x.dim != y.dim) throw DomainError("spin-size mismatch");
        DiffOp r{x.ctx, x.dim, {}};
        for (auto& [alpha, A] : x.terms)
            for (auto& [beta, B] : y.terms) {
                MIdx delta{0, 0, 0};
                // enumerate delta <= alpha componentwise
                while (true) {
                    long factor = 1;
                    for (int i = 0; i < 3; ++i)
                        factor *= diffop_detail::binom(alpha[static_cast<size_t>(i)],
                                                       delta[static_cast<size_t>(i)]);
                    CMat dB = B;
                    for (int i = 0; i < 3; ++i)
                        for (int k = 0; k < delta[static_cast<size_t>(i)]; ++k) dB = dB.derived(i + 1);
                    if (!dB.is_zero()) {
                        MIdx target{alpha[0] - delta[0] + beta[0], alpha[1] - delta[1] + beta[1],
                                    alpha[2] - delta[2] + beta[2]};
                        r.add_term(target, (A * dB).scaled(Scalar(factor)));
                    }
                    int i = 0;
                    for (; i < 3; ++i) {
                        if (delta[static_cast<size_t>(i)] < alpha[static_cast<size_t>(i)]) {
                            ++delta[static_cast<size_t>(i)];
                            break;
                        }
                        delta[static_cast<size_t>(i)] = 0;
                    }
                    if (i == 3) break;
                }
            }
        return r;
    }

    friend bool operator==(const DiffOp& x, const DiffOp& y) { return (x - y).is_zero(); }

    std::string str() const {
        if (terms.empty()) return "0";
        // multiplication part first, then d1, d2, d3: order by reversed index
        std::vector<const std::pair<const MIdx, CMat>*> order;
        for (auto& kv : terms) order.push_back(&kv);
        std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
            MIdx ra{a->first[2], a->first[1], a->first[0]}, rb{b->first[2], b->first[1], b->first[0]};
            return ra < rb;
        });
        std::string out;
        bool first = true;
        auto body_of = [](const MIdx& m) {
            std::string body;
            for (int i = 0; i < 3; ++i) {
                if (m[static_cast<size_t>(i)] == 0) continue;
                if (!body.empty()) body += "*";
                body += "d" + std::to_string(i + 1);
                if (m[static_cast<size_t>(i)] > 1)
                    body += "^" + std::to_string(m[static_cast<size_t>(i)]);
            }
            return body;
        };
        auto join = [&](const std::string& cf, const std::string& body) {
            std::string piece = cf;
            if (!body.empty() &&
                (piece.find(' ') != std::string::npos || piece.find("/(") != std::string::npos))
                piece = "(" + piece + ")";
            if (!body.empty()) piece = (piece == "1") ? body : piece + "*" + body;
            if (first) {
                out += piece;
                first = false;
            } else if (!piece.empty() && piece[0] == '-') {
                out += " - " + piece.substr(1);
            } else {
                out += " + " + piece;
            }
        };
        for (auto* kv : order) {
            std::string body = body_of(kv->first);
            const CMat& c = kv->second;
            CoeffFn sc = c.a[0];
            if (c.is_scalar(sc)) {
                join(sc.str(), body);
                continue;
            }
            for (int r = 0; r < c.dim; ++r)
                for (int col = 0; col < c.dim; ++col) {
                    if (c.at(r, col).is_zero()) continue;
                    std::string slot = "S[" + std::to_string(r + 1) + "," + std::to_string(col + 1) + "]";
                    join(c.at(r, col).str(), body.empty() ? slot : slot + "*" + body);
                }
        }
        return out;
    }
};

inline DiffOp commutator(const DiffOp& a, const DiffOp& b) { return a * b - b * a; }

} // namespace kindef

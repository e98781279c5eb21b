#pragma once

// The four explicit momentum-space realizations and the substitution of
// enveloping-algebra elements into them:
//
//   galilei-bacry(m, a, s)   H = p^2/2m + a,  P_i = p_i,  K_i = m d_i,
//                            J_i = eps_{ijk} p_k d_j + S_i,  Xi = 1
//   nh-deformed(lambda, m, s)    H' = lambda (p.d + 3/2),  P' = lambda m d,
//                                J' = J,  K' = K
//   poincare-massive(m, s)   H' = c omega,  P'_i = p_i,  J' = J,
//                            K'_i = (1/c)(omega d_i + eps_{ijk} p_j S_k/(mc+omega))
//   ads-deformed(lambda, m, s)   H'', P''_i as displayed,  J'' = J',  K'' = K'
//
// all through gamma = 1/c.  Each representation carries the catalog algebra
// whose bracket table it must close; verify_rep checks every pair as an exact
// operator identity.  Substitution is a morphism on normal-ordered elements:
// each monomial maps to the composition of the generator images in monomial
// order.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kindef/catalog.hpp"
#include "kindef/diffop.hpp"

namespace kindef {

struct Rep {
    std::string name;
    AlgebraDef algebra; // the table the images must close
    int twice_s = 0;
    OmegaCtxPtr ctx;
    std::map<std::string, DiffOp> images;
    Scalar spin_square; // the scalar S.S of the chosen spin block, as computed
};

struct RepCheck {
    std::string x, y;
    std::string status;  // "closed" | "failed"
    std::string witness; // residual operator when failed
};

struct RepReport {
    std::vector<RepCheck> items;

    bool all_closed() const {
        for (auto& it : items)
            if (it.status != "closed") return false;
        return true;
    }
    std::string status() const { return all_closed() ? "closed" : "failed"; }
    int closed_count() const {
        int n = 0;
        for (auto& it : items) n += it.status == "closed";
        return n;
    }
};

namespace rep_detail {

inline DiffOp bacry_rotation(const OmegaCtxPtr& ctx, int i, const SpinBlock& s) {
    DiffOp j = DiffOp::matrix(CMat::from_spin(ctx, s));
    for (int jj = 1; jj <= 3; ++jj)
        for (int k = 1; k <= 3; ++k)
            if (int e = epsilon(i, jj, k)) {
                DiffOp::MIdx m{0, 0, 0};
                m[static_cast<size_t>(jj - 1)] = 1;
                DiffOp term{ctx, s.dim, {}};
                term.add_term(m, CMat::identity(ctx, s.dim,
                                                CoeffFn::p(ctx, k).scaled(Scalar(e))));
                j = j + term;
            }
    return j;
}

inline Scalar spin_square_scalar(const std::array<SpinBlock, 3>& s) {
    Scalar v;
    if (!spin_square(s).is_scalar(v)) throw DomainError("spin square is not a scalar matrix");
    return v;
}

} // namespace rep_detail

// ---------------------------------------------------------------------------
// Builders.  Spin is passed as 2s; the supported exact set is {0, 1, 2}.

inline Rep build_galilei_bacry(const Scalar& m, const Scalar& a, int twice_s) {
    if (m.is_zero()) throw DomainError("massive representation requires m != 0");
    auto spin = spin_matrices(twice_s);
    int dim = twice_s + 1;
    OmegaCtxPtr ctx = make_omega_ctx(m);

    Rep rep;
    rep.name = "galilei-bacry";
    rep.algebra = catalog_get("galilei-extended");
    rep.twice_s = twice_s;
    rep.ctx = ctx;
    rep.spin_square = rep_detail::spin_square_scalar(spin);

    rep.images.emplace("Xi", DiffOp::identity(ctx, dim));
    CoeffFn h = CoeffFn::scalar(ctx, a);
    for (int i = 1; i <= 3; ++i)
        h = h + (CoeffFn::p(ctx, i) * CoeffFn::p(ctx, i)).scaled((m * Scalar(2)).inv());
    rep.images.emplace("H", DiffOp::mult(h, dim));
    for (int i = 1; i <= 3; ++i) {
        std::string n = std::to_string(i);
        rep.images.emplace("P" + n, DiffOp::mult(CoeffFn::p(ctx, i), dim));
        rep.images.emplace("K" + n, DiffOp::partial(ctx, i, dim).scaled(m));
        rep.images.emplace("J" + n,
                           rep_detail::bacry_rotation(ctx, i, spin[static_cast<size_t>(i - 1)]));
    }
    return rep;
}

inline Rep build_nh_deformed(const Scalar& lambda, const Scalar& m, int twice_s,
                             const std::string& algebra = "nh-minus") {
    if (m.is_zero()) throw DomainError("massive representation requires m != 0");
    auto spin = spin_matrices(twice_s);
    int dim = twice_s + 1;
    OmegaCtxPtr ctx = make_omega_ctx(m);

    Rep rep;
    rep.name = "nh-deformed";
    rep.algebra = catalog_get(algebra);
    rep.twice_s = twice_s;
    rep.ctx = ctx;
    rep.spin_square = rep_detail::spin_square_scalar(spin);

    // H' = lambda (p.d + 3/2)
    DiffOp h = DiffOp::mult(CoeffFn::scalar(ctx, lambda * Scalar::rational(3, 2)), dim);
    for (int i = 1; i <= 3; ++i) {
        DiffOp::MIdx mi{0, 0, 0};
        mi[static_cast<size_t>(i - 1)] = 1;
        DiffOp term{ctx, dim, {}};
        term.add_term(mi, CMat::identity(ctx, dim, CoeffFn::p(ctx, i).scaled(lambda)));
        h = h + term;
    }
    rep.images.emplace("H", h);
    for (int i = 1; i <= 3; ++i) {
        std::string n = std::to_string(i);
        rep.images.emplace("P" + n, DiffOp::partial(ctx, i, dim).scaled(lambda * m));
        rep.images.emplace("K" + n, DiffOp::partial(ctx, i, dim).scaled(m));
        rep.images.emplace("J" + n,
                           rep_detail::bacry_rotation(ctx, i, spin[static_cast<size_t>(i - 1)]));
    }
    return rep;
}

inline Rep build_poincare_massive(const Scalar& m, int twice_s) {
    if (m.is_zero()) throw DomainError("massive representation requires m != 0");
    auto spin = spin_matrices(twice_s);
    int dim = twice_s + 1;
    Scalar g = Scalar::param("gamma");
    OmegaCtxPtr ctx = make_omega_ctx(m / g); // mc with c = 1/gamma

    Rep rep;
    rep.name = "poincare-massive";
    rep.algebra = catalog_get("poincare");
    rep.twice_s = twice_s;
    rep.ctx = ctx;
    rep.spin_square = rep_detail::spin_square_scalar(spin);

    rep.images.emplace("H", DiffOp::mult(CoeffFn::omega(ctx).scaled(g.inv()), dim));
    for (int i = 1; i <= 3; ++i) {
        std::string n = std::to_string(i);
        rep.images.emplace("P" + n, DiffOp::mult(CoeffFn::p(ctx, i), dim));
        rep.images.emplace("J" + n,
                           rep_detail::bacry_rotation(ctx, i, spin[static_cast<size_t>(i - 1)]));
        // K'_i = gamma (omega d_i + eps_{ijk} p_j S_k / (mc + omega))
        DiffOp k{ctx, dim, {}};
        DiffOp::MIdx mi{0, 0, 0};
        mi[static_cast<size_t>(i - 1)] = 1;
        k.add_term(mi, CMat::identity(ctx, dim, CoeffFn::omega(ctx).scaled(g)));
        CMat spin_part = CMat::zero(ctx, dim);
        for (int j = 1; j <= 3; ++j)
            for (int kk = 1; kk <= 3; ++kk)
                if (int e = epsilon(i, j, kk)) {
                    CoeffFn cf = (CoeffFn::p(ctx, j) * CoeffFn::inv_mc_omega(ctx)).scaled(g * Scalar(e));
                    spin_part = spin_part + CMat::identity(ctx, dim, cf) *
                                                CMat::from_spin(ctx, spin[static_cast<size_t>(kk - 1)]);
                }
        k.add_term({0, 0, 0}, spin_part);
        rep.images.emplace("K" + n, k);
    }
    return rep;
}

inline Rep build_ads_deformed(const Scalar& lambda, const Scalar& m, int twice_s,
                              const std::string& algebra = "ds") {
    Rep poi = build_poincare_massive(m, twice_s);
    auto spin = spin_matrices(twice_s);
    int dim = twice_s + 1;
    Scalar g = Scalar::param("gamma");
    OmegaCtxPtr ctx = poi.ctx;

    Rep rep;
    rep.name = "ads-deformed";
    rep.algebra = catalog_get(algebra);
    rep.twice_s = twice_s;
    rep.ctx = ctx;
    rep.spin_square = poi.spin_square;

    // H'' = (lambda gamma / m) omega (p.d + 3/2)
    Scalar lg = lambda * g / m;
    DiffOp h = DiffOp::mult((CoeffFn::omega(ctx)).scaled(lg * Scalar::rational(3, 2)), dim);
    for (int i = 1; i <= 3; ++i) {
        DiffOp::MIdx mi{0, 0, 0};
        mi[static_cast<size_t>(i - 1)] = 1;
        DiffOp term{ctx, dim, {}};
        term.add_term(mi, CMat::identity(ctx, dim,
                                         (CoeffFn::omega(ctx) * CoeffFn::p(ctx, i)).scaled(lg)));
        h = h + term;
    }
    rep.images.emplace("H", h);

    // P''_i = lambda ( (gamma^2/m) p_i (p.d + 3/2) + m d_i
    //                  - gamma eps_{ijk} p_j S_k / (mc + omega) )
    Scalar g2m = g * g / m;
    for (int i = 1; i <= 3; ++i) {
        std::string n = std::to_string(i);
        DiffOp p{ctx, dim, {}};
        for (int j = 1; j <= 3; ++j) {
            DiffOp::MIdx mj{0, 0, 0};
            mj[static_cast<size_t>(j - 1)] = 1;
            CoeffFn cf = (CoeffFn::p(ctx, i) * CoeffFn::p(ctx, j)).scaled(lambda * g2m);
            if (i == j) cf = cf + CoeffFn::scalar(ctx, lambda * m);
            p.add_term(mj, CMat::identity(ctx, dim, cf));
        }
        CMat zero_part =
            CMat::identity(ctx, dim, CoeffFn::p(ctx, i).scaled(lambda * g2m * Scalar::rational(3, 2)));
        for (int j = 1; j <= 3; ++j)
            for (int kk = 1; kk <= 3; ++kk)
                if (int e = epsilon(i, j, kk)) {
                    CoeffFn cf = (CoeffFn::p(ctx, j) * CoeffFn::inv_mc_omega(ctx))
                                     .scaled(lambda * g * Scalar(-e));
                    zero_part = zero_part + CMat::identity(ctx, dim, cf) *
                                                CMat::from_spin(ctx, spin[static_cast<size_t>(kk - 1)]);
                }
        p.add_term({0, 0, 0}, zero_part);
        rep.images.emplace("P" + n, p);
        rep.images.emplace("K" + n, poi.images.at("K" + n));
        rep.images.emplace("J" + n, poi.images.at("J" + n));
    }
    return rep;
}

// Catalog-named dispatcher.  For the curvature-carrying families the sign
// picks the primitive parameter: -1 keeps lambda (kappa1 = -lambda^2), +1
// switches to i*lambdah (kappa1 = +lambdah^2) and the sign-swapped algebra.
inline Rep build_rep(const std::string& name, int twice_s, int kappa_sign = -1) {
    if (name == "galilei-bacry")
        return build_galilei_bacry(Scalar::param("m"), Scalar::param("a"), twice_s);
    if (name == "nh-deformed") {
        if (kappa_sign < 0)
            return build_nh_deformed(Scalar::param("lambda"), Scalar::param("m"), twice_s, "nh-minus");
        return build_nh_deformed(Scalar::imag_unit() * Scalar::param("lambdah"), Scalar::param("m"),
                                 twice_s, "nh-plus");
    }
    if (name == "poincare-massive") return build_poincare_massive(Scalar::param("m"), twice_s);
    if (name == "ads-deformed") {
        if (kappa_sign < 0)
            return build_ads_deformed(Scalar::param("lambda"), Scalar::param("m"), twice_s, "ds");
        return build_ads_deformed(Scalar::imag_unit() * Scalar::param("lambdah"), Scalar::param("m"),
                                  twice_s, "ads");
    }
    throw UnsupportedError("unknown representation '" + name +
                           "' (supported: galilei-bacry, nh-deformed, poincare-massive, "
                           "ads-deformed)");
}

// ---------------------------------------------------------------------------
// Substitution of normal-ordered elements: a morphism term by term.

inline DiffOp substitute_rep(const Element& e, const Rep& rep) {
    int dim = rep.twice_s + 1;
    DiffOp out = DiffOp::zero(rep.ctx, dim);
    // Compose right to left: the left factor of every composition is a single
    // generator image (derivative order <= 1), which keeps the Leibniz
    // expansion linear in the size of the accumulated operator.  Monomials of
    // one element share tails, so tail products are memoized.
    std::map<std::string, DiffOp> tails;
    for (auto& [mono, c] : e.terms()) {
        std::vector<std::pair<std::string, int>> factors;
        for (auto& [gen, pow] : mono.g) factors.emplace_back(e.basis()->name(gen), pow);
        DiffOp term = DiffOp::identity(rep.ctx, dim);
        std::string key;
        for (size_t i = factors.size(); i-- > 0;) {
            key = factors[i].first + "^" + std::to_string(factors[i].second) +
                  (key.empty() ? "" : "*" + key);
            auto hit = tails.find(key);
            if (hit != tails.end()) {
                term = hit->second;
                continue;
            }
            auto img = rep.images.find(factors[i].first);
            if (img == rep.images.end())
                throw DomainError("no representation image for generator '" + factors[i].first + "'");
            for (int k = 0; k < factors[i].second; ++k) term = img->second * term;
            tails.emplace(key, term);
        }
        out = out + term.scaled(c);
    }
    return out;
}

// Every bracket of the algebra's table as an exact operator identity.
inline RepReport verify_rep(const Rep& rep) {
    RepReport report;
    const BasisPtr& b = rep.algebra.basis;
    for (int i = 0; i < b->size(); ++i)
        for (int j = i + 1; j < b->size(); ++j) {
            const std::string x = b->gen(i).name, y = b->gen(j).name;
            DiffOp lhs = commutator(rep.images.at(x), rep.images.at(y));
            DiffOp rhs = substitute_rep(commutator(Element::gen(b, x), Element::gen(b, y)), rep);
            DiffOp residual = lhs - rhs;
            RepCheck item{x, y, "closed", ""};
            if (!residual.is_zero()) {
                item.status = "failed";
                item.witness = residual.str();
            }
            report.items.push_back(item);
        }
    return report;
}

// The scalar by which a central element acts; a non-scalar image is a hard
// error carrying the operator as witness.
inline Scalar casimir_eigenvalue(const Rep& rep, const Element& casimir) {
    DiffOp op = substitute_rep(casimir, rep);
    if (op.max_order() == 0) {
        if (op.terms.empty()) return Scalar::zero();
        CoeffFn c = op.terms.begin()->second.a[0];
        Scalar v;
        if (op.terms.begin()->second.is_scalar(c) && c.is_scalar(v)) return v;
    }
    throw DomainError("invariant does not act as a scalar in the representation: " + op.str());
}

// Eigenvalues of every named invariant of the representation's algebra.
inline std::vector<std::pair<std::string, Scalar>> rep_casimir_eigenvalues(const Rep& rep) {
    std::vector<std::pair<std::string, Scalar>> out;
    for (auto& c : rep.algebra.casimirs)
        out.emplace_back(c.name, casimir_eigenvalue(rep, c.element));
    return out;
}

} // namespace kindef

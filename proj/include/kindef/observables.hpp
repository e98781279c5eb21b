#pragma once

// Derived operators of the flat -> relativistic deformation, assembled in the
// H-localized enveloping algebra of the flat kinematical algebra and reduced
// modulo the central character of an ordinary irreducible representation,
//
//     P.P = u^2 != 0,        W.W = w^2 != 0,       W = K ^ P,
//
// with the seed coefficients pinned to their positive roots.  Everything here
// is parameterized by gamma = 1/c; scalar fractions in u, w, gamma are exact.
//
// The set collects the deformed generators in vector form together with the
// operators built from them: the time component of the translation invariant
// vector (W'0), its space components (W'), the three helicity projections
// lambda_p, lambda_w, lambda_pw with their unit directions, the symmetrized
// position operators Q', the kinematical observables Sigma', and the velocity
// V' = [Q', H'].  The check_* routines certify the identity suite by normal
// ordering and central reduction; each item reports "closed" or "failed"
// with the irreducible residual as witness.

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kindef/catalog.hpp"
#include "kindef/deformation.hpp"

namespace kindef {

struct ObservableCheck {
    std::string name;
    std::string status;  // "closed" | "failed"
    std::string witness; // irreducible residual when failed
};

struct ObservableReport {
    std::vector<ObservableCheck> items;

    bool all_closed() const {
        for (auto& it : items)
            if (it.status != "closed") return false;
        return true;
    }
    std::string status() const { return all_closed() ? "closed" : "failed"; }
};

struct ObservableSet {
    BasisPtr basis; // flat basis with the adjoined inverse of H
    Scalar u, w;    // |P|, |W|
    std::vector<CentralRelation> relations; // P.P = u^2, W.W = w^2

    // Deformed generators, alpha coefficients substituted by positive roots.
    Element Hp;
    std::vector<Element> Pp, Kp, Jp;

    // Derived operators.
    Element W0p;                    // J'.P'
    std::vector<Element> Wp;        // -gamma^2 H' J' + K' ^ P'
    Element lp, lw, lpw;            // helicity projections of J
    std::vector<Element> up, uw, upw; // unit directions P/u, W/w, (P^W)/(uw)
    std::vector<Element> Qp;        // symmetrized position operators
    std::vector<Element> Sigma;     // J'_k - eps_ijk Q'_i P'_j
    std::vector<Element> Vp;        // [Q', H']

    // Named rendering order for reports.
    std::vector<std::pair<std::string, Element>> named() const {
        std::vector<std::pair<std::string, Element>> out;
        auto vec = [&](const std::string& base, const std::vector<Element>& v) {
            for (size_t i = 0; i < v.size(); ++i)
                out.emplace_back(base + std::to_string(i + 1), v[i]);
        };
        out.emplace_back("H'", Hp);
        vec("P'", Pp);
        vec("K'", Kp);
        vec("J'", Jp);
        out.emplace_back("W'0", W0p);
        vec("W'", Wp);
        out.emplace_back("lambda_p", lp);
        out.emplace_back("lambda_w", lw);
        out.emplace_back("lambda_pw", lpw);
        vec("u_p", up);
        vec("u_w", uw);
        vec("u_pw", upw);
        vec("Q'", Qp);
        vec("Sigma'", Sigma);
        vec("V'", Vp);
        return out;
    }
};

// Build the observables for given central values of |P| and |W|.  The default
// keeps them as the symbols u and w.

inline ObservableSet build_observables(const Scalar& u, const Scalar& w) {
    if (u.is_zero()) throw DomainError("ordinary representation requires |P| != 0");
    if (w.is_zero()) throw DomainError("ordinary representation requires |W| != 0");

    AlgebraDef flat = catalog_get("galilei");
    AlgebraDef rel = catalog_get("poincare");
    DeformationResult r = run_deformation(flat, rel);
    RootDetermination roots = positive_roots(r);

    // The positive roots are expressed through the symbols u and w; rebind
    // those to the requested central values before substituting the roots.
    std::map<int, Scalar> uw;
    uw.emplace(intern_param("u"), u);
    uw.emplace(intern_param("w"), w);
    std::map<int, Scalar> sub = uw;
    for (auto& rt : roots.roots) sub.emplace(rt.unknown, rt.value.substitute(uw));

    BasisPtr lb = flat.basis->adjoin_inverse("H");
    auto fix = [&](const Element& e) {
        return lift_to(e, lb).map_coeffs([&](const Scalar& c) { return c.substitute(sub); });
    };

    ObservableSet s;
    s.basis = lb;
    s.u = u;
    s.w = w;
    s.Hp = fix(r.deformed.at("H"));
    for (int i = 1; i <= 3; ++i) {
        s.Pp.push_back(fix(r.deformed.at("P" + std::to_string(i))));
        s.Kp.push_back(fix(r.deformed.at("K" + std::to_string(i))));
        s.Jp.push_back(fix(r.deformed.at("J" + std::to_string(i))));
    }

    std::vector<Element> P = vec3(lb, "P"), K = vec3(lb, "K"), J = vec3(lb, "J");
    std::vector<Element> W = wedge3(K, P), PW = wedge3(P, W);
    s.relations.push_back(CentralRelation{"c1", dot3(P, P), u * u});
    s.relations.push_back(CentralRelation{"c2", dot3(W, W), w * w});

    Scalar uw_norm = u * w;
    s.up = scale3(P, u.inv());
    s.uw = scale3(W, w.inv());
    s.upw = scale3(PW, uw_norm.inv());
    s.lp = dot3(J, P).scaled(u.inv());
    s.lw = dot3(J, W).scaled(w.inv());
    s.lpw = dot3(J, PW).scaled(uw_norm.inv());

    s.W0p = dot3(s.Jp, s.Pp);
    Scalar g2 = Scalar::param("gamma") * Scalar::param("gamma");
    std::vector<Element> KpPp = wedge3(s.Kp, s.Pp);
    for (int i = 0; i < 3; ++i)
        s.Wp.push_back((s.Hp * s.Jp[static_cast<size_t>(i)]).scaled(Scalar::zero() - g2) +
                       KpPp[static_cast<size_t>(i)]);

    Element Hinv = Element::gen(lb, "Hinv");
    Scalar half_c2 = (g2 * Scalar(2)).inv();
    for (int i = 0; i < 3; ++i)
        s.Qp.push_back((Hinv * s.Kp[static_cast<size_t>(i)] +
                        s.Kp[static_cast<size_t>(i)] * Hinv)
                           .scaled(half_c2));

    for (int k = 0; k < 3; ++k) {
        Element sig = s.Jp[static_cast<size_t>(k)];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (int e = epsilon(i + 1, j + 1, k + 1))
                    sig -= (s.Qp[static_cast<size_t>(i)] * s.Pp[static_cast<size_t>(j)])
                               .scaled(Scalar(static_cast<long>(e)));
        s.Sigma.push_back(sig);
    }

    for (int i = 0; i < 3; ++i)
        s.Vp.push_back(commutator(s.Qp[static_cast<size_t>(i)], s.Hp));
    return s;
}

inline ObservableSet build_observables() {
    return build_observables(Scalar::param("u"), Scalar::param("w"));
}

namespace observables_detail {

inline ObservableCheck reduce_check(const CentralReducer& red, const std::string& name,
                                    const Element& residual) {
    Reduction rr = red.reduce(residual);
    ObservableCheck c{name, "closed", ""};
    if (!rr.reduced.is_zero()) {
        c.status = "failed";
        c.witness = rr.reduced.str();
    }
    return c;
}

} // namespace observables_detail

// The vector-form displays: how each derived operator is expressed through
// the flat generators once the central character is fixed.

inline ObservableReport check_vector_forms(const ObservableSet& s) {
    using observables_detail::reduce_check;
    CentralReducer red(s.basis, s.relations);
    ObservableReport rep;

    std::vector<Element> P = vec3(s.basis, "P"), K = vec3(s.basis, "K"), J = vec3(s.basis, "J");
    std::vector<Element> W = wedge3(K, P);
    Element H = Element::gen(s.basis, "H");
    Element Hinv = Element::gen(s.basis, "Hinv");
    Scalar g = Scalar::param("gamma");
    Scalar g2 = g * g;

    rep.items.push_back(reduce_check(red, "H' = H", s.Hp - H));
    for (int i = 0; i < 3; ++i) {
        auto k = static_cast<size_t>(i);
        std::string n = std::to_string(i + 1);
        rep.items.push_back(reduce_check(red, "J'" + n + " = J" + n, s.Jp[k] - J[k]));
        // c P' = H (P ^ W)/(uw)
        rep.items.push_back(
            reduce_check(red, "c P'" + n + " = H u_pw" + n, s.Pp[k].scaled(g.inv()) - H * s.upw[k]));
        // c K' = H ( (|W|/P^2) u_p + (K ^ W)/(uw) ) + lambda_p u_w - lambda_w u_p
        //        + 3/2 u_pw
        Element ck = (H * (s.up[k].scaled(s.w / (s.u * s.u)) +
                           wedge3(K, W)[k].scaled((s.u * s.w).inv()))) +
                     s.lp * s.uw[k] - s.lw * s.up[k] + s.upw[k].scaled(Scalar::rational(3, 2));
        rep.items.push_back(reduce_check(red, "c K'" + n + " (vector form)",
                                         s.Kp[k].scaled(g.inv()) - ck));
    }

    // c^2 P'^2 = H'^2 and c^2 K' ^ P' = H J - H lambda_pw u_pw.
    rep.items.push_back(reduce_check(red, "c^2 P'.P' = H'^2",
                                     dot3(s.Pp, s.Pp).scaled(g2.inv()) - s.Hp * s.Hp));
    std::vector<Element> KpPp = wedge3(s.Kp, s.Pp);
    for (int i = 0; i < 3; ++i) {
        auto k = static_cast<size_t>(i);
        std::string n = std::to_string(i + 1);
        rep.items.push_back(reduce_check(
            red, "c^2 (K' ^ P')" + n + " = H J" + n + " - H lambda_pw u_pw" + n,
            KpPp[k].scaled(g2.inv()) - (H * J[k] - H * (s.lpw * s.upw[k]))));
        // W'0 and W' through the helicity lambda_pw.
        rep.items.push_back(reduce_check(red, "W'" + n + " = -gamma^2 H lambda_pw u_pw" + n,
                                         s.Wp[k] + (H * (s.lpw * s.upw[k])).scaled(g2)));
        rep.items.push_back(reduce_check(red, "W'" + n + " = -gamma W'0 u_pw" + n,
                                         s.Wp[k] + (s.W0p * s.upw[k]).scaled(g)));
        // (1/c) Q' = (|W|/P^2) u_p + (K ^ W)/(uw)
        //            + (1/H)(lambda_p u_w - lambda_w u_p + u_pw)
        Element cq = s.up[k].scaled(s.w / (s.u * s.u)) +
                     wedge3(K, W)[k].scaled((s.u * s.w).inv()) +
                     Hinv * (s.lp * s.uw[k] - s.lw * s.up[k] + s.upw[k]);
        rep.items.push_back(reduce_check(red, "(1/c) Q'" + n + " (vector form)",
                                         s.Qp[k].scaled(g) - cq));
        // Sigma' = J - lambda_p u_p - lambda_w u_w
        rep.items.push_back(
            reduce_check(red, "Sigma'" + n + " = J" + n + " - lambda_p u_p" + n +
                                  " - lambda_w u_w" + n,
                         s.Sigma[k] - (J[k] - s.lp * s.up[k] - s.lw * s.uw[k])));
    }
    rep.items.push_back(reduce_check(red, "W'0 = gamma H lambda_pw",
                                     s.W0p - (H * s.lpw).scaled(g)));
    rep.items.push_back(reduce_check(red, "c^2 W'.W' = W'0^2",
                                     dot3(s.Wp, s.Wp).scaled(g2.inv()) - s.W0p * s.W0p));
    return rep;
}

// The three helicity projections close so(3), and the distinguished one
// commutes with the Hamiltonian.

inline ObservableReport check_so3_helicities(const ObservableSet& s) {
    using observables_detail::reduce_check;
    CentralReducer red(s.basis, s.relations);
    Element H = Element::gen(s.basis, "H");
    ObservableReport rep;
    rep.items.push_back(reduce_check(red, "[lambda_w, lambda_p] = lambda_pw",
                                     commutator(s.lw, s.lp) - s.lpw));
    rep.items.push_back(reduce_check(red, "[lambda_pw, lambda_w] = lambda_p",
                                     commutator(s.lpw, s.lw) - s.lp));
    rep.items.push_back(reduce_check(red, "[lambda_p, lambda_pw] = lambda_w",
                                     commutator(s.lp, s.lpw) - s.lw));
    rep.items.push_back(reduce_check(red, "[lambda_p, lambda_p] = 0",
                                     commutator(s.lp, s.lp)));
    rep.items.push_back(reduce_check(red, "[lambda_pw, H] = 0", commutator(s.lpw, H)));
    return rep;
}

// Canonical pairs, rotation covariance, and the position-position bracket.

inline ObservableReport check_position_algebra(const ObservableSet& s) {
    using observables_detail::reduce_check;
    CentralReducer red(s.basis, s.relations);
    ObservableReport rep;
    Element Hinv = Element::gen(s.basis, "Hinv");
    Scalar g2 = Scalar::param("gamma") * Scalar::param("gamma");

    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto a = static_cast<size_t>(i), b = static_cast<size_t>(j);
            std::string nm = "[Q'" + std::to_string(i + 1) + ", P'" + std::to_string(j + 1) +
                             "] = " + (i == j ? "1" : "0");
            Element res = commutator(s.Qp[a], s.Pp[b]);
            if (i == j) res -= Element::unit(s.basis);
            rep.items.push_back(reduce_check(red, nm, res));
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto a = static_cast<size_t>(i), b = static_cast<size_t>(j);
            Element expected = Element::zero(s.basis);
            for (int k = 0; k < 3; ++k)
                if (int e = epsilon(i + 1, j + 1, k + 1))
                    expected += s.Qp[static_cast<size_t>(k)].scaled(Scalar(static_cast<long>(e)));
            rep.items.push_back(reduce_check(red,
                                             "[J'" + std::to_string(i + 1) + ", Q'" +
                                                 std::to_string(j + 1) + "] = eps Q'",
                                             commutator(s.Jp[a], s.Qp[b]) - expected));
        }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            auto a = static_cast<size_t>(i), b = static_cast<size_t>(j);
            Element inner = s.Qp[a] * s.Pp[b] - s.Qp[b] * s.Pp[a];
            for (int k = 0; k < 3; ++k)
                if (int e = epsilon(i + 1, j + 1, k + 1))
                    inner -= s.Jp[static_cast<size_t>(k)].scaled(Scalar(static_cast<long>(e)));
            Element rhs = (Hinv * Hinv * inner).scaled(g2.inv());
            rep.items.push_back(reduce_check(red,
                                             "[Q'" + std::to_string(i + 1) + ", Q'" +
                                                 std::to_string(j + 1) +
                                                 "] = (c^2/H'^2)(Q'P' - Q'P' - eps J')",
                                             commutator(s.Qp[a], s.Qp[b]) - rhs));
        }
    return rep;
}

// The velocity operator: V' = [Q', H'] = c (P ^ W)/(uw) = c^2 P'/H', with
// V'.V' = c^2.

inline ObservableReport check_velocity(const ObservableSet& s) {
    using observables_detail::reduce_check;
    CentralReducer red(s.basis, s.relations);
    ObservableReport rep;
    Element Hinv = Element::gen(s.basis, "Hinv");
    Scalar g = Scalar::param("gamma");
    Scalar g2 = g * g;
    for (int i = 0; i < 3; ++i) {
        auto k = static_cast<size_t>(i);
        std::string n = std::to_string(i + 1);
        rep.items.push_back(reduce_check(red, "V'" + n + " = c u_pw" + n,
                                         s.Vp[k] - s.upw[k].scaled(g.inv())));
        rep.items.push_back(reduce_check(red, "V'" + n + " = c^2 P'" + n + " / H'",
                                         s.Vp[k] - (s.Pp[k] * Hinv).scaled(g2.inv())));
    }
    rep.items.push_back(reduce_check(red, "V'.V' = c^2",
                                     dot3(s.Vp, s.Vp) - Element::unit(s.basis, g2.inv())));
    return rep;
}

// Values of target-algebra invariants on the observable generators.  Each
// invariant must reduce to a scalar; a non-scalar residue is a hard error
// carrying the residue as witness.

inline std::vector<Scalar> evaluate_deformed_casimirs(const ObservableSet& s,
                                                      const std::vector<Element>& target_casimirs) {
    std::map<std::string, Element> img{{"H", s.Hp}};
    for (int i = 0; i < 3; ++i) {
        img.emplace("P" + std::to_string(i + 1), s.Pp[static_cast<size_t>(i)]);
        img.emplace("K" + std::to_string(i + 1), s.Kp[static_cast<size_t>(i)]);
        img.emplace("J" + std::to_string(i + 1), s.Jp[static_cast<size_t>(i)]);
    }
    CentralReducer red(s.basis, s.relations);
    std::vector<Scalar> out;
    for (auto& cas : target_casimirs) {
        Element ev = evaluate_on_deformed(cas, img, s.basis);
        Reduction rr = red.reduce(ev, ev.degree());
        if (!rr.reduced.is_scalar())
            throw DomainError("invariant does not reduce to a scalar on the deformed generators: " +
                              rr.reduced.str());
        out.push_back(rr.reduced.scalar_part());
    }
    return out;
}

} // namespace kindef

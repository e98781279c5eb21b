#pragma once

// Hand-built bracket tables and small utilities shared by the kernel tests.
// These are written out independently of the catalog builders on purpose:
// the catalog is tested against these fixtures, not the other way round.

#include <random>
#include <vector>

#include "kindef/pbw.hpp"

namespace testutil {

using namespace kindef;

inline int eps(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0;
    if ((i == 1 && j == 2 && k == 3) || (i == 2 && j == 3 && k == 1) || (i == 3 && j == 1 && k == 2))
        return 1;
    return -1;
}

struct GalileiGens {
    BasisPtr b;
    int H;
    int K[4], P[4], J[4]; // 1-based
    int Xi = -1;           // extended central charge, -1 when absent
    int Hinv = -1;
};

// Shared so(3)-covariant part: [Ji,Jj], [Ji,Pj], [Ji,Kj] plus [Ki,H] = Pi.
inline void fill_galilei_common(std::shared_ptr<LieBasis>& b, GalileiGens& g) {
    auto E = [&](int idx, long c = 1) { return Element::gen(b, idx, Scalar(c)); };
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            if (i == j) continue;
            for (int k = 1; k <= 3; ++k) {
                int s = eps(i, j, k);
                if (s == 0) continue;
                b->set_bracket(g.J[i], g.J[j], E(g.J[k], s));
                b->set_bracket(g.J[i], g.P[j], E(g.P[k], s));
                b->set_bracket(g.J[i], g.K[j], E(g.K[k], s));
            }
        }
    for (int i = 1; i <= 3; ++i) b->set_bracket(g.K[i], g.H, E(g.P[i]));
}

inline GalileiGens make_galilei() {
    auto b = LieBasis::create({"H", "K1", "K2", "K3", "P1", "P2", "P3", "J1", "J2", "J3"});
    GalileiGens g;
    g.b = b;
    g.H = 0;
    for (int i = 1; i <= 3; ++i) {
        g.K[i] = i;
        g.P[i] = 3 + i;
        g.J[i] = 6 + i;
    }
    fill_galilei_common(b, g);
    b->freeze();
    g.b = b;
    return g;
}

inline GalileiGens make_extended_galilei() {
    auto b = LieBasis::create({"Xi", "H", "K1", "K2", "K3", "P1", "P2", "P3", "J1", "J2", "J3"});
    GalileiGens g;
    g.b = b;
    g.Xi = 0;
    g.H = 1;
    for (int i = 1; i <= 3; ++i) {
        g.K[i] = 1 + i;
        g.P[i] = 4 + i;
        g.J[i] = 7 + i;
    }
    fill_galilei_common(b, g);
    Scalar m = Scalar::param("m");
    for (int i = 1; i <= 3; ++i)
        b->set_bracket(g.P[i], g.K[i], Element::gen(b, g.Xi, -m));
    b->freeze();
    g.b = b;
    return g;
}

// Poincare in the same generator frame: gamma = 1/c, kappa2 = -gamma^2.
// [Ki,H] = Pi, [Pi,Ki] = -gamma^2 H, [Ki,Kj] = -gamma^2 eps_ijk Jk.
inline GalileiGens make_poincare() {
    auto b = LieBasis::create({"H", "K1", "K2", "K3", "P1", "P2", "P3", "J1", "J2", "J3"});
    GalileiGens g;
    g.b = b;
    g.H = 0;
    for (int i = 1; i <= 3; ++i) {
        g.K[i] = i;
        g.P[i] = 3 + i;
        g.J[i] = 6 + i;
    }
    fill_galilei_common(b, g);
    Scalar k2 = -(Scalar::param("gamma") * Scalar::param("gamma"));
    for (int i = 1; i <= 3; ++i) b->set_bracket(g.P[i], g.K[i], Element::gen(b, g.H, k2));
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            if (i == j) continue;
            for (int k = 1; k <= 3; ++k)
                if (int s = eps(i, j, k)) b->set_bracket(g.K[i], g.K[j], Element::gen(b, g.J[k], k2 * Scalar(s)));
        }
    b->freeze();
    g.b = b;
    return g;
}

inline Element gen(const GalileiGens& g, int idx) { return Element::gen(g.b, idx); }

// W_i = (K ^ P)_i = eps_{ijk} K_j P_k (K and P commute in the plain algebra).
inline Element W(const GalileiGens& g, int i) {
    Element r = Element::zero(g.b);
    for (int j = 1; j <= 3; ++j)
        for (int k = 1; k <= 3; ++k) {
            int s = eps(i, j, k);
            if (s == 0) continue;
            r += (gen(g, g.K[j]) * gen(g, g.P[k])).scaled(Scalar(s));
        }
    return r;
}

inline Element dot(const std::vector<Element>& a, const std::vector<Element>& b) {
    Element r = Element::zero(a.at(0).basis());
    for (size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

inline std::vector<Element> Jvec(const GalileiGens& g) {
    return {gen(g, g.J[1]), gen(g, g.J[2]), gen(g, g.J[3])};
}
inline std::vector<Element> Pvec(const GalileiGens& g) {
    return {gen(g, g.P[1]), gen(g, g.P[2]), gen(g, g.P[3])};
}
inline std::vector<Element> Kvec(const GalileiGens& g) {
    return {gen(g, g.K[1]), gen(g, g.K[2]), gen(g, g.K[3])};
}
inline std::vector<Element> Wvec(const GalileiGens& g) { return {W(g, 1), W(g, 2), W(g, 3)}; }

// Poincare invariants in the frame above: kappa2 = -gamma^2.
inline Element poincare_c1(const GalileiGens& g) {
    Scalar k2 = -(Scalar::param("gamma") * Scalar::param("gamma"));
    auto P = Pvec(g);
    return dot(P, P) + (gen(g, g.H) * gen(g, g.H)).scaled(k2);
}
inline Element poincare_w0(const GalileiGens& g) { return dot(Jvec(g), Pvec(g)); }
inline std::vector<Element> poincare_wvec(const GalileiGens& g) {
    Scalar k2 = -(Scalar::param("gamma") * Scalar::param("gamma"));
    std::vector<Element> r;
    for (int i = 1; i <= 3; ++i)
        r.push_back((gen(g, g.H) * gen(g, g.J[i])).scaled(k2) + W(g, i));
    return r;
}
inline Element poincare_c2(const GalileiGens& g) {
    Scalar k2 = -(Scalar::param("gamma") * Scalar::param("gamma"));
    auto wp = poincare_wvec(g);
    Element w0 = poincare_w0(g);
    return dot(wp, wp) + (w0 * w0).scaled(k2);
}

// Random low-degree element with small integer coefficients.
inline Element random_element(std::mt19937_64& rng, const BasisPtr& b, int max_terms = 3,
                              int max_deg = 2) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> gi(0, b->size() - 1);
    std::uniform_int_distribution<long> co(-3, 3);
    Element e = Element::zero(b);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        std::vector<int> w;
        int d = deg(rng);
        for (int q = 0; q < d; ++q) w.push_back(gi(rng));
        long c = co(rng);
        if (c == 0) c = 1;
        e += Element::normal_order_word(b, w).scaled(Scalar(c));
    }
    return e;
}

} // namespace testutil

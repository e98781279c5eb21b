#pragma once

// Spin-matrix blocks: square matrices over the exact scalar field realizing
// the real-structure-constant rotation relations
//
//     [S_i, S_j] = eps_{ijk} S_k       (no imaginary unit in the bracket),
//
// exactly for s in {0, 1/2, 1}.  With this convention S.S is the scalar
// matrix -s(s+1); the value is recorded as computed.  Larger spins are
// served by a floating-point fallback (standard ladder construction times
// -i) with a residual check instead of exact entries.

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "kindef/error.hpp"
#include "kindef/scalar.hpp"
#include "kindef/vectors.hpp"

namespace kindef {

struct SpinBlock {
    int dim = 1;
    std::vector<Scalar> a; // row-major, dim*dim entries

    static SpinBlock zero(int dim) {
        SpinBlock m;
        m.dim = dim;
        m.a.assign(static_cast<size_t>(dim) * static_cast<size_t>(dim), Scalar::zero());
        return m;
    }
    static SpinBlock identity(int dim, const Scalar& c = Scalar(1)) {
        SpinBlock m = zero(dim);
        for (int i = 0; i < dim; ++i) m.at(i, i) = c;
        return m;
    }

    Scalar& at(int r, int c) { return a[static_cast<size_t>(r) * static_cast<size_t>(dim) + static_cast<size_t>(c)]; }
    const Scalar& at(int r, int c) const {
        return a[static_cast<size_t>(r) * static_cast<size_t>(dim) + static_cast<size_t>(c)];
    }

    bool is_zero() const {
        for (auto& x : a)
            if (!x.is_zero()) return false;
        return true;
    }
    // True when the matrix is c*identity; c reported through `scalar`.
    bool is_scalar(Scalar& scalar) const {
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                if (r != c && !at(r, c).is_zero()) return false;
        for (int r = 1; r < dim; ++r)
            if (!(at(r, r) - at(0, 0)).is_zero()) return false;
        scalar = at(0, 0);
        return true;
    }

    friend bool operator==(const SpinBlock& x, const SpinBlock& y) {
        if (x.dim != y.dim) return false;
        for (size_t i = 0; i < x.a.size(); ++i)
            if (!(x.a[i] - y.a[i]).is_zero()) return false;
        return true;
    }
    friend SpinBlock operator+(const SpinBlock& x, const SpinBlock& y) {
        SpinBlock m = x;
        for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = m.a[i] + y.a[i];
        return m;
    }
    friend SpinBlock operator-(const SpinBlock& x, const SpinBlock& y) {
        SpinBlock m = x;
        for (size_t i = 0; i < m.a.size(); ++i) m.a[i] = m.a[i] - y.a[i];
        return m;
    }
    friend SpinBlock operator*(const SpinBlock& x, const SpinBlock& y) {
        SpinBlock m = zero(x.dim);
        for (int r = 0; r < x.dim; ++r)
            for (int k = 0; k < x.dim; ++k) {
                if (x.at(r, k).is_zero()) continue;
                for (int c = 0; c < x.dim; ++c) m.at(r, c) = m.at(r, c) + x.at(r, k) * y.at(k, c);
            }
        return m;
    }
    SpinBlock scaled(const Scalar& c) const {
        SpinBlock m = *this;
        for (auto& x : m.a) x = x * c;
        return m;
    }
};

inline SpinBlock commutator(const SpinBlock& x, const SpinBlock& y) { return x * y - y * x; }

namespace spin_detail {

inline std::string spin_label(int twice_s) {
    if (twice_s % 2 == 0) return std::to_string(twice_s / 2);
    return std::to_string(twice_s) + "/2";
}

} // namespace spin_detail

// Exact spin blocks for s given as 2s in {0, 1, 2}.  s = 1/2 uses
// S_j = -(i/2) sigma_j; s = 1 the adjoint matrices (S_i)_{jk} = -eps_{ijk}.

inline std::array<SpinBlock, 3> spin_matrices(int twice_s) {
    if (twice_s < 0 || twice_s > 2)
        throw UnsupportedError("spin " + spin_detail::spin_label(twice_s) +
                               " is not in the exact set {0, 1/2, 1}; rerun with the "
                               "floating-point fallback check");
    if (twice_s == 0)
        return {SpinBlock::zero(1), SpinBlock::zero(1), SpinBlock::zero(1)};
    if (twice_s == 1) {
        Scalar i = Scalar::imag_unit();
        Scalar h = Scalar::rational(1, 2), mh = Scalar::rational(-1, 2);
        SpinBlock s1 = SpinBlock::zero(2), s2 = SpinBlock::zero(2), s3 = SpinBlock::zero(2);
        s1.at(0, 1) = i * mh;
        s1.at(1, 0) = i * mh;
        s2.at(0, 1) = mh;
        s2.at(1, 0) = h;
        s3.at(0, 0) = i * mh;
        s3.at(1, 1) = i * h;
        return {s1, s2, s3};
    }
    std::array<SpinBlock, 3> s{SpinBlock::zero(3), SpinBlock::zero(3), SpinBlock::zero(3)};
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k)
                if (int e = epsilon(i, j, k))
                    s[static_cast<size_t>(i - 1)].at(j - 1, k - 1) = Scalar(-e);
    return s;
}

// S.S for a spin triple; scalar by construction for the supported set.
inline SpinBlock spin_square(const std::array<SpinBlock, 3>& s) {
    return s[0] * s[0] + s[1] * s[1] + s[2] * s[2];
}

// ---------------------------------------------------------------------------
// Floating-point fallback for arbitrary spin: the standard Hermitian ladder
// construction times -i gives the real-structure-constant convention.  The
// check reports the largest residual entry over all bracket relations and
// over S.S + s(s+1).

using SpinBlockF = std::vector<std::complex<double>>; // row-major dim*dim

inline std::array<SpinBlockF, 3> spin_matrices_float(int twice_s) {
    if (twice_s < 0) throw DomainError("spin must be non-negative");
    int dim = twice_s + 1;
    double s = twice_s / 2.0;
    auto idx = [dim](int r, int c) { return static_cast<size_t>(r) * static_cast<size_t>(dim) + static_cast<size_t>(c); };
    SpinBlockF jp(static_cast<size_t>(dim) * static_cast<size_t>(dim)), jm = jp, jz = jp;
    for (int k = 0; k < dim; ++k) {
        double m = s - k; // row k holds |s, m>
        jz[idx(k, k)] = m;
        if (k > 0) jp[idx(k - 1, k)] = std::sqrt(s * (s + 1) - (m + 1) * m); // J+ |s,m> -> |s,m+1>
        if (k + 1 < dim) jm[idx(k + 1, k)] = std::sqrt(s * (s + 1) - (m - 1) * m);
    }
    std::array<SpinBlockF, 3> out;
    std::complex<double> I(0.0, 1.0);
    out[0].resize(jz.size());
    out[1].resize(jz.size());
    out[2].resize(jz.size());
    for (size_t t = 0; t < jz.size(); ++t) {
        out[0][t] = -I * 0.5 * (jp[t] + jm[t]);
        out[1][t] = -I * (jp[t] - jm[t]) / (2.0 * I);
        out[2][t] = -I * jz[t];
    }
    return out;
}

// Largest residual over [S_i,S_j] - eps_{ijk} S_k and S.S + s(s+1) id.
inline double spin_float_residual(const std::array<SpinBlockF, 3>& s, int twice_s) {
    size_t n = s[0].size();
    int dim = twice_s + 1;
    auto idx = [dim](int r, int c) { return static_cast<size_t>(r) * static_cast<size_t>(dim) + static_cast<size_t>(c); };
    auto mul = [&](const SpinBlockF& x, const SpinBlockF& y) {
        SpinBlockF m(n);
        for (int r = 0; r < dim; ++r)
            for (int k = 0; k < dim; ++k)
                for (int c = 0; c < dim; ++c) m[idx(r, c)] += x[idx(r, k)] * y[idx(k, c)];
        return m;
    };
    double worst = 0.0;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            auto si = s[static_cast<size_t>(i - 1)], sj = s[static_cast<size_t>(j - 1)];
            SpinBlockF lhs = mul(si, sj), rhs = mul(sj, si);
            for (size_t t = 0; t < n; ++t) lhs[t] -= rhs[t];
            for (int k = 1; k <= 3; ++k)
                if (int e = epsilon(i, j, k))
                    for (size_t t = 0; t < n; ++t)
                        lhs[t] -= double(e) * s[static_cast<size_t>(k - 1)][t];
            for (auto& v : lhs) worst = std::max(worst, std::abs(v));
        }
    SpinBlockF sq = mul(s[0], s[0]);
    for (auto part : {1, 2}) {
        SpinBlockF m = mul(s[static_cast<size_t>(part)], s[static_cast<size_t>(part)]);
        for (size_t t = 0; t < n; ++t) sq[t] += m[t];
    }
    double ss = (twice_s / 2.0) * (twice_s / 2.0 + 1.0);
    for (int r = 0; r < dim; ++r) sq[idx(r, r)] += ss;
    for (auto& v : sq) worst = std::max(worst, std::abs(v));
    return worst;
}

} // namespace kindef

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "kindef/error.hpp"

namespace kindef {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_str(const Rat& r) {
    return r.str();
}

// Gaussian rational a + b*i with exact components.
struct GRat {
    Rat re;
    Rat im;

    GRat() = default;
    GRat(long v) : re(v), im(0) {}
    GRat(Rat r) : re(std::move(r)), im(0) {}
    GRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static GRat imag_unit() { return GRat(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }
    bool is_real() const { return im == 0; }

    GRat operator-() const { return GRat(-re, -im); }
    GRat conj() const { return GRat(re, -im); }

    GRat& operator+=(const GRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GRat& operator-=(const GRat& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend GRat operator+(GRat a, const GRat& b) { return a += b; }
    friend GRat operator-(GRat a, const GRat& b) { return a -= b; }

    friend GRat operator*(const GRat& a, const GRat& b) {
        return GRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    GRat& operator*=(const GRat& o) { return *this = *this * o; }

    GRat inv() const {
        if (is_zero()) throw DomainError("division by zero");
        Rat n = re * re + im * im;
        return GRat(re / n, -im / n);
    }
    friend GRat operator/(const GRat& a, const GRat& b) { return a * b.inv(); }
    GRat& operator/=(const GRat& o) { return *this = *this * o.inv(); }

    bool operator==(const GRat&) const = default;

    // True when a rendering of this coefficient needs parentheses inside a
    // product (both components nonzero).
    bool needs_parens() const { return re != 0 && im != 0; }

    // Minimal text form: "3/2", "i", "-2*i", "1+i", "2-3*i".
    std::string str() const {
        if (im == 0) return rat_str(re);
        std::string imag;
        if (im == 1)
            imag = "i";
        else if (im == -1)
            imag = "-i";
        else
            imag = rat_str(im) + "*i";
        if (re == 0) return imag;
        if (im > 0) return rat_str(re) + "+" + imag;
        // imag already starts with '-'
        if (im == -1) return rat_str(re) + "-i";
        return rat_str(re) + "-" + rat_str(-im) + "*i";
    }
};

// Exact integer square root test; returns true and sets root when n = root^2.
inline bool perfect_square(const Int& n, Int& root) {
    if (n < 0) return false;
    root = boost::multiprecision::sqrt(n);
    return root * root == n;
}

// Exact square root of a nonnegative rational, if it exists.
inline bool perfect_square(const Rat& q, Rat& root) {
    Int np, dp;
    if (!perfect_square(boost::multiprecision::numerator(q), np)) return false;
    if (!perfect_square(boost::multiprecision::denominator(q), dp)) return false;
    root = Rat(np, dp);
    return true;
}

} // namespace kindef

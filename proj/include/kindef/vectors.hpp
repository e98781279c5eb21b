#pragma once

#include <string>
#include <vector>

#include "kindef/pbw.hpp"

namespace kindef {

// Totally antisymmetric symbol with epsilon(1,2,3) = +1.
inline int epsilon(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0;
    if ((i == 1 && j == 2 && k == 3) || (i == 2 && j == 3 && k == 1) || (i == 3 && j == 1 && k == 2))
        return 1;
    return -1;
}

// The three components of a named generator triple (e.g. "P" -> P1, P2, P3).
inline std::vector<Element> vec3(const BasisPtr& b, const std::string& base) {
    std::vector<Element> v;
    for (int i = 1; i <= 3; ++i) v.push_back(Element::gen(b, base + std::to_string(i)));
    return v;
}

inline Element dot3(const std::vector<Element>& a, const std::vector<Element>& b) {
    Element r = Element::zero(a.at(0).basis());
    for (size_t i = 0; i < 3; ++i) r += a[i] * b[i];
    return r;
}

inline std::vector<Element> wedge3(const std::vector<Element>& a, const std::vector<Element>& b) {
    std::vector<Element> r;
    for (int i = 1; i <= 3; ++i) {
        Element ri = Element::zero(a.at(0).basis());
        for (int j = 1; j <= 3; ++j)
            for (int k = 1; k <= 3; ++k)
                if (int s = epsilon(i, j, k))
                    ri += (a[static_cast<size_t>(j - 1)] * b[static_cast<size_t>(k - 1)]).scaled(Scalar(static_cast<long>(s)));
        r.push_back(ri);
    }
    return r;
}

inline std::vector<Element> scale3(const std::vector<Element>& a, const Scalar& c) {
    std::vector<Element> r;
    for (auto& x : a) r.push_back(x.scaled(c));
    return r;
}

inline std::vector<Element> add3(const std::vector<Element>& a, const std::vector<Element>& b) {
    std::vector<Element> r;
    for (size_t i = 0; i < 3; ++i) r.push_back(a[i] + b[i]);
    return r;
}

inline std::vector<Element> sub3(const std::vector<Element>& a, const std::vector<Element>& b) {
    std::vector<Element> r;
    for (size_t i = 0; i < 3; ++i) r.push_back(a[i] - b[i]);
    return r;
}

} // namespace kindef

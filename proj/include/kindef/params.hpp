#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kindef/error.hpp"

namespace kindef {

inline bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return s != "i"; // reserved imaginary-unit literal
}

// Global interner for free parameter symbols. Ids are stable for the
// lifetime of the process; ordering between two params depends only on
// their names, so interning new params later never disturbs previously
// built monomials.
class Params {
  public:
    static Params& instance() {
        static Params p;
        return p;
    }

    int intern(const std::string& name) {
        auto it = ids_.find(name);
        if (it != ids_.end()) return it->second;
        if (!valid_identifier(name))
            throw DomainError("invalid parameter name '" + name + "'");
        int id = static_cast<int>(names_.size());
        names_.push_back(name);
        ids_.emplace(name, id);
        return id;
    }

    int find(const std::string& name) const {
        auto it = ids_.find(name);
        return it == ids_.end() ? -1 : it->second;
    }

    const std::string& name(int id) const { return names_.at(static_cast<size_t>(id)); }

    // Name-based order: stable under later interning.
    bool less(int a, int b) const { return name(a) < name(b); }

  private:
    Params() = default;
    std::vector<std::string> names_;
    std::map<std::string, int> ids_;
};

inline int intern_param(const std::string& name) { return Params::instance().intern(name); }
inline const std::string& param_name(int id) { return Params::instance().name(id); }

// Commutative power product of parameters; entries sorted ascending by
// parameter name and all exponents positive.
struct PMono {
    std::vector<std::pair<int, int>> e;

    static PMono one() { return {}; }
    static PMono var(int id, int k = 1) {
        PMono m;
        if (k != 0) m.e.emplace_back(id, k);
        return m;
    }

    bool is_one() const { return e.empty(); }
    int degree() const {
        int d = 0;
        for (auto& [id, k] : e) d += k;
        return d;
    }
    int exponent_of(int id) const {
        for (auto& [p, k] : e)
            if (p == id) return k;
        return 0;
    }

    PMono mul(const PMono& o) const {
        PMono r;
        auto& P = Params::instance();
        size_t i = 0, j = 0;
        while (i < e.size() || j < o.e.size()) {
            if (j == o.e.size() || (i < e.size() && P.less(e[i].first, o.e[j].first)))
                r.e.push_back(e[i++]);
            else if (i == e.size() || P.less(o.e[j].first, e[i].first))
                r.e.push_back(o.e[j++]);
            else {
                int k = e[i].second + o.e[j].second;
                if (k != 0) r.e.emplace_back(e[i].first, k);
                ++i, ++j;
            }
        }
        return r;
    }

    bool divides(const PMono& o) const {
        for (auto& [id, k] : e)
            if (o.exponent_of(id) < k) return false;
        return true;
    }

    // Requires divides(o) == false is allowed: caller must check.
    PMono div_into(const PMono& o) const { // returns o / *this
        PMono r;
        auto& P = Params::instance();
        size_t i = 0;
        for (auto& [id, k] : o.e) {
            while (i < e.size() && P.less(e[i].first, id)) ++i;
            int sub = (i < e.size() && e[i].first == id) ? e[i].second : 0;
            if (k - sub > 0) r.e.emplace_back(id, k - sub);
        }
        return r;
    }

    PMono gcd(const PMono& o) const {
        PMono r;
        for (auto& [id, k] : e) {
            int m = std::min(k, o.exponent_of(id));
            if (m > 0) r.e.emplace_back(id, m);
        }
        return r;
    }

    PMono pow(int n) const {
        PMono r;
        for (auto& [id, k] : e) r.e.emplace_back(id, k * n);
        return r;
    }

    bool operator==(const PMono&) const = default;

    std::string str() const {
        std::string s;
        for (auto& [id, k] : e) {
            if (!s.empty()) s += "*";
            s += param_name(id);
            if (k != 1) s += "^" + std::to_string(k);
        }
        return s;
    }
};

// Graded lexicographic order on parameter names: compare total degree
// first; ties broken by the alphabetically earliest parameter with a
// differing exponent (larger exponent there means larger monomial).
struct PMonoLess {
    bool operator()(const PMono& a, const PMono& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        auto& P = Params::instance();
        size_t i = 0, j = 0;
        while (i < a.e.size() && j < b.e.size()) {
            if (a.e[i].first == b.e[j].first) {
                if (a.e[i].second != b.e[j].second)
                    return a.e[i].second < b.e[j].second;
                ++i, ++j;
            } else if (P.less(a.e[i].first, b.e[j].first)) {
                return false; // a has the earlier var with positive exponent -> a larger
            } else {
                return true;
            }
        }
        if (i < a.e.size()) return false;
        if (j < b.e.size()) return true;
        return false;
    }
};

} // namespace kindef

#include "rigver/mpoly.hpp"

#include <sstream>

namespace rigver {

MPoly::MPoly(Rat c) {
    if (!c.is_zero()) terms_.emplace(Monomial{}, std::move(c));
}

MPoly MPoly::var(const std::string& name) {
    MPoly p;
    p.terms_.emplace(Monomial{{name, 1}}, Rat(1));
    return p;
}

void MPoly::add_term(const Monomial& m, const Rat& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

MPoly MPoly::operator-() const {
    MPoly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
    MPoly r(a);
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
}

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            MPoly::Monomial m = ma;
            for (const auto& [v, e] : mb) m[v] += e;
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

MPoly MPoly::pow(int e) const {
    MPoly r(Rat(1));
    for (int i = 0; i < e; ++i) r *= *this;
    return r;
}

MPoly MPoly::subst(const std::string& var, const MPoly& value) const {
    MPoly r;
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        int e = 0;
        if (auto it = rest.find(var); it != rest.end()) {
            e = it->second;
            rest.erase(it);
        }
        MPoly term;
        term.terms_.emplace(rest, c);
        r += term * value.pow(e);
    }
    return r;
}

Rat MPoly::eval(const std::map<std::string, Rat>& point) const {
    Rat sum(0);
    for (const auto& [m, c] : terms_) {
        Rat t = c;
        for (const auto& [v, e] : m) {
            auto it = point.find(v);
            if (it == point.end()) throw Error("eval: missing value for " + v);
            for (int i = 0; i < e; ++i) t *= it->second;
        }
        sum += t;
    }
    return sum;
}

bool MPoly::all_coeffs_nonneg() const {
    for (const auto& [m, c] : terms_)
        if (c.sign() < 0) return false;
    return true;
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rat a = c;
        if (!first) {
            os << (a.sign() < 0 ? " - " : " + ");
            a = a.abs();
        } else if (a.sign() < 0) {
            os << "-";
            a = a.abs();
        }
        first = false;
        bool unit = (a == Rat(1)) && !m.empty();
        if (!unit) os << a.str();
        bool head = unit;
        for (const auto& [v, e] : m) {
            if (!head) os << "*";
            head = false;
            os << v;
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

}  // namespace rigver

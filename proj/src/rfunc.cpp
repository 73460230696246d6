#include "rigver/rfunc.hpp"

namespace rigver {

ParamCoeff::ParamCoeff(const Rat& c)
    : num_(IntPoly::constant(c.num())), den_(IntPoly::constant(c.den())) {}

ParamCoeff::ParamCoeff(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("coefficient with identically zero denominator");
    normalize();
}

void ParamCoeff::normalize() {
    if (num_.is_zero()) {
        den_ = IntPoly::constant(1);
        return;
    }
    // Cancel the common polynomial factor, then the common integer content.
    IntPoly g = poly_gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = poly_divexact(num_, g);
        den_ = poly_divexact(den_, g);
    }
    Int c(0);
    for (const auto& k : num_.coeffs()) c = boost::multiprecision::gcd(c, k);
    for (const auto& k : den_.coeffs()) c = boost::multiprecision::gcd(c, k);
    if (c > 1) {
        std::vector<Int> ncs(num_.coeffs()), dcs(den_.coeffs());
        for (auto& k : ncs) k /= c;
        for (auto& k : dcs) k /= c;
        num_ = IntPoly(std::move(ncs));
        den_ = IntPoly(std::move(dcs));
    }
    if (den_.leading() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

Rat ParamCoeff::eval_at(const Int& m) const {
    Int d = den_.eval_int(m);
    if (d == 0) throw DomainError("coefficient pole at M = " + m.str());
    return Rat(num_.eval_int(m), d);
}

std::optional<Rat> ParamCoeff::limit_at_infinity() const {
    if (num_.is_zero()) return Rat(0);
    int dn = num_.degree(), dd = den_.degree();
    if (dn < dd) return Rat(0);
    if (dn == dd) return Rat(num_.leading(), den_.leading());
    return std::nullopt;
}

ParamCoeff ParamCoeff::operator-() const {
    ParamCoeff r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

ParamCoeff operator+(const ParamCoeff& a, const ParamCoeff& b) {
    return ParamCoeff(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

ParamCoeff operator-(const ParamCoeff& a, const ParamCoeff& b) { return a + (-b); }

ParamCoeff operator*(const ParamCoeff& a, const ParamCoeff& b) {
    return ParamCoeff(a.num_ * b.num_, a.den_ * b.den_);
}

ParamCoeff operator/(const ParamCoeff& a, const ParamCoeff& b) {
    if (b.num_.is_zero()) throw DomainError("division by zero coefficient");
    return ParamCoeff(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator==(const ParamCoeff& a, const ParamCoeff& b) {
    // Cross-multiplied equality avoids polynomial gcd.
    return a.num_ * b.den_ == b.num_ * a.den_;
}

std::optional<Rat> ParamCoeff::as_constant() const {
    if (!is_constant()) return std::nullopt;
    return Rat(num_.coeff(0), den_.coeff(0));
}

std::string ParamCoeff::str() const {
    if (auto c = as_constant()) return c->str();
    std::string n = num_.str();
    if (num_.degree() > 0) n = "(" + n + ")";
    if (den_ == IntPoly::constant(1)) return n;
    std::string d = den_.str();
    if (den_.degree() > 0 || den_.coeff(0) < 0) d = "(" + d + ")";
    return n + "/" + d;
}

MonotoneFlags monotone_flags(const ParamCoeff& c, const Int& m0) {
    if (c.pole_on_tail(m0))
        throw DomainError("pole in [" + m0.str() + ", inf) while certifying monotonicity");
    // d/dM (p/q) = (p'q - pq') / q^2; q^2 > 0, so the derivative sign is the
    // sign of the numerator.
    IntPoly dnum = c.num().derivative() * c.den() - c.num() * c.den().derivative();
    MonotoneFlags f;
    f.nonincreasing = nonpos_on_tail(dnum, m0);
    f.nondecreasing = nonneg_on_tail(dnum, m0);
    return f;
}

Monotone certify_monotone(const ParamCoeff& c, const Int& m0) {
    MonotoneFlags f = monotone_flags(c, m0);
    if (f.nonincreasing) return Monotone::DecreasingOnTail;
    if (f.nondecreasing) return Monotone::IncreasingOnTail;
    return Monotone::NotCertified;
}

}  // namespace rigver

#include "rigver/arith.hpp"

#include <ostream>
#include <sstream>

namespace rigver {

namespace {
Int gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
}  // namespace

Rat::Rat(Int num, Int den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw DomainError("rational with zero denominator");
    normalize();
}

void Rat::normalize() {
    if (den_ < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_ == 0) {
        den_ = 1;
        return;
    }
    if (den_ == 1) return;
    Int g = gcd(num_ < 0 ? Int(-num_) : num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Rat Rat::operator-() const {
    Rat r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

Rat& Rat::operator+=(const Rat& o) {
    if (den_ == 1 && o.den_ == 1) {
        num_ += o.num_;
        return *this;
    }
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rat& Rat::operator-=(const Rat& o) {
    if (den_ == 1 && o.den_ == 1) {
        num_ -= o.num_;
        return *this;
    }
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rat& Rat::operator*=(const Rat& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.num_ == 0) throw DomainError("rational division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

bool operator<(const Rat& a, const Rat& b) {
    return a.num_ * b.den_ < b.num_ * a.den_;
}

Rat Rat::inv() const {
    if (num_ == 0) throw DomainError("inverse of zero");
    return Rat(den_, num_);
}

double Rat::to_double() const {
    using boost::multiprecision::cpp_rational;
    return static_cast<double>(cpp_rational(num_, den_));
}

std::string Rat::str() const {
    std::string s = num_.str();
    if (den_ != 1) s += "/" + den_.str();
    return s;
}

Rat Rat::parse(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        return Rat(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw Error("malformed rational literal: " + text);
    }
}

namespace {
bool int_sqrt(const Int& v, Int& root) {
    if (v < 0) return false;
    Int r = boost::multiprecision::sqrt(v);
    if (r * r == v) {
        root = r;
        return true;
    }
    return false;
}
}  // namespace

bool Rat::exact_sqrt(Rat& root) const {
    Int rn, rd;
    if (!int_sqrt(num_, rn) || !int_sqrt(den_, rd)) return false;
    root = Rat(rn, rd);
    return true;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

int QuadExt::sign() const {
    int sa = rat_.sign(), sb = root2_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: sign(a + b*sqrt2) = sign(a) iff a^2 > 2 b^2.
    Rat a2 = rat_ * rat_;
    Rat b2 = root2_ * root2_ * Rat(2);
    if (a2 == b2) return 0;  // impossible for nonzero rationals, kept for safety
    return a2 > b2 ? sa : sb;
}

QuadExt& QuadExt::operator+=(const QuadExt& o) {
    rat_ += o.rat_;
    root2_ += o.root2_;
    return *this;
}

QuadExt& QuadExt::operator-=(const QuadExt& o) {
    rat_ -= o.rat_;
    root2_ -= o.root2_;
    return *this;
}

QuadExt& QuadExt::operator*=(const QuadExt& o) {
    if (root2_.is_zero() && o.root2_.is_zero()) {
        rat_ *= o.rat_;
        return *this;
    }
    // (a + b r)(c + d r) = ac + 2bd + (ad + bc) r, with r^2 = 2.
    Rat a = rat_, b = root2_;
    rat_ = a * o.rat_ + Rat(2) * b * o.root2_;
    root2_ = a * o.root2_ + b * o.rat_;
    return *this;
}

QuadExt QuadExt::inv() const {
    if (is_zero()) throw DomainError("inverse of zero in Q(sqrt2)");
    if (root2_.is_zero()) return QuadExt(rat_.inv());
    // 1/(a + b r) = (a - b r) / (a^2 - 2 b^2); the norm is nonzero for
    // nonzero elements because sqrt2 is irrational.
    Rat norm = rat_ * rat_ - Rat(2) * root2_ * root2_;
    return QuadExt(rat_ / norm, -root2_ / norm);
}

QuadExt& QuadExt::operator/=(const QuadExt& o) {
    if (o.root2_.is_zero()) {
        rat_ /= o.rat_;
        root2_ /= o.rat_;
        return *this;
    }
    return *this *= o.inv();
}

Ord cmp(const QuadExt& a, const QuadExt& b) {
    int s = (a - b).sign();
    return s == 0 ? Ord::EQ : (s < 0 ? Ord::LT : Ord::GT);
}

double QuadExt::to_double() const {
    return rat_.to_double() + root2_.to_double() * 1.41421356237309514547462185873882845;
}

std::string QuadExt::str() const {
    if (root2_.is_zero()) return rat_.str();
    std::string s;
    if (!rat_.is_zero()) s = rat_.str() + (root2_.sign() > 0 ? " + " : " - ");
    else if (root2_.sign() < 0) s = "-";
    Rat c = root2_.abs();
    if (c == Rat(1)) s += "sqrt2";
    else s += c.str() + "*sqrt2";
    return s;
}

std::ostream& operator<<(std::ostream& os, const QuadExt& q) { return os << q.str(); }

}  // namespace rigver

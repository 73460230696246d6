#ifndef RIGVER_ARITH_HPP
#define RIGVER_ARITH_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace rigver {

using Int = boost::multiprecision::cpp_int;

/// Base class of all toolkit errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Evaluation outside the declared domain (pole, M outside range, ...).
struct DomainError : Error {
    using Error::Error;
};

enum class Ord { LT = -1, EQ = 0, GT = 1 };

/// Arbitrary-precision rational in canonical form:
/// denominator > 0 and gcd(|num|, den) == 1, enforced at construction.
/// Equality is therefore structural.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(int v) : num_(v), den_(1) {}
    Rat(long long v) : num_(v), den_(1) {}
    Rat(Int v) : num_(std::move(v)), den_(1) {}
    Rat(Int num, Int den);

    const Int& num() const { return num_; }
    const Int& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ == 0 ? 0 : (num_ > 0 ? 1 : -1); }

    Rat operator-() const;
    Rat& operator+=(const Rat& o);
    Rat& operator-=(const Rat& o);
    Rat& operator*=(const Rat& o);
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b);
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    Rat abs() const { return num_ < 0 ? -*this : *this; }
    Rat inv() const;

    /// Nearest double (used only for reporting and interval seeds,
    /// never inside a certificate).
    double to_double() const;

    /// "p/q" for non-integers, plain integer otherwise.
    std::string str() const;

    /// Parses an integer or "p/q". Throws Error on malformed input.
    static Rat parse(const std::string& text);

    /// True iff the value is the square of a rational; root receives it.
    bool exact_sqrt(Rat& root) const;

private:
    void normalize();
    Int num_, den_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

inline Ord cmp(const Rat& a, const Rat& b) {
    if (a == b) return Ord::EQ;
    return a < b ? Ord::LT : Ord::GT;
}

/// Element of the quadratic field Q(sqrt 2): value = rat + root2 * sqrt(2).
/// Equality is componentwise; the total order is decided exactly by
/// integer squaring, no floating point is involved.
class QuadExt {
public:
    QuadExt() = default;
    QuadExt(Rat rational_part) : rat_(std::move(rational_part)) {}
    QuadExt(int v) : rat_(v) {}
    QuadExt(Rat rational_part, Rat root2_part)
        : rat_(std::move(rational_part)), root2_(std::move(root2_part)) {}

    static QuadExt sqrt2() { return QuadExt(Rat(0), Rat(1)); }

    const Rat& rational_part() const { return rat_; }
    const Rat& root2_part() const { return root2_; }

    bool is_rational() const { return root2_.is_zero(); }
    bool is_zero() const { return rat_.is_zero() && root2_.is_zero(); }

    /// Exact sign of rat + root2*sqrt2, decided by comparing rat^2 with
    /// 2*root2^2 when the two parts have opposite signs.
    int sign() const;

    QuadExt operator-() const { return QuadExt(-rat_, -root2_); }
    QuadExt& operator+=(const QuadExt& o);
    QuadExt& operator-=(const QuadExt& o);
    QuadExt& operator*=(const QuadExt& o);
    QuadExt& operator/=(const QuadExt& o);

    friend QuadExt operator+(QuadExt a, const QuadExt& b) { return a += b; }
    friend QuadExt operator-(QuadExt a, const QuadExt& b) { return a -= b; }
    friend QuadExt operator*(QuadExt a, const QuadExt& b) { return a *= b; }
    friend QuadExt operator/(QuadExt a, const QuadExt& b) { return a /= b; }

    friend bool operator==(const QuadExt& a, const QuadExt& b) {
        return a.rat_ == b.rat_ && a.root2_ == b.root2_;
    }
    friend bool operator!=(const QuadExt& a, const QuadExt& b) { return !(a == b); }

    QuadExt inv() const;

    double to_double() const;

    /// "a + b*sqrt2" syntax; pure rationals print as Rat.
    std::string str() const;

private:
    Rat rat_, root2_;
};

std::ostream& operator<<(std::ostream& os, const QuadExt& q);

Ord cmp(const QuadExt& a, const QuadExt& b);

inline bool operator<(const QuadExt& a, const QuadExt& b) { return cmp(a, b) == Ord::LT; }
inline bool operator>(const QuadExt& a, const QuadExt& b) { return cmp(a, b) == Ord::GT; }
inline bool operator<=(const QuadExt& a, const QuadExt& b) { return cmp(a, b) != Ord::GT; }
inline bool operator>=(const QuadExt& a, const QuadExt& b) { return cmp(a, b) != Ord::LT; }

}  // namespace rigver

#endif

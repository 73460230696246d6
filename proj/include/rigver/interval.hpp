#ifndef RIGVER_INTERVAL_HPP
#define RIGVER_INTERVAL_HPP

#include "rigver/arith.hpp"

#include <algorithm>
#include <cmath>

namespace rigver {

/// Closed double interval [lo, hi] with outward rounding after every
/// operation. Used only as a secondary numeric witness next to the exact
/// Q(sqrt2) computations, never inside a certificate.
struct Ival {
    double lo = 0.0, hi = 0.0;

    static double down(double x) { return std::nextafter(x, -HUGE_VAL); }
    static double up(double x) { return std::nextafter(x, HUGE_VAL); }

    static Ival point(double x) { return {down(x), up(x)}; }
    static Ival of(double a, double b) { return {down(std::min(a, b)), up(std::max(a, b))}; }

    static Ival from_rat(const Rat& r) { return point(r.to_double()); }

    bool contains(double x) const { return lo <= x && x <= hi; }
    double width() const { return hi - lo; }

    friend Ival operator+(const Ival& a, const Ival& b) {
        return {down(a.lo + b.lo), up(a.hi + b.hi)};
    }
    friend Ival operator-(const Ival& a, const Ival& b) {
        return {down(a.lo - b.hi), up(a.hi - b.lo)};
    }
    friend Ival operator*(const Ival& a, const Ival& b) {
        double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
        return {down(std::min({c[0], c[1], c[2], c[3]})), up(std::max({c[0], c[1], c[2], c[3]}))};
    }

    Ival sqr() const {
        if (lo >= 0) return {down(lo * lo), up(hi * hi)};
        if (hi <= 0) return {down(hi * hi), up(lo * lo)};
        double m = std::max(-lo, hi);
        return {0.0, up(m * m)};
    }

    static Ival max_with(const Ival& a, double c) {
        return {std::max(a.lo, c), std::max(a.hi, c)};
    }
};

}  // namespace rigver

#endif

// common.hpp — shared numeric utilities: compensated summation, formatting,
// adaptive quadrature for tail integrals.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

namespace lierkhs {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Raised when a quadrature grid is too coarse for the requested labels.
class ResolutionError : public std::runtime_error {
public:
    explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a numerical certification step (hermiticity, positivity,
// quadrature self-test) fails.
class CertificationError : public std::runtime_error {
public:
    explicit CertificationError(const std::string& what) : std::runtime_error(what) {}
};

// Neumaier compensated accumulator. Keeps label-order sums reproducible to
// ~1e-16 relative regardless of term ordering.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(cplx z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_, im_;
};

// Round-trip exact decimal formatting (shortest-ish, %.17g).
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// FNV-1a 64-bit, used for config hashes embedded in artifacts.
inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

namespace detail {

// Adaptive Simpson on [a, b] to relative tolerance.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double fa, double fm, double fb, double whole, double tol,
                               int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace detail

// ∫_a^∞ f for an eventually decreasing integrand that decays at least like
// x^{-p} with p > 1. Segments grow geometrically; stops once a segment adds
// less than `tol` relative to the accumulated value.
inline double integrate_to_infinity(const std::function<double(double)>& f, double a,
                                    double tol = 1e-12) {
    if (!(a >= 0.0)) a = 0.0;
    double lo = a;
    double len = std::max(1.0, 0.5 * std::abs(a));
    CompensatedSum total;
    for (int seg = 0; seg < 400; ++seg) {
        double hi = lo + len;
        double part = detail::integrate(f, lo, hi, tol * std::max(1.0, std::abs(total.value())));
        total.add(part);
        double acc = std::abs(total.value());
        if (seg > 2 && std::abs(part) < tol * std::max(acc, 1e-300)) break;
        lo = hi;
        len *= 1.6;
    }
    return total.value();
}

}  // namespace lierkhs

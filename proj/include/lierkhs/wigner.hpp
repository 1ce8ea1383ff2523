// wigner.hpp — Wigner d- and D-matrices for SU(2) in the z-y-z convention.
//
//   D^l_{m'm}(alpha, beta, gamma) = e^{-i m' alpha} d^l_{m'm}(beta) e^{-i m gamma}
//
// Spins are passed as the integer two_l = 2l so that half-integer l stays
// exact. Row r of a (2l+1)x(2l+1) matrix corresponds to m' = l - r, column c
// to m = l - c (indices descend from +l to -l).
//
// d^l is evaluated by the explicit factorial sum with a precomputed factorial
// table. The alternating sum cancels catastrophically for large l (individual
// terms reach ~1e7 at l = 30 while entries stay below 1), so terms and the
// accumulation run in __float128; max entry error stays below 1e-13 up to
// two_l = 60 and the double result is rounding-limited.

#pragma once

#include <quadmath.h>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "common.hpp"

namespace lierkhs {

namespace detail {

inline __float128 q_factorial(int n) {
    static std::vector<__float128> table = [] {
        std::vector<__float128> t;
        t.push_back(1);
        for (int m = 1; m <= 360; ++m) t.push_back(t.back() * m);
        return t;
    }();
    if (n < 0 || n >= static_cast<int>(table.size()))
        throw std::invalid_argument("q_factorial: argument out of range");
    return table[n];
}

}  // namespace detail

// Little d-matrix d^l(beta), two_l = 2l.
inline Eigen::MatrixXd wigner_d(int two_l, double beta) {
    if (two_l < 0) throw std::invalid_argument("wigner_d: two_l must be >= 0");
    const int dim = two_l + 1;
    Eigen::MatrixXd d(dim, dim);
    const __float128 half = static_cast<__float128>(0.5) * static_cast<__float128>(beta);
    // powers of cos(beta/2), sin(beta/2) up to 2l
    std::vector<__float128> cp(two_l + 1), sp(two_l + 1);
    cp[0] = sp[0] = 1;
    const __float128 c = cosq(half), s = sinq(half);
    for (int i = 1; i <= two_l; ++i) {
        cp[i] = cp[i - 1] * c;
        sp[i] = sp[i - 1] * s;
    }
    for (int r = 0; r < dim; ++r) {
        // two_mp = 2m', two_m = 2m; l±m' and l±m are the integers below.
        const int two_mp = two_l - 2 * r;
        const int l_plus_mp = (two_l + two_mp) / 2;
        const int l_minus_mp = (two_l - two_mp) / 2;
        for (int col = 0; col < dim; ++col) {
            const int two_m = two_l - 2 * col;
            const int l_plus_m = (two_l + two_m) / 2;
            const int l_minus_m = (two_l - two_m) / 2;
            const int mp_minus_m = (two_mp - two_m) / 2;
            const __float128 pref =
                sqrtq(detail::q_factorial(l_plus_m) * detail::q_factorial(l_minus_m) *
                      detail::q_factorial(l_plus_mp) * detail::q_factorial(l_minus_mp));
            const int kmin = std::max(0, -mp_minus_m);
            const int kmax = std::min(l_plus_m, l_minus_mp);
            __float128 acc = 0;
            for (int k = kmin; k <= kmax; ++k) {
                const __float128 denom =
                    detail::q_factorial(l_plus_m - k) * detail::q_factorial(k) *
                    detail::q_factorial(l_minus_mp - k) * detail::q_factorial(k + mp_minus_m);
                const int pc = l_plus_m - k + l_minus_mp - k;  // exponent of cos
                const int ps = 2 * k + mp_minus_m;             // exponent of sin
                __float128 term = pref / denom * cp[pc] * sp[ps];
                if ((k + mp_minus_m) & 1) term = -term;
                acc += term;
            }
            d(r, col) = static_cast<double>(acc);
        }
    }
    return d;
}

// Full D-matrix from a precomputed little-d factor (shared beta node).
inline Eigen::MatrixXcd wigner_D_from_d(int two_l, const Eigen::MatrixXd& d, double alpha,
                                        double gamma) {
    const int dim = two_l + 1;
    Eigen::MatrixXcd D(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const double mp = 0.5 * (two_l - 2 * r);
        const cplx pa = std::polar(1.0, -mp * alpha);
        for (int col = 0; col < dim; ++col) {
            const double m = 0.5 * (two_l - 2 * col);
            D(r, col) = pa * d(r, col) * std::polar(1.0, -m * gamma);
        }
    }
    return D;
}

inline Eigen::MatrixXcd wigner_D(int two_l, double alpha, double beta, double gamma) {
    return wigner_D_from_d(two_l, wigner_d(two_l, beta), alpha, gamma);
}

}  // namespace lierkhs

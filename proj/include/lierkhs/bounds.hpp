// bounds.hpp — closed-form covering-number bounds and their inner 1-D
// optimizations.
//
// Upper regime (trace of the symbol decays like <xi>^{-beta}, beta > n):
//
//   ln C(eps) <= C_n (4 b kappa S1)^{n/(beta-n)} eps^{-2n/(beta-n)}
//                  ln[1 + 4 sqrt(S1)/eps],        0 < eps < sqrt(S1)/sqrt(3),
//
// obtained by minimizing ln H_eps(lambda) over the truncation family; the
// plug-in point lambda_eps = (4 b kappa / eps^2)^{1/(beta-n)} dominates the
// numeric minimum, which dominates nothing below the closed form.
//
// Lower regime ((det sigma)^{1/d} >= a^2 e^{-2 w <xi>^g}):
//
//   ln C(eps) >= (c0/(w mu (1+g/n)))^{n/g} * c0/(1+n/g)
//                  * (ln[a sqrt(S1)/eps])^{1+n/g},
//
// the exact maximum of G_eps(lambda) = -w mu lambda^{n+g} + c0 lambda^n
// ln(a sqrt(S1)/eps) over lambda in (1, inf).
//
// The counting constants C_n, c0 and the window constants kappa_beta,
// mu_gamma are not universal inputs; callers fit witnessing values from
// counting windows (see counting.hpp) and every curve records which values
// it used. Everything is kept on the ln scale; small eps would overflow
// otherwise.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <vector>

#include "common.hpp"
#include "counting.hpp"
#include "symbols.hpp"

namespace lierkhs {

struct BoundParameters {
    int n = 1;
    // upper regime
    double beta = 0.0;
    double b_T = 0.0;
    double kappa_beta = 0.0;
    // lower regime
    double gamma = 0.0;
    double omega_T = 0.0;
    double a_T = 0.0;
    double mu_gamma = 0.0;
    // counting constants
    double c_0n = 0.0;
    double C_n = 0.0;
    // trace norm |T|_{S1}
    double S1 = 1.0;
    // Convention for b_T and a_T. true: the theorem's final display, where
    // Tr sigma <= b_T S1 d <xi>^{-beta} and (det)^{1/d} >= a_T^2 S1
    // e^{-2 w <xi>^g}. false: raw constants with S1 absorbed.
    bool constants_relative_to_S1 = true;
};

struct BoundValue {
    double value = 0.0;
    bool valid = false;
};

namespace detail {

inline double golden_minimize(const std::function<double(double)>& f, double a, double b,
                              double rel_tol = 1e-10, int max_iter = 200) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < max_iter && (b - a) > rel_tol * (std::abs(a) + std::abs(b)); ++it) {
        if (f1 <= f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

// Effective (4 b kappa) product in normalized units.
inline double upper_bk(const BoundParameters& p) {
    return p.constants_relative_to_S1 ? p.b_T * p.kappa_beta : p.b_T * p.kappa_beta / p.S1;
}

// Effective a sqrt(S1) in the lower bound's log.
inline double lower_a_scale(const BoundParameters& p) {
    return p.constants_relative_to_S1 ? p.a_T * std::sqrt(p.S1) : p.a_T;
}

}  // namespace detail

// Closed-form upper bound, ln scale. Invalid outside (0, sqrt(S1)/sqrt(3)).
inline BoundValue upper_bound(const BoundParameters& p, double eps) {
    BoundValue out;
    if (!(p.beta > p.n) || !(p.b_T > 0.0) || !(p.kappa_beta > 0.0) || !(p.C_n > 0.0) ||
        !(p.S1 > 0.0))
        throw std::invalid_argument("upper_bound: upper-regime parameters must be positive, beta > n");
    if (!(eps > 0.0) || !(eps < std::sqrt(p.S1) / std::sqrt(3.0))) return out;  // invalid
    const double expo = static_cast<double>(p.n) / (p.beta - p.n);
    const double bk_s1 = detail::upper_bk(p) * p.S1;
    out.value = p.C_n * std::pow(4.0 * bk_s1, expo) * std::pow(eps, -2.0 * expo) *
                std::log1p(4.0 * std::sqrt(p.S1) / eps);
    out.valid = true;
    return out;
}

struct MinimizeHResult {
    double lambda_star = 0.0;      // numeric minimizer
    double lnH_star = 0.0;         // ln H at the minimizer
    double lambda_eps = 0.0;       // plug-in (4 b kappa / eps^2)^{1/(beta-n)}
    double lnH_lambda_eps = 0.0;   // ln H at the plug-in
    bool valid = false;
};

// Numeric minimization of ln H_eps(lambda) = C_n lambda^n ln[1 + 2
// sqrt(1 - bk lambda^{n-beta}) / (eps - sqrt(bk) lambda^{(n-beta)/2})] on the
// admissible interval, in normalized units (|Q| = 1, eps < 1/sqrt(3)).
inline MinimizeHResult minimize_H(const BoundParameters& p, double eps) {
    MinimizeHResult out;
    if (!(p.beta > p.n) || !(p.b_T > 0.0) || !(p.kappa_beta > 0.0) || !(p.C_n > 0.0))
        throw std::invalid_argument("minimize_H: upper-regime parameters must be positive, beta > n");
    if (!(eps > 0.0) || !(eps < 1.0 / std::sqrt(3.0))) return out;
    const double bk = detail::upper_bk(p);
    const double r = p.beta - p.n;
    const double lambda_valid = std::pow(bk / (eps * eps), 1.0 / r);
    out.lambda_eps = std::pow(4.0 * bk / (eps * eps), 1.0 / r);
    auto lnH = [&](double lam) {
        const double decay = bk * std::pow(lam, -r);
        const double denom = eps - std::sqrt(bk) * std::pow(lam, -0.5 * r);
        if (!(denom > 0.0) || decay >= 1.0) return std::numeric_limits<double>::infinity();
        return p.C_n * std::pow(lam, p.n) * std::log1p(2.0 * std::sqrt(1.0 - decay) / denom);
    };
    out.lnH_lambda_eps = lnH(out.lambda_eps);
    // bracket: lnH blows up at lambda_valid and grows like lambda^n at infinity
    double lo = lambda_valid * (1.0 + 1e-9);
    double mid = out.lambda_eps;
    double hi = mid * 2.0;
    int guard = 0;
    while (lnH(hi) <= lnH(mid) && guard++ < 200) {
        mid = hi;
        hi *= 2.0;
    }
    while (lnH(lo) <= lnH(mid) && guard++ < 200) {
        const double closer = lambda_valid + 0.1 * (lo - lambda_valid);
        if (closer <= lambda_valid) break;
        lo = closer;
    }
    if (guard >= 200)
        throw std::runtime_error("minimize_H: bracket expansion failed (lo=" + format_double(lo) +
                                 ", hi=" + format_double(hi) + ")");
    out.lambda_star = detail::golden_minimize(lnH, lo, hi);
    out.lnH_star = lnH(out.lambda_star);
    // the numeric minimum can only improve on the plug-in point
    if (out.lnH_star > out.lnH_lambda_eps) {
        out.lambda_star = out.lambda_eps;
        out.lnH_star = out.lnH_lambda_eps;
    }
    out.valid = true;
    return out;
}

// Closed-form lower bound, ln scale. Invalid outside the theorem's eps range.
inline BoundValue lower_bound(const BoundParameters& p, double eps) {
    BoundValue out;
    if (!(p.gamma > 0.0) || !(p.omega_T > 0.0) || !(p.a_T > 0.0) || !(p.mu_gamma > 0.0) ||
        !(p.c_0n > 0.0) || !(p.S1 > 0.0))
        throw std::invalid_argument("lower_bound: lower-regime parameters must be positive");
    const double g_over_n = p.gamma / p.n;
    const double n_over_g = static_cast<double>(p.n) / p.gamma;
    const double wm = p.omega_T * p.mu_gamma;
    const double scale = detail::lower_a_scale(p);
    const double eps_max = scale * std::exp(-wm * (1.0 + g_over_n) / p.c_0n);
    if (!(eps > 0.0) || !(eps < eps_max)) return out;
    const double L = std::log(scale / eps);
    out.value = std::pow(p.c_0n / (wm * (1.0 + g_over_n)), n_over_g) * p.c_0n /
                (1.0 + n_over_g) * std::pow(L, 1.0 + n_over_g);
    out.valid = true;
    return out;
}

struct MaximizeGResult {
    double lambda_star = 0.0;
    double G_max = 0.0;
    bool valid = false;  // false when the stationary point leaves (1, inf)
};

// Numeric maximization of G_eps(lambda) = -w mu lambda^{n+gamma} + c0
// lambda^n ln(a sqrt(S1)/eps) over (1, inf). The closed form is the exact
// maximum; outside validity the formula value is still reported with the
// stationary point clamped to the boundary.
inline MaximizeGResult maximize_G(const BoundParameters& p, double eps) {
    MaximizeGResult out;
    if (!(p.gamma > 0.0) || !(p.omega_T > 0.0) || !(p.a_T > 0.0) || !(p.mu_gamma > 0.0) ||
        !(p.c_0n > 0.0))
        throw std::invalid_argument("maximize_G: lower-regime parameters must be positive");
    const double wm = p.omega_T * p.mu_gamma;
    const double L = std::log(detail::lower_a_scale(p) / eps);
    if (!(L > 0.0)) return out;
    const double lambda_stat =
        std::pow(p.n * p.c_0n * L / (wm * (p.n + p.gamma)), 1.0 / p.gamma);
    auto G = [&](double lam) {
        return -wm * std::pow(lam, p.n + p.gamma) + p.c_0n * std::pow(lam, p.n) * L;
    };
    const double closed = std::pow(p.c_0n / (wm * (1.0 + p.gamma / p.n)), p.n / p.gamma) *
                          p.c_0n / (1.0 + p.n / p.gamma) * std::pow(L, 1.0 + p.n / p.gamma);
    if (lambda_stat <= 1.0) {
        out.lambda_star = 1.0;
        out.G_max = closed;
        out.valid = false;
        return out;
    }
    const double lam =
        detail::golden_minimize([&](double x) { return -G(x); }, 1.0, 2.0 * lambda_stat);
    out.lambda_star = lam;
    out.G_max = G(lam);
    out.valid = true;
    return out;
}

// Volumetric lower bound through the finite-rank composition:
//   ln[ prod_{<xi> <= lambda} (det sigma)^{d/2} / eps^D ],  D = sum d^2.
// Vacuous (valid = false) when nonpositive; throws for non-PD symbols.
inline BoundValue det_lower_bound(const SymbolField& s, double lambda, double eps) {
    if (lambda > s.lambda_max + 1e-12)
        throw std::invalid_argument("det_lower_bound: lambda exceeds the stored truncation");
    if (!(eps > 0.0)) throw std::invalid_argument("det_lower_bound: eps must be positive");
    CompensatedSum logprod;
    long long D = 0;
    for (std::size_t i = 0; i < s.support.size(); ++i) {
        if (s.support[i].weight > lambda) continue;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            0.5 * (s.matrices[i] + s.matrices[i].adjoint()), Eigen::EigenvaluesOnly);
        if (!(es.eigenvalues().minCoeff() > 0.0))
            throw std::domain_error("det_lower_bound: symbol is not strictly positive definite");
        logprod.add(0.5 * s.support[i].dim * es.eigenvalues().array().log().sum());
        D += static_cast<long long>(s.support[i].dim) * s.support[i].dim;
    }
    BoundValue out;
    out.value = logprod.value() + static_cast<double>(D) * std::log(1.0 / eps);
    out.valid = out.value > 0.0;
    return out;
}

struct BoundCurve {
    std::vector<double> eps;
    std::vector<double> ln_upper, ln_lower, ln_det;
    std::vector<bool> valid_upper, valid_lower, det_nonvacuous;
    BoundParameters params;
};

inline BoundCurve bound_curve(const BoundParameters& p, const std::vector<double>& eps_grid,
                              const SymbolField* symbol_for_det = nullptr,
                              double lambda_det = 0.0) {
    BoundCurve curve;
    curve.params = p;
    const bool upper_set = p.beta > p.n && p.b_T > 0.0 && p.kappa_beta > 0.0 && p.C_n > 0.0;
    const bool lower_set =
        p.gamma > 0.0 && p.omega_T > 0.0 && p.a_T > 0.0 && p.mu_gamma > 0.0 && p.c_0n > 0.0;
    for (double e : eps_grid) {
        curve.eps.push_back(e);
        const auto up = upper_set ? upper_bound(p, e) : BoundValue{};
        curve.ln_upper.push_back(up.valid ? up.value : std::nan(""));
        curve.valid_upper.push_back(up.valid);
        const auto lo = lower_set ? lower_bound(p, e) : BoundValue{};
        curve.ln_lower.push_back(lo.valid ? lo.value : std::nan(""));
        curve.valid_lower.push_back(lo.valid);
        if (symbol_for_det) {
            const auto dv = det_lower_bound(*symbol_for_det, lambda_det, e);
            curve.ln_det.push_back(dv.value);
            curve.det_nonvacuous.push_back(dv.valid);
        } else {
            curve.ln_det.push_back(std::nan(""));
            curve.det_nonvacuous.push_back(false);
        }
    }
    return curve;
}

inline void write_csv(const BoundCurve& c, std::ostream& os) {
    os << "eps,ln_upper,ln_lower,ln_det_lower,valid_upper,valid_lower,det_nonvacuous\n";
    for (std::size_t i = 0; i < c.eps.size(); ++i)
        os << format_double(c.eps[i]) << "," << format_double(c.ln_upper[i]) << ","
           << format_double(c.ln_lower[i]) << "," << format_double(c.ln_det[i]) << ","
           << (c.valid_upper[i] ? 1 : 0) << "," << (c.valid_lower[i] ? 1 : 0) << ","
           << (c.det_nonvacuous[i] ? 1 : 0) << "\n";
}

}  // namespace lierkhs

// counting.hpp — Weyl-type counting sums over the truncated dual.
//
//   head(lambda)  = sum_{<xi> <= lambda} d^2 <xi>^{alpha n}     (alpha > -1)
//   tail(lambda)  = sum_{<xi> >  lambda} d^2 <xi>^{alpha n}     (alpha < -1)
//
// Both behave like lambda^{(alpha+1)n}; the constants are only cited in the
// literature, so this module fits empirical stand-ins (ratio bands and
// witnessing constants) instead of assuming them.

#pragma once

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

#include "common.hpp"
#include "groups.hpp"
#include "symbols.hpp"

namespace lierkhs {

enum class CountSide { Head, Tail };

// Exact finite sum over the enumerated dual; Tail adds an analytic remainder
// beyond lambda_cap and insists the remainder stays below 1% of the value.
inline double weighted_count(GroupId g, double lambda, double alpha, CountSide side,
                             double lambda_cap = 0.0) {
    const int n = group_dim(g);
    if (side == CountSide::Head) {
        if (!(alpha > -1.0))
            throw std::invalid_argument("weighted_count: head sums require alpha > -1");
        CompensatedSum s;
        for (const auto& label : enumerate_dual(g, lambda))
            s.add(static_cast<double>(label.dim) * label.dim *
                  std::pow(label.weight, alpha * n));
        return s.value();
    }
    if (!(alpha < -1.0))
        throw std::invalid_argument("weighted_count: tail sums require alpha < -1");
    if (!(lambda_cap > lambda))
        throw std::invalid_argument("weighted_count: tail sums need lambda_cap > lambda");
    CompensatedSum s;
    for (const auto& label : enumerate_dual(g, lambda_cap))
        if (label.weight > lambda)
            s.add(static_cast<double>(label.dim) * label.dim *
                  std::pow(label.weight, alpha * n));
    auto f = [&](double w) { return std::pow(w, alpha * n); };
    const double remainder = detail::tail_beyond(g, f, lambda_cap);
    if (!(remainder <= 0.01 * (s.value() + remainder)))
        throw std::invalid_argument(
            "weighted_count: lambda_cap too small, analytic remainder above 1%");
    return s.value() + remainder;
}

// dim l2(A_lambda) = sum_{<xi> <= lambda} d^2; also bounds rank of the
// truncated operator.
inline long long rank_bound(GroupId g, double lambda) {
    if (!(lambda > 1.0)) throw std::invalid_argument("rank_bound: lambda must exceed 1");
    long long total = 0;
    for (const auto& label : enumerate_dual(g, lambda))
        total += static_cast<long long>(label.dim) * label.dim;
    return total;
}

struct WeylFit {
    double exponent = 0.0;  // estimates (alpha + 1) n
    double constant = 0.0;  // e^{intercept} of the log-log fit
};

// Log-log least squares of head sums over the lambda grid.
inline WeylFit fit_weyl_exponent(GroupId g, double alpha, const std::vector<double>& lambda_grid) {
    if (lambda_grid.size() < 3)
        throw std::invalid_argument("fit_weyl_exponent: need at least 3 grid points");
    const auto [lo, hi] = std::minmax_element(lambda_grid.begin(), lambda_grid.end());
    if (!(*hi >= 2.0 * *lo))
        throw std::invalid_argument("fit_weyl_exponent: degenerate lambda grid");
    std::vector<double> x, y;
    for (double lam : lambda_grid) {
        x.push_back(std::log(lam));
        y.push_back(std::log(weighted_count(g, lam, alpha, CountSide::Head)));
    }
    const auto fit = detail::least_squares(x, y);
    return WeylFit{fit.slope, std::exp(fit.intercept)};
}

// delta_lambda = sqrt( sum_{<xi> > lambda} d Tr sigma ), including the
// analytic tail beyond the stored truncation.
inline double tail_delta(const SymbolField& s, double lambda) {
    if (lambda > s.lambda_max + 1e-12)
        throw std::invalid_argument("tail_delta: lambda must not exceed the truncation");
    if (!check_hermitian_psd(s).certified)
        throw CertificationError("tail_delta: symbol is not certified");
    CompensatedSum comp;
    for (std::size_t i = 0; i < s.support.size(); ++i)
        if (s.support[i].weight > lambda)
            comp.add(s.support[i].dim * s.matrices[i].trace().real());
    const double tail = analytic_trace_tail(s, s.lambda_max).value_or(0.0);
    return std::sqrt(std::max(0.0, comp.value() + tail));
}

struct CountingRecord {
    GroupId group = GroupId::Torus1;
    double alpha = 0.0;
    std::vector<double> lambdas;
    std::vector<double> head;        // sum_{<xi> <= lambda}
    std::vector<double> complement;  // sum_{lambda < <xi> <= Lambda_cap}
    std::vector<double> ratio;       // head / lambda^{(alpha+1)n}
};

inline CountingRecord counting_record(GroupId g, double alpha, const std::vector<double>& lambdas,
                                      double lambda_cap) {
    const int n = group_dim(g);
    CountingRecord rec;
    rec.group = g;
    rec.alpha = alpha;
    const auto all = enumerate_dual(g, lambda_cap);
    for (double lam : lambdas) {
        CompensatedSum head, comp;
        for (const auto& label : all) {
            const double term =
                static_cast<double>(label.dim) * label.dim * std::pow(label.weight, alpha * n);
            if (label.weight <= lam) head.add(term);
            else comp.add(term);
        }
        rec.lambdas.push_back(lam);
        rec.head.push_back(head.value());
        rec.complement.push_back(comp.value());
        rec.ratio.push_back(head.value() / std::pow(lam, (alpha + 1.0) * n));
    }
    return rec;
}

inline void write_csv(const CountingRecord& rec, std::ostream& os) {
    os << "lambda,head,complement,ratio_to_power\n";
    for (std::size_t i = 0; i < rec.lambdas.size(); ++i)
        os << format_double(rec.lambdas[i]) << "," << format_double(rec.head[i]) << ","
           << format_double(rec.complement[i]) << "," << format_double(rec.ratio[i]) << "\n";
}

// Witnessing constants extracted from counting windows:
//   head(lambda, 0)        <= C_n lambda^n          (max ratio)
//   head(lambda, 0)        >= c_0n lambda^n         (min ratio)
//   tail(lambda, -beta/n)  <= kappa_beta lambda^{n-beta}
//   head(lambda, gamma/n)  <= mu_gamma lambda^{n+gamma}
struct FittedConstants {
    double C_n = 0.0;
    double c_0n = 0.0;
    double kappa_beta = 0.0;
    double mu_gamma = 0.0;
};

inline FittedConstants fit_counting_constants(GroupId g, double beta, double gamma,
                                              const std::vector<double>& lambda_window) {
    const int n = group_dim(g);
    FittedConstants out;
    out.c_0n = std::numeric_limits<double>::infinity();
    const double lam_max = *std::max_element(lambda_window.begin(), lambda_window.end());
    // grow the enumeration horizon until the analytic remainder of the
    // shallowest tail clears the 1% precondition
    auto tail_at = [&](double lam) {
        for (double factor : {4.0, 8.0, 16.0, 32.0, 64.0}) {
            try {
                return weighted_count(g, lam, -beta / n, CountSide::Tail, factor * lam_max);
            } catch (const std::invalid_argument&) {
            }
        }
        return weighted_count(g, lam, -beta / n, CountSide::Tail, 128.0 * lam_max);
    };
    for (double lam : lambda_window) {
        const double h0 = weighted_count(g, lam, 0.0, CountSide::Head);
        out.C_n = std::max(out.C_n, h0 / std::pow(lam, n));
        out.c_0n = std::min(out.c_0n, h0 / std::pow(lam, n));
        out.kappa_beta = std::max(out.kappa_beta, tail_at(lam) / std::pow(lam, n - beta));
        const double hg = weighted_count(g, lam, gamma / n, CountSide::Head);
        out.mu_gamma = std::max(out.mu_gamma, hg / std::pow(lam, n + gamma));
    }
    return out;
}

}  // namespace lierkhs

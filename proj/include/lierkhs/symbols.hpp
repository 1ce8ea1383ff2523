// symbols.hpp — matrix symbols sigma_T on the unitary dual.
//
// A SymbolField holds one Hermitian d x d matrix per label of a truncated
// dual A_Lambda. The built-in families are Fourier multipliers
//
//   heat(t):          sigma(xi) = e^{-t lambda_xi} I
//   polynomial(beta): sigma(xi) = <xi>^{-beta} I        (beta > n for trace class)
//   subgaussian(w,g): sigma(xi) = e^{-2 w <xi>^g} I
//
// plus custom per-label matrices. Certification (hermiticity defect <= 1e-12,
// min eigenvalue >= -1e-12) gates the square-root field H with H^2 = sigma.
// Trace norms carry analytic tail bounds for the series beyond the stored
// truncation; order classifiers fit the decay exponents used by the covering
// bound theorems.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "common.hpp"
#include "groups.hpp"
#include "rng.hpp"

namespace lierkhs {

enum class SymbolFamily { Heat, Polynomial, Subgaussian, Custom };

inline const char* family_name(SymbolFamily f) {
    switch (f) {
        case SymbolFamily::Heat: return "heat";
        case SymbolFamily::Polynomial: return "polynomial";
        case SymbolFamily::Subgaussian: return "subgaussian";
        case SymbolFamily::Custom: return "custom";
    }
    return "?";
}

struct SymbolParams {
    double t = 0.0;      // heat
    double beta = 0.0;   // polynomial
    double omega = 0.0;  // subgaussian
    double gamma = 0.0;  // subgaussian
};

// Scalar multiplier value f(<xi>) of an analytic family.
inline double scalar_symbol_value(SymbolFamily family, const SymbolParams& p, double weight) {
    switch (family) {
        case SymbolFamily::Heat: return std::exp(-p.t * (weight * weight - 1.0));
        case SymbolFamily::Polynomial: return std::pow(weight, -p.beta);
        case SymbolFamily::Subgaussian: return std::exp(-2.0 * p.omega * std::pow(weight, p.gamma));
        case SymbolFamily::Custom: break;
    }
    throw std::invalid_argument("scalar_symbol_value: custom symbols carry explicit matrices");
}

struct SymbolField {
    GroupId group = GroupId::Torus1;
    SymbolFamily family = SymbolFamily::Custom;
    SymbolParams params;
    double lambda_max = 0.0;
    std::vector<IrrepLabel> support;          // enumerate_dual(group, lambda_max)
    std::vector<Eigen::MatrixXcd> matrices;   // aligned with support
    bool is_sqrt_field = false;               // true for H = sqrt(sigma)

    const Eigen::MatrixXcd& matrix_at(std::size_t i) const { return matrices[i]; }
    bool is_zero() const {
        for (const auto& m : matrices)
            if (m.cwiseAbs().maxCoeff() != 0.0) return false;
        return true;
    }
};

inline SymbolField make_symbol(GroupId g, SymbolFamily family, const SymbolParams& p,
                               double lambda_max) {
    const int n = group_dim(g);
    switch (family) {
        case SymbolFamily::Heat:
            if (!(p.t > 0.0)) throw std::invalid_argument("make_symbol: heat requires t > 0");
            break;
        case SymbolFamily::Polynomial:
            if (!(p.beta > n))
                throw std::invalid_argument(
                    "make_symbol: polynomial requires beta > n, else the trace class fails");
            break;
        case SymbolFamily::Subgaussian:
            if (!(p.omega > 0.0) || !(p.gamma > 0.0))
                throw std::invalid_argument("make_symbol: subgaussian requires omega, gamma > 0");
            break;
        case SymbolFamily::Custom:
            throw std::invalid_argument("make_symbol: use make_custom_symbol for explicit matrices");
    }
    SymbolField s;
    s.group = g;
    s.family = family;
    s.params = p;
    s.lambda_max = lambda_max;
    s.support = enumerate_dual(g, lambda_max);
    s.matrices.reserve(s.support.size());
    for (const auto& label : s.support) {
        const double v = scalar_symbol_value(family, p, label.weight);
        s.matrices.push_back(v * Eigen::MatrixXcd::Identity(label.dim, label.dim));
    }
    return s;
}

inline SymbolField make_custom_symbol(GroupId g, double lambda_max,
                                      std::vector<Eigen::MatrixXcd> matrices,
                                      bool allow_uncertified = false) {
    SymbolField s;
    s.group = g;
    s.family = SymbolFamily::Custom;
    s.lambda_max = lambda_max;
    s.support = enumerate_dual(g, lambda_max);
    if (matrices.size() != s.support.size())
        throw std::invalid_argument("make_custom_symbol: need one matrix per label of A_Lambda");
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        if (matrices[i].rows() != s.support[i].dim || matrices[i].cols() != s.support[i].dim)
            throw std::invalid_argument("make_custom_symbol: matrix size must equal d_xi");
        if (!allow_uncertified) {
            double defect = (matrices[i] - matrices[i].adjoint()).cwiseAbs().maxCoeff();
            if (defect > 1e-12)
                throw std::invalid_argument("make_custom_symbol: non-Hermitian matrix rejected");
        }
    }
    s.matrices = std::move(matrices);
    return s;
}

struct SymbolDiagnostics {
    double min_eigenvalue = 0.0;      // over all labels, of the Hermitian part
    double max_op_norm = 0.0;         // sup_xi |sigma(xi)|_op
    double partial_trace_norm = 0.0;  // sum_support d Tr sigma
    double hermiticity_defect = 0.0;  // max |sigma - sigma*|
    std::optional<double> tail_bound; // analytic bound for the series beyond support
    bool certified = false;           // defect <= 1e-12 and min eigenvalue >= -1e-12
};

// --- analytic tails ---------------------------------------------------------

namespace detail {

// Upper bound on sum_{<xi> > lambda} d^2 f(<xi>) for a decreasing f:
// exact label sums out to M = max(2 lambda, lambda + 32), then integral
// comparison continuation beyond M.
inline double tail_beyond(GroupId g, const std::function<double(double)>& f, double lambda,
                          bool* converged = nullptr) {
    if (converged) *converged = true;
    const double M = std::max(2.0 * lambda, lambda + 32.0);
    CompensatedSum exact;
    for (const auto& label : enumerate_dual(g, M))
        if (label.weight > lambda)
            exact.add(static_cast<double>(label.dim) * label.dim * f(label.weight));
    double cont = 0.0;
    switch (g) {
        case GroupId::Torus1: {
            const double k0 = std::floor(std::sqrt(M * M - 1.0)) + 1.0;
            cont = 2.0 * integrate_to_infinity(
                             [&](double x) { return f(std::sqrt(1.0 + x * x)); }, k0 - 1.0);
            break;
        }
        case GroupId::Torus2: {
            const double R = std::sqrt(M * M - 1.0);
            const double sq2 = std::sqrt(2.0);
            cont = 2.0 * kPi *
                   integrate_to_infinity(
                       [&](double u) { return f(std::sqrt(1.0 + u * u)) * (u + 0.5 * sq2); },
                       std::max(0.0, R - sq2));
            break;
        }
        case GroupId::SU2: {
            const double l0 = 0.5 * (-1.0 + std::sqrt(4.0 * M * M - 3.0));
            auto h = [&](double x) {
                const double w = std::sqrt(1.0 + x * (x + 1.0));
                return (2.0 * x + 1.0) * (2.0 * x + 1.0) * f(w);
            };
            cont = 2.0 * integrate_to_infinity(h, std::max(0.0, l0 - 0.5));
            break;
        }
    }
    if (!std::isfinite(cont)) {
        if (converged) *converged = false;
        cont = 0.0;
    }
    return exact.value() + cont;
}

}  // namespace detail

// Analytic upper bound on the trace-norm tail sum_{<xi> > lambda} d Tr sigma
// for the built-in families; nullopt for custom symbols (and zero for the
// zero symbol).
inline std::optional<double> analytic_trace_tail(const SymbolField& s, double lambda) {
    if (s.family == SymbolFamily::Custom)
        return s.is_zero() ? std::optional<double>(0.0) : std::nullopt;
    if (s.family == SymbolFamily::Polynomial && !(s.params.beta > group_dim(s.group)))
        return std::nullopt;  // series diverges
    auto f = [&](double w) { return scalar_symbol_value(s.family, s.params, w); };
    return detail::tail_beyond(s.group, f, lambda);
}

inline SymbolDiagnostics check_hermitian_psd(const SymbolField& s) {
    SymbolDiagnostics d;
    d.min_eigenvalue = std::numeric_limits<double>::infinity();
    CompensatedSum trace;
    for (std::size_t i = 0; i < s.support.size(); ++i) {
        const Eigen::MatrixXcd& m = s.matrices[i];
        d.hermiticity_defect =
            std::max(d.hermiticity_defect, (m - m.adjoint()).cwiseAbs().maxCoeff());
        Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
        d.min_eigenvalue = std::min(d.min_eigenvalue, es.eigenvalues().minCoeff());
        d.max_op_norm = std::max(d.max_op_norm, es.eigenvalues().cwiseAbs().maxCoeff());
        trace.add(s.support[i].dim * herm.trace().real());
    }
    if (s.support.empty()) d.min_eigenvalue = 0.0;
    d.partial_trace_norm = trace.value();
    d.tail_bound = analytic_trace_tail(s, s.lambda_max);
    d.certified = d.hermiticity_defect <= 1e-12 && d.min_eigenvalue >= -1e-12;
    return d;
}

// Unique positive square root H with H(xi)^2 = sigma(xi). Refuses symbols
// that fail certification.
inline SymbolField sqrt_symbol(const SymbolField& s) {
    const SymbolDiagnostics diag = check_hermitian_psd(s);
    if (!diag.certified)
        throw CertificationError(
            "sqrt_symbol: symbol is not certified Hermitian positive semidefinite");
    SymbolField h = s;
    h.is_sqrt_field = true;
    switch (s.family) {  // keep the analytic-family tag exact under sqrt
        case SymbolFamily::Heat: h.params.t = 0.5 * s.params.t; break;
        case SymbolFamily::Polynomial: h.params.beta = 0.5 * s.params.beta; break;
        case SymbolFamily::Subgaussian: h.params.omega = 0.5 * s.params.omega; break;
        case SymbolFamily::Custom: break;
    }
    for (std::size_t i = 0; i < s.matrices.size(); ++i) {
        Eigen::MatrixXcd herm = 0.5 * (s.matrices[i] + s.matrices[i].adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
        Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        h.matrices[i] = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    }
    return h;
}

struct TraceNorm {
    double partial = 0.0;                 // sum_support d Tr sigma
    std::optional<double> tail_bound;     // total lies in [partial, partial + tail]
};

inline TraceNorm trace_norm(const SymbolField& s) {
    const SymbolDiagnostics diag = check_hermitian_psd(s);
    if (!diag.certified)
        throw CertificationError("trace_norm: symbol is not certified");
    CompensatedSum sum;
    for (std::size_t i = 0; i < s.support.size(); ++i)
        sum.add(s.support[i].dim * s.matrices[i].trace().real());
    return TraceNorm{sum.value(), analytic_trace_tail(s, s.lambda_max)};
}

// --- decay-order fits -------------------------------------------------------

namespace detail {

// (weight, mean value) pairs deduplicated over equal weights, ascending.
inline std::vector<std::pair<double, double>> by_distinct_weight(
    const std::vector<IrrepLabel>& support, const std::vector<double>& values) {
    std::vector<std::pair<double, double>> out;
    std::vector<int> counts;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (!out.empty() && std::abs(out.back().first - support[i].weight) < 1e-9) {
            out.back().second += values[i];
            ++counts.back();
        } else {
            out.push_back({support[i].weight, values[i]});
            counts.push_back(1);
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i].second /= counts[i];
    return out;
}

struct LineFit {
    double slope = 0.0, intercept = 0.0, sse = 0.0;
};

inline LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    LineFit f;
    if (std::abs(denom) < 1e-14 * (1.0 + sxx * n)) {
        f.slope = 0.0;
        f.intercept = sy / n;
    } else {
        f.slope = (n * sxy - sx * sy) / denom;
        f.intercept = (sy - f.slope * sx) / n;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        f.sse += r * r;
    }
    return f;
}

}  // namespace detail

struct TraceOrderFit {
    double beta_hat = 0.0;  // least-squares decay exponent on the upper weight window
    double b_hat = 0.0;     // witnessing constant: Tr sigma <= b_hat d <xi>^{-beta_hat} on support
};

// Fits log(Tr sigma / d) against -beta log<xi>, using the largest half of the
// distinct-weight window to suppress preasymptotic bias.
inline TraceOrderFit classify_trace_order(const SymbolField& s) {
    if (!check_hermitian_psd(s).certified)
        throw CertificationError("classify_trace_order: symbol is not certified");
    std::vector<double> traces(s.support.size());
    for (std::size_t i = 0; i < s.support.size(); ++i)
        traces[i] = s.matrices[i].trace().real() / s.support[i].dim;
    auto pts = detail::by_distinct_weight(s.support, traces);
    pts.erase(std::remove_if(pts.begin(), pts.end(),
                             [](const auto& p) { return !(p.second > 0.0); }),
              pts.end());
    if (pts.size() < 10)
        throw std::invalid_argument(
            "classify_trace_order: need at least 10 distinct weights with positive trace");
    std::vector<double> x, y;
    for (std::size_t i = pts.size() / 2; i < pts.size(); ++i) {
        x.push_back(std::log(pts[i].first));
        y.push_back(std::log(pts[i].second));
    }
    if (std::abs(x.front() - x.back()) < 1e-12)
        throw std::invalid_argument("classify_trace_order: degenerate weight window");
    const auto fit = detail::least_squares(x, y);
    TraceOrderFit out;
    out.beta_hat = -fit.slope;
    double logb = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.support.size(); ++i) {
        const double tr = s.matrices[i].trace().real() / s.support[i].dim;
        if (tr > 0.0)
            logb = std::max(logb, std::log(tr) + out.beta_hat * std::log(s.support[i].weight));
    }
    out.b_hat = std::exp(logb);
    return out;
}

struct DetOrderFit {
    double gamma_hat = 0.0;
    double omega_hat = 0.0;
    double a_hat = 0.0;           // witness: (det sigma)^{1/d} >= a_hat^2 e^{-2 omega_hat <xi>^gamma_hat}
    bool gamma_vanishes = false;  // best fit pinned at the lower gamma boundary
};

// Fits log (det sigma)^{1/d} = 2 log a - 2 omega <xi>^gamma over the upper
// half of the weight window; gamma by grid + golden refinement, (a, omega) by
// linear least squares for each gamma.
inline DetOrderFit classify_det_order(const SymbolField& s) {
    const SymbolDiagnostics diag = check_hermitian_psd(s);
    if (!diag.certified) throw CertificationError("classify_det_order: symbol is not certified");
    if (!(diag.min_eigenvalue > 0.0))
        throw std::domain_error(
            "classify_det_order: zero determinant; determinant-order hypotheses do not apply");
    std::vector<double> logdet(s.support.size());
    for (std::size_t i = 0; i < s.support.size(); ++i) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            0.5 * (s.matrices[i] + s.matrices[i].adjoint()), Eigen::EigenvaluesOnly);
        logdet[i] = es.eigenvalues().array().log().sum() / s.support[i].dim;
    }
    auto pts = detail::by_distinct_weight(s.support, logdet);
    if (pts.size() < 4)
        throw std::invalid_argument("classify_det_order: need at least 4 distinct weights");
    std::vector<double> w, y;
    for (std::size_t i = pts.size() / 2; i < pts.size(); ++i) {
        w.push_back(pts[i].first);
        y.push_back(pts[i].second);
    }
    const double gamma_lo = 0.05, gamma_hi = 4.0;
    auto sse_at = [&](double gamma) {
        std::vector<double> z(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) z[i] = std::pow(w[i], gamma);
        auto fit = detail::least_squares(z, y);
        if (fit.slope > 0.0) {  // omega must be nonnegative
            double mean = 0.0;
            for (double v : y) mean += v;
            mean /= y.size();
            double sse = 0.0;
            for (double v : y) sse += (v - mean) * (v - mean);
            return std::make_pair(sse, detail::LineFit{0.0, mean, sse});
        }
        return std::make_pair(fit.sse, fit);
    };
    double best_gamma = gamma_lo;
    double best_sse = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 80; ++i) {
        const double gamma = gamma_lo * std::pow(gamma_hi / gamma_lo, i / 80.0);
        const double sse = sse_at(gamma).first;
        if (sse < best_sse) {
            best_sse = sse;
            best_gamma = gamma;
        }
    }
    {   // golden refinement
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double a = std::max(gamma_lo, best_gamma / 1.3), b = std::min(gamma_hi, best_gamma * 1.3);
        double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
        double f1 = sse_at(x1).first, f2 = sse_at(x2).first;
        for (int it = 0; it < 120 && (b - a) > 1e-10 * (1.0 + b); ++it) {
            if (f1 <= f2) {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - phi * (b - a);
                f1 = sse_at(x1).first;
            } else {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + phi * (b - a);
                f2 = sse_at(x2).first;
            }
        }
        const double g = 0.5 * (a + b);
        if (sse_at(g).first <= best_sse) best_gamma = g;
    }
    const auto fit = sse_at(best_gamma).second;
    DetOrderFit out;
    out.gamma_hat = best_gamma;
    out.omega_hat = -0.5 * fit.slope;
    out.gamma_vanishes = best_gamma <= 0.1;
    double log_a2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s.support.size(); ++i)
        log_a2 = std::min(log_a2, logdet[i] + 2.0 * out.omega_hat *
                                                  std::pow(s.support[i].weight, out.gamma_hat));
    out.a_hat = std::exp(0.5 * log_a2);
    return out;
}

// --- text serialization -----------------------------------------------------

inline void save_symbol(const SymbolField& s, std::ostream& os) {
    os << "lierkhs-symbol v1\n";
    os << "group " << group_name(s.group) << "\n";
    os << "family " << family_name(s.family) << "\n";
    switch (s.family) {
        case SymbolFamily::Heat: os << "param t " << format_double(s.params.t) << "\n"; break;
        case SymbolFamily::Polynomial:
            os << "param beta " << format_double(s.params.beta) << "\n";
            break;
        case SymbolFamily::Subgaussian:
            os << "param omega " << format_double(s.params.omega) << "\n";
            os << "param gamma " << format_double(s.params.gamma) << "\n";
            break;
        case SymbolFamily::Custom: break;
    }
    os << "sqrt " << (s.is_sqrt_field ? 1 : 0) << "\n";
    os << "lambda_max " << format_double(s.lambda_max) << "\n";
    os << "labels " << s.support.size() << "\n";
    for (std::size_t i = 0; i < s.support.size(); ++i) {
        const auto& l = s.support[i];
        os << "label " << l.index[0];
        if (s.group == GroupId::Torus2) os << " " << l.index[1];
        os << " dim " << l.dim << "\n";
        for (int r = 0; r < l.dim; ++r) {
            for (int c = 0; c < l.dim; ++c) {
                if (c) os << "  ";
                os << format_double(s.matrices[i](r, c).real()) << " "
                   << format_double(s.matrices[i](r, c).imag());
            }
            os << "\n";
        }
    }
}

inline void save_symbol(const SymbolField& s, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("save_symbol: cannot open " + path);
    save_symbol(s, os);
}

inline SymbolField load_symbol(std::istream& is) {
    auto fail = [](int line, const std::string& msg) {
        throw std::runtime_error("symbol file line " + std::to_string(line) + ": " + msg);
    };
    int lineno = 0;
    auto next_line = [&](std::string& out) {
        if (!std::getline(is, out)) return false;
        ++lineno;
        return true;
    };
    std::string line;
    if (!next_line(line) || line != "lierkhs-symbol v1") fail(1, "bad magic header");
    SymbolField s;
    std::size_t nlabels = 0;
    bool have_group = false, have_lambda = false;
    while (next_line(line)) {
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        if (key == "group") {
            std::string v;
            ss >> v;
            if (v == "torus1") s.group = GroupId::Torus1;
            else if (v == "torus2") s.group = GroupId::Torus2;
            else if (v == "su2") s.group = GroupId::SU2;
            else fail(lineno, "unknown group '" + v + "'");
            have_group = true;
        } else if (key == "family") {
            std::string v;
            ss >> v;
            if (v == "heat") s.family = SymbolFamily::Heat;
            else if (v == "polynomial") s.family = SymbolFamily::Polynomial;
            else if (v == "subgaussian") s.family = SymbolFamily::Subgaussian;
            else if (v == "custom") s.family = SymbolFamily::Custom;
            else fail(lineno, "unknown family '" + v + "'");
        } else if (key == "param") {
            std::string name;
            double v;
            if (!(ss >> name >> v)) fail(lineno, "malformed param line");
            if (name == "t") s.params.t = v;
            else if (name == "beta") s.params.beta = v;
            else if (name == "omega") s.params.omega = v;
            else if (name == "gamma") s.params.gamma = v;
            else fail(lineno, "unknown param '" + name + "'");
        } else if (key == "sqrt") {
            int v;
            if (!(ss >> v)) fail(lineno, "malformed sqrt line");
            s.is_sqrt_field = v != 0;
        } else if (key == "lambda_max") {
            if (!(ss >> s.lambda_max)) fail(lineno, "malformed lambda_max line");
            have_lambda = true;
        } else if (key == "labels") {
            if (!(ss >> nlabels)) fail(lineno, "malformed labels line");
            break;
        } else {
            fail(lineno, "unknown header key '" + key + "'");
        }
    }
    if (!have_group || !have_lambda) fail(lineno, "missing group or lambda_max header");
    s.support = enumerate_dual(s.group, s.lambda_max);
    if (s.support.size() != nlabels)
        fail(lineno, "label count does not match enumerate_dual at lambda_max");
    s.matrices.reserve(nlabels);
    for (std::size_t i = 0; i < nlabels; ++i) {
        if (!next_line(line)) fail(lineno, "unexpected end of file");
        std::istringstream ss(line);
        std::string key, dimkey;
        std::array<int, 2> idx{0, 0};
        int dim = 0;
        ss >> key >> idx[0];
        if (s.group == GroupId::Torus2) ss >> idx[1];
        ss >> dimkey >> dim;
        if (key != "label" || dimkey != "dim" || !ss) fail(lineno, "malformed label line");
        if (idx != s.support[i].index || dim != s.support[i].dim)
            fail(lineno, "label does not match enumeration order");
        Eigen::MatrixXcd m(dim, dim);
        for (int r = 0; r < dim; ++r) {
            if (!next_line(line)) fail(lineno, "unexpected end of file in matrix block");
            std::istringstream row(line);
            for (int c = 0; c < dim; ++c) {
                double re, im;
                if (!(row >> re >> im)) fail(lineno, "malformed matrix row");
                m(r, c) = cplx(re, im);
            }
        }
        s.matrices.push_back(std::move(m));
    }
    return s;
}

inline SymbolField load_symbol(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("load_symbol: cannot open " + path);
    return load_symbol(is);
}

// Seeded random strictly positive definite custom symbol (test/bench helper).
inline SymbolField random_psd_symbol(GroupId g, double lambda_max, std::uint64_t seed,
                                     double ridge = 0.1) {
    Rng rng(seed, stream::kCustomSymbol);
    auto labels = enumerate_dual(g, lambda_max);
    std::vector<Eigen::MatrixXcd> mats;
    mats.reserve(labels.size());
    for (const auto& l : labels) {
        Eigen::MatrixXcd a(l.dim, l.dim);
        for (int r = 0; r < l.dim; ++r)
            for (int c = 0; c < l.dim; ++c) a(r, c) = rng.normal_complex();
        Eigen::MatrixXcd m = a * a.adjoint() / l.dim +
                             ridge * Eigen::MatrixXcd::Identity(l.dim, l.dim);
        mats.push_back(0.5 * (m + m.adjoint()));
    }
    return make_custom_symbol(g, lambda_max, std::move(mats));
}

}  // namespace lierkhs

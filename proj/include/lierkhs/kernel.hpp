// kernel.hpp — kernel synthesis and the reproducing kernel Hilbert space.
//
//   K(x,y)  = sum_xi d Tr[ xi(x) sigma(xi) xi(y)^* ]
//   g(x)    = sum_xi d Tr[ C(xi) xi(x) H(xi) ],     H^2 = sigma
//   <g,h>_K = sum_xi d Tr[ C(xi) B(xi)^* ]
//
// The kernel section K_y has coefficient field C_y(xi) = (xi(y) H(xi))^*, so
// <g, K_y>_K reproduces g(y). All label sums run in a fixed order (weight,
// then index) with compensated accumulation, making results independent of
// evaluation order at the 1e-14 level.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <ostream>
#include <vector>

#include "common.hpp"
#include "groups.hpp"
#include "quadrature.hpp"
#include "rng.hpp"
#include "symbols.hpp"

namespace lierkhs {

struct TruncatedKernel {
    SymbolField symbol;  // sigma_T on A_Lambda
    SymbolField sqrt;    // H with H^2 = sigma
    double lambda_max = 0.0;
    GroupId group = GroupId::Torus1;
};

inline TruncatedKernel make_kernel(const SymbolField& symbol) {
    TruncatedKernel k;
    k.symbol = symbol;
    k.sqrt = sqrt_symbol(symbol);
    k.lambda_max = symbol.lambda_max;
    k.group = symbol.group;
    return k;
}

struct RkhsCoefficients {
    std::vector<IrrepLabel> support;
    std::vector<Eigen::MatrixXcd> matrices;
    double norm_sq = 0.0;  // sum d |C(xi)|_HS^2, cached at construction

    static RkhsCoefficients zero(const std::vector<IrrepLabel>& support) {
        RkhsCoefficients c;
        c.support = support;
        for (const auto& l : support)
            c.matrices.push_back(Eigen::MatrixXcd::Zero(l.dim, l.dim));
        return c;
    }
    double norm() const { return std::sqrt(std::max(0.0, norm_sq)); }
};

inline double coefficient_norm_sq(const std::vector<IrrepLabel>& support,
                                  const std::vector<Eigen::MatrixXcd>& mats) {
    CompensatedSum s;
    for (std::size_t i = 0; i < support.size(); ++i) s.add(support[i].dim * mats[i].squaredNorm());
    return s.value();
}

inline RkhsCoefficients make_coefficients(const std::vector<IrrepLabel>& support,
                                          std::vector<Eigen::MatrixXcd> mats) {
    if (support.size() != mats.size())
        throw std::invalid_argument("make_coefficients: one matrix per support label");
    for (std::size_t i = 0; i < support.size(); ++i)
        if (mats[i].rows() != support[i].dim || mats[i].cols() != support[i].dim)
            throw std::invalid_argument("make_coefficients: matrix size must equal d_xi");
    RkhsCoefficients c;
    c.support = support;
    c.matrices = std::move(mats);
    c.norm_sq = coefficient_norm_sq(c.support, c.matrices);
    return c;
}

inline RkhsCoefficients random_coefficients(const std::vector<IrrepLabel>& support,
                                            std::uint64_t seed) {
    Rng rng(seed, stream::kCoefficients);
    std::vector<Eigen::MatrixXcd> mats;
    mats.reserve(support.size());
    for (const auto& l : support) {
        Eigen::MatrixXcd m(l.dim, l.dim);
        for (int r = 0; r < l.dim; ++r)
            for (int c = 0; c < l.dim; ++c) m(r, c) = rng.normal_complex();
        mats.push_back(std::move(m));
    }
    return make_coefficients(support, std::move(mats));
}

// K(x, y) = sum d Tr[xi(x) sigma xi(y)^*].
inline cplx eval_kernel(const TruncatedKernel& k, const GroupPoint& x, const GroupPoint& y) {
    CompensatedComplexSum sum;
    for (std::size_t i = 0; i < k.symbol.support.size(); ++i) {
        const auto& label = k.symbol.support[i];
        const Eigen::MatrixXcd dx = evaluate_irrep(k.group, label, x);
        const Eigen::MatrixXcd dy = evaluate_irrep(k.group, label, y);
        sum.add(static_cast<double>(label.dim) *
                (dx * k.symbol.matrices[i] * dy.adjoint()).trace());
    }
    return sum.value();
}

struct GramResult {
    Eigen::MatrixXcd gram;
    double min_eigenvalue = 0.0;
    double hermitian_defect = 0.0;
};

inline GramResult kernel_gram(const TruncatedKernel& k, const std::vector<GroupPoint>& points) {
    const int n = static_cast<int>(points.size());
    GramResult r;
    r.gram.resize(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            r.gram(i, j) = eval_kernel(k, points[i], points[j]);
            if (j < i) r.gram(j, i) = eval_kernel(k, points[j], points[i]);
        }
    r.hermitian_defect = (r.gram - r.gram.adjoint()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (r.gram + r.gram.adjoint()),
                                                       Eigen::EigenvaluesOnly);
    r.min_eigenvalue = es.eigenvalues().minCoeff();
    return r;
}

// max over pairs of |K(gx, gy) - K(x, y)|; zero in exact arithmetic by
// left-invariance.
inline double check_invariance(const TruncatedKernel& k,
                               const std::vector<std::pair<GroupPoint, GroupPoint>>& pairs,
                               const GroupPoint& g) {
    double dev = 0.0;
    for (const auto& [x, y] : pairs) {
        const cplx before = eval_kernel(k, x, y);
        const cplx after = eval_kernel(k, multiply(g, x), multiply(g, y));
        dev = std::max(dev, std::abs(after - before));
    }
    return dev;
}

// g(x) = sum d Tr[C(xi) xi(x) H(xi)].
inline cplx rkhs_eval(const RkhsCoefficients& c, const TruncatedKernel& k, const GroupPoint& x) {
    if (c.support.size() != k.sqrt.support.size())
        throw std::invalid_argument("rkhs_eval: coefficient support mismatch");
    CompensatedComplexSum sum;
    for (std::size_t i = 0; i < c.support.size(); ++i) {
        const auto& label = c.support[i];
        const Eigen::MatrixXcd dx = evaluate_irrep(k.group, label, x);
        sum.add(static_cast<double>(label.dim) *
                (c.matrices[i] * dx * k.sqrt.matrices[i]).trace());
    }
    return sum.value();
}

// <g, h>_K = sum d Tr[C B^*]; sesquilinear, equals the l2(dual) pairing.
inline cplx rkhs_inner(const RkhsCoefficients& c, const RkhsCoefficients& b) {
    if (c.support.size() != b.support.size())
        throw std::invalid_argument("rkhs_inner: support mismatch");
    CompensatedComplexSum sum;
    for (std::size_t i = 0; i < c.support.size(); ++i)
        sum.add(static_cast<double>(c.support[i].dim) *
                (c.matrices[i] * b.matrices[i].adjoint()).trace());
    return sum.value();
}

// Coefficient field of the kernel section K_y: C_y(xi) = (xi(y) H(xi))^*.
inline RkhsCoefficients kernel_section(const TruncatedKernel& k, const GroupPoint& y) {
    std::vector<Eigen::MatrixXcd> mats;
    mats.reserve(k.sqrt.support.size());
    for (std::size_t i = 0; i < k.sqrt.support.size(); ++i) {
        const Eigen::MatrixXcd dy = evaluate_irrep(k.group, k.sqrt.support[i], y);
        mats.push_back((dy * k.sqrt.matrices[i]).adjoint());
    }
    return make_coefficients(k.sqrt.support, std::move(mats));
}

// |<g, K_y>_K - g(y)|, both sides summed independently.
inline double reproducing_residual(const RkhsCoefficients& c, const TruncatedKernel& k,
                                   const GroupPoint& y) {
    const RkhsCoefficients cy = kernel_section(k, y);
    return std::abs(rkhs_inner(c, cy) - rkhs_eval(c, k, y));
}

struct SampledFunction {
    const QuadratureGrid* grid = nullptr;
    std::vector<cplx> values;
    double sup_norm = 0.0;
};

// Samples of F^{-1}[H C] on the grid; linear in C.
inline SampledFunction q_apply(const RkhsCoefficients& c, const TruncatedKernel& k,
                               const QuadratureGrid& grid) {
    if (grid.group != k.group) throw std::invalid_argument("q_apply: grid group mismatch");
    if (grid.certified_pair_weight + 1e-12 < k.lambda_max)
        throw ResolutionError("q_apply: grid is not certified for the kernel truncation");
    SampledFunction f;
    f.grid = &grid;
    f.values.resize(grid.points.size());
    for (std::size_t p = 0; p < grid.points.size(); ++p) {
        CompensatedComplexSum sum;
        for (std::size_t i = 0; i < c.support.size(); ++i) {
            const auto& label = c.support[i];
            const Eigen::MatrixXcd dx = evaluate_irrep(k.group, label, grid.points[p]);
            sum.add(static_cast<double>(label.dim) *
                    (k.sqrt.matrices[i] * c.matrices[i] * dx).trace());
        }
        f.values[p] = sum.value();
        f.sup_norm = std::max(f.sup_norm, std::abs(f.values[p]));
    }
    return f;
}

struct OperatorNorms {
    double normQ = 0.0;        // (sum_{A_Lambda} d Tr sigma)^{1/2}, truncated
    double normQ_A = 0.0;      // (sum_{<xi> <= lambda} d Tr sigma)^{1/2}
    double normQ_Acomp = 0.0;  // (sum_{lambda < <xi> <= Lambda} + analytic tail)^{1/2}
};

inline OperatorNorms operator_norms(const TruncatedKernel& k, double lambda) {
    if (!(lambda > 1.0) || lambda > k.lambda_max + 1e-12)
        throw std::invalid_argument("operator_norms: lambda must lie in (1, Lambda]");
    CompensatedSum head, comp;
    for (std::size_t i = 0; i < k.symbol.support.size(); ++i) {
        const double term = k.symbol.support[i].dim * k.symbol.matrices[i].trace().real();
        if (k.symbol.support[i].weight <= lambda) head.add(term);
        else comp.add(term);
    }
    const auto tail = analytic_trace_tail(k.symbol, k.lambda_max);
    OperatorNorms n;
    const double total = head.value() + comp.value();
    n.normQ = std::sqrt(std::max(0.0, total));
    n.normQ_A = std::sqrt(std::max(0.0, head.value()));
    n.normQ_Acomp = std::sqrt(std::max(0.0, comp.value() + tail.value_or(0.0)));
    return n;
}

// sum d <xi> Tr sigma: Lipschitz constant of K and of unit-ball images in the
// group distance (|xi(x) - xi(y)|_op <= <xi> dist).
inline double lipschitz_bound(const TruncatedKernel& k) {
    CompensatedSum s;
    for (std::size_t i = 0; i < k.symbol.support.size(); ++i)
        s.add(k.symbol.support[i].dim * k.symbol.support[i].weight *
              k.symbol.matrices[i].trace().real());
    return s.value();
}

// CSV export: group coordinates, then real and imaginary parts.
inline void write_csv(const SampledFunction& f, std::ostream& os) {
    const int n = group_dim(f.grid->group);
    if (f.grid->group == GroupId::SU2) os << "alpha,beta,gamma,re,im\n";
    else if (n == 2) os << "x1,x2,re,im\n";
    else os << "x,re,im\n";
    for (std::size_t p = 0; p < f.values.size(); ++p) {
        const auto& c = f.grid->points[p].coords;
        for (int i = 0; i < (f.grid->group == GroupId::SU2 ? 3 : n); ++i)
            os << format_double(c[i]) << ",";
        os << format_double(f.values[p].real()) << "," << format_double(f.values[p].imag())
           << "\n";
    }
}

}  // namespace lierkhs

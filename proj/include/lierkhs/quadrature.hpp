// quadrature.hpp — Haar quadrature grids and Peter-Weyl orthogonality checks.
//
// Tori use uniform product grids (exact for trigonometric polynomials below
// the Nyquist frequency). SU(2) uses uniform nodes in alpha over [0,2pi) and
// gamma over [0,4pi) with Gauss-Legendre nodes in cos(beta):
//
//   d mu = (1/16pi^2) sin(beta) d alpha d beta d gamma.
//
// A grid of resolution r integrates products of two matrix coefficients
// exactly whenever both weights satisfy <xi> <= certified_pair_weight, which
// is about r/2 by construction. Exactness is certified by a Schur
// orthogonality self-test at construction rather than assumed.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "common.hpp"
#include "groups.hpp"
#include "wigner.hpp"

namespace lierkhs {

namespace detail {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            dp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

}  // namespace detail

struct QuadratureGrid {
    GroupId group = GroupId::Torus1;
    int resolution = 0;
    std::vector<GroupPoint> points;
    std::vector<double> weights;               // positive, sum to 1
    double certified_pair_weight = 0.0;        // products of coefficients up to this <xi> are exact
    double certified_single_weight = 0.0;      // single coefficients up to this <xi> are exact
    std::vector<double> beta_nodes;            // SU(2) only: distinct beta values
};

// Largest distance from an arbitrary group point to the grid (upper estimate;
// used for the sup-norm discretization correction L * mesh).
inline double mesh_norm(const QuadratureGrid& grid) {
    switch (grid.group) {
        case GroupId::Torus1: return kPi / grid.resolution;
        case GroupId::Torus2: return kPi * std::sqrt(2.0) / grid.resolution;
        case GroupId::SU2: {
            double gap = 0.0, prev = 0.0;
            for (double b : grid.beta_nodes) {
                gap = std::max(gap, b - prev);
                prev = b;
            }
            gap = std::max(gap, kPi - prev);
            // alpha, beta, gamma displacements each rotate by at most their angle
            return kPi / grid.resolution + 0.5 * gap + kPi / grid.resolution;
        }
    }
    return 0.0;
}

namespace detail {

// Schur self-test: sum w |xi_ij|^2 = 1/d and sum w xi_ij = 0 for nontrivial
// labels inside the certified range.
inline void certify_grid(const QuadratureGrid& grid) {
    std::vector<IrrepLabel> probes;
    switch (grid.group) {
        case GroupId::Torus1: {
            int k = std::max(1, static_cast<int>(std::floor(
                        std::sqrt(grid.certified_pair_weight * grid.certified_pair_weight - 1.0))));
            probes.push_back(make_irrep(grid.group, {k, 0}));
            probes.push_back(make_irrep(grid.group, {1, 0}));
            break;
        }
        case GroupId::Torus2: {
            int k = std::max(1, static_cast<int>(std::floor(std::sqrt(
                        grid.certified_pair_weight * grid.certified_pair_weight - 1.0))));
            probes.push_back(make_irrep(grid.group, {k, 0}));
            probes.push_back(make_irrep(grid.group, {0, 1}));
            break;
        }
        case GroupId::SU2: {
            int m = 1;
            while (make_irrep(grid.group, {m + 1, 0}).weight <= grid.certified_pair_weight) ++m;
            probes.push_back(make_irrep(grid.group, {std::min(m, 6), 0}));
            probes.push_back(make_irrep(grid.group, {1, 0}));
            break;
        }
    }
    for (const auto& label : probes) {
        CompensatedComplexSum mean;
        CompensatedSum second;
        if (grid.group == GroupId::SU2) {
            // factor through cached little-d per beta node
            std::vector<Eigen::MatrixXd> dcache;
            dcache.reserve(grid.beta_nodes.size());
            for (double b : grid.beta_nodes) dcache.push_back(wigner_d(label.index[0], b));
            for (std::size_t p = 0; p < grid.points.size(); ++p) {
                const auto& pt = grid.points[p];
                std::size_t bi = 0;
                while (std::abs(grid.beta_nodes[bi] - pt.coords[1]) > 1e-14) ++bi;
                const double mp = 0.5 * label.index[0];
                const cplx v = std::polar(1.0, -mp * pt.coords[0]) * dcache[bi](0, 0) *
                               std::polar(1.0, -mp * pt.coords[2]);
                mean.add(grid.weights[p] * v);
                second.add(grid.weights[p] * std::norm(v));
            }
        } else {
            for (std::size_t p = 0; p < grid.points.size(); ++p) {
                const cplx v = evaluate_irrep(grid.group, label, grid.points[p])(0, 0);
                mean.add(grid.weights[p] * v);
                second.add(grid.weights[p] * std::norm(v));
            }
        }
        if (std::abs(mean.value()) > 1e-10 || std::abs(second.value() - 1.0 / label.dim) > 1e-10)
            throw CertificationError("haar_grid: Schur orthogonality self-test failed");
    }
}

}  // namespace detail

inline QuadratureGrid haar_grid(GroupId g, int resolution) {
    if (resolution < 2) throw std::invalid_argument("haar_grid: resolution must be >= 2");
    QuadratureGrid grid;
    grid.group = g;
    grid.resolution = resolution;
    switch (g) {
        case GroupId::Torus1: {
            const double w = 1.0 / resolution;
            for (int i = 0; i < resolution; ++i) {
                grid.points.push_back(GroupPoint{g, {2.0 * kPi * i / resolution, 0.0, 0.0}});
                grid.weights.push_back(w);
            }
            const int kmax = (resolution - 1) / 2;
            grid.certified_pair_weight = std::sqrt(1.0 + static_cast<double>(kmax) * kmax);
            grid.certified_single_weight =
                std::sqrt(1.0 + static_cast<double>(resolution - 1) * (resolution - 1));
            break;
        }
        case GroupId::Torus2: {
            const double w = 1.0 / (static_cast<double>(resolution) * resolution);
            for (int i = 0; i < resolution; ++i)
                for (int j = 0; j < resolution; ++j) {
                    grid.points.push_back(GroupPoint{
                        g, {2.0 * kPi * i / resolution, 2.0 * kPi * j / resolution, 0.0}});
                    grid.weights.push_back(w);
                }
            // per-axis frequency differences up to resolution-1 are exact;
            // <xi> <= sqrt(1+kmax^2) forces |k_i| <= kmax on each axis
            const int kmax = (resolution - 1) / 2;
            grid.certified_pair_weight = std::sqrt(1.0 + static_cast<double>(kmax) * kmax);
            grid.certified_single_weight =
                std::sqrt(1.0 + static_cast<double>(resolution - 1) * (resolution - 1));
            break;
        }
        case GroupId::SU2: {
            const int n_alpha = resolution;
            const int n_gamma = 2 * resolution;
            const int n_beta = resolution / 2 + 1;
            std::vector<double> t, wt;
            detail::gauss_legendre(n_beta, t, wt);
            grid.beta_nodes.reserve(n_beta);
            for (int j = n_beta - 1; j >= 0; --j)  // cos beta descending -> beta ascending
                grid.beta_nodes.push_back(std::acos(std::clamp(t[j], -1.0, 1.0)));
            for (int j = 0; j < n_beta; ++j) {
                const double beta = grid.beta_nodes[j];
                const double wb = 0.5 * wt[n_beta - 1 - j];
                for (int i = 0; i < n_alpha; ++i)
                    for (int k = 0; k < n_gamma; ++k) {
                        grid.points.push_back(GroupPoint{
                            g, {2.0 * kPi * i / n_alpha, beta, 4.0 * kPi * k / n_gamma}});
                        grid.weights.push_back(wb / (static_cast<double>(n_alpha) * n_gamma));
                    }
            }
            // pairs with l1 + l2 <= resolution - 1 are exact in alpha, gamma and beta
            const double lmax = 0.5 * (resolution - 1);
            grid.certified_pair_weight = std::sqrt(1.0 + lmax * (lmax + 1.0));
            const double lsingle = static_cast<double>(resolution - 1);
            grid.certified_single_weight = std::sqrt(1.0 + lsingle * (lsingle + 1.0));
            break;
        }
    }
    detail::certify_grid(grid);
    return grid;
}

// Matrix of all coefficient functions sqrt(d) xi_ij on the grid; rows indexed
// by (label, i, j) in label order.
inline Eigen::MatrixXcd coefficient_matrix(GroupId g, const std::vector<IrrepLabel>& labels,
                                           const QuadratureGrid& grid) {
    std::size_t ncoef = 0;
    for (const auto& l : labels) ncoef += static_cast<std::size_t>(l.dim) * l.dim;
    Eigen::MatrixXcd F(ncoef, grid.points.size());
    std::size_t row0 = 0;
    for (const auto& label : labels) {
        const int d = label.dim;
        const double sd = std::sqrt(static_cast<double>(d));
        if (g == GroupId::SU2) {
            std::vector<Eigen::MatrixXd> dcache;
            dcache.reserve(grid.beta_nodes.size());
            for (double b : grid.beta_nodes) dcache.push_back(wigner_d(label.index[0], b));
            for (std::size_t p = 0; p < grid.points.size(); ++p) {
                const auto& pt = grid.points[p];
                std::size_t bi = 0;
                while (std::abs(grid.beta_nodes[bi] - pt.coords[1]) > 1e-14) ++bi;
                const Eigen::MatrixXcd D =
                    wigner_D_from_d(label.index[0], dcache[bi], pt.coords[0], pt.coords[2]);
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j) F(row0 + i * d + j, p) = sd * D(i, j);
            }
        } else {
            for (std::size_t p = 0; p < grid.points.size(); ++p)
                F(row0, p) = sd * evaluate_irrep(g, label, grid.points[p])(0, 0);
        }
        row0 += static_cast<std::size_t>(d) * d;
    }
    return F;
}

// Max deviation of the grid Gram matrix of {sqrt(d) xi_ij} from the identity.
// Throws ResolutionError when the grid cannot integrate the requested pairs.
inline double verify_orthogonality(GroupId g, const std::vector<IrrepLabel>& labels,
                                   const QuadratureGrid& grid) {
    if (grid.group != g) throw std::invalid_argument("verify_orthogonality: group mismatch");
    double wmax = 0.0;
    for (const auto& l : labels) wmax = std::max(wmax, l.weight);
    if (wmax > grid.certified_pair_weight + 1e-12)
        throw ResolutionError(
            "verify_orthogonality: grid resolution insufficient for requested labels (certified "
            "pair weight " +
            format_double(grid.certified_pair_weight) + " < " + format_double(wmax) + ")");
    const Eigen::MatrixXcd F = coefficient_matrix(g, labels, grid);
    Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(grid.weights.data(), grid.weights.size());
    const Eigen::MatrixXcd G = F * w.asDiagonal() * F.adjoint();
    return (G - Eigen::MatrixXcd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff();
}

}  // namespace lierkhs

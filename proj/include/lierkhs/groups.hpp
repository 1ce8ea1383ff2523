// groups.hpp — the unitary dual and group operations for T^1, T^2 and SU(2).
//
// Irreps are labelled by integers: the frequency k on T^1, the pair (k1, k2)
// on T^2, and m = 2l on SU(2) (twice the spin, so half-integer spins stay
// exact). Weights follow <xi> = (1 + lambda_xi)^{1/2} with the Laplace
// eigenvalue lambda = |k|^2 on tori and lambda = l(l+1) on SU(2) (Casimir in
// the standard spin normalization; documented since any fixed elliptic
// normalization works, but fits must agree with the enumeration).
//
// SU(2) points are stored as z-y-z Euler angles (alpha, beta, gamma) in
// [0,2pi) x [0,pi] x [0,4pi), which parameterizes the group exactly once up
// to boundary sets. Group multiplication goes through the defining 2x2
// unitaries.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "common.hpp"
#include "rng.hpp"
#include "wigner.hpp"

namespace lierkhs {

enum class GroupId { Torus1, Torus2, SU2 };

inline int group_dim(GroupId g) {
    switch (g) {
        case GroupId::Torus1: return 1;
        case GroupId::Torus2: return 2;
        case GroupId::SU2: return 3;
    }
    throw std::invalid_argument("group_dim: unknown group");
}

inline const char* group_name(GroupId g) {
    switch (g) {
        case GroupId::Torus1: return "torus1";
        case GroupId::Torus2: return "torus2";
        case GroupId::SU2: return "su2";
    }
    return "?";
}

struct IrrepLabel {
    GroupId group = GroupId::Torus1;
    std::array<int, 2> index{0, 0};  // T^1: {k,0}; T^2: {k1,k2}; SU(2): {m,0}, m = 2l
    int dim = 1;
    double eigenvalue = 0.0;  // lambda_xi
    double weight = 1.0;      // <xi> = sqrt(1 + lambda)

    friend bool operator==(const IrrepLabel& a, const IrrepLabel& b) {
        return a.group == b.group && a.index == b.index;
    }
};

inline IrrepLabel make_irrep(GroupId g, std::array<int, 2> idx) {
    IrrepLabel l;
    l.group = g;
    l.index = idx;
    switch (g) {
        case GroupId::Torus1:
            if (idx[1] != 0) throw std::invalid_argument("make_irrep: torus1 index is a single integer");
            l.dim = 1;
            l.eigenvalue = static_cast<double>(idx[0]) * idx[0];
            break;
        case GroupId::Torus2:
            l.dim = 1;
            l.eigenvalue = static_cast<double>(idx[0]) * idx[0] + static_cast<double>(idx[1]) * idx[1];
            break;
        case GroupId::SU2: {
            if (idx[0] < 0 || idx[1] != 0)
                throw std::invalid_argument("make_irrep: su2 label is m = 2l >= 0");
            const double l2 = 0.5 * idx[0];
            l.dim = idx[0] + 1;
            l.eigenvalue = l2 * (l2 + 1.0);
            break;
        }
    }
    l.weight = std::sqrt(1.0 + l.eigenvalue);
    return l;
}

// All labels with <xi> <= lambda_max, sorted by weight then index.
inline std::vector<IrrepLabel> enumerate_dual(GroupId g, double lambda_max) {
    if (!(lambda_max > 1.0))
        throw std::invalid_argument("enumerate_dual: lambda_max must exceed 1 (family A_lambda lives on (1,inf))");
    const double cap = lambda_max * lambda_max - 1.0;  // lambda_xi <= cap
    std::vector<IrrepLabel> out;
    switch (g) {
        case GroupId::Torus1: {
            const int K = static_cast<int>(std::floor(std::sqrt(cap) + 1e-9));
            for (int k = -K; k <= K; ++k)
                if (static_cast<double>(k) * k <= cap) out.push_back(make_irrep(g, {k, 0}));
            break;
        }
        case GroupId::Torus2: {
            const int K = static_cast<int>(std::floor(std::sqrt(cap) + 1e-9));
            for (int k1 = -K; k1 <= K; ++k1)
                for (int k2 = -K; k2 <= K; ++k2)
                    if (static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2 <= cap)
                        out.push_back(make_irrep(g, {k1, k2}));
            break;
        }
        case GroupId::SU2: {
            for (int m = 0;; ++m) {
                const double l2 = 0.5 * m;
                if (l2 * (l2 + 1.0) > cap) break;
                out.push_back(make_irrep(g, {m, 0}));
            }
            break;
        }
    }
    std::sort(out.begin(), out.end(), [](const IrrepLabel& a, const IrrepLabel& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        return a.index < b.index;
    });
    return out;
}

struct GroupPoint {
    GroupId group = GroupId::Torus1;
    // T^1: {x,0,0}; T^2: {x1,x2,0}; SU(2): Euler {alpha, beta, gamma}.
    std::array<double, 3> coords{0.0, 0.0, 0.0};
};

inline GroupPoint identity_point(GroupId g) { return GroupPoint{g, {0.0, 0.0, 0.0}}; }

namespace detail {

inline double wrap(double x, double period) {
    double y = std::fmod(x, period);
    if (y < 0.0) y += period;
    if (y == period) y = 0.0;
    return y;
}

}  // namespace detail

// Defining 2x2 unitary of an SU(2) point (equals the spin-1/2 D-matrix).
inline Eigen::Matrix2cd su2_matrix(const GroupPoint& p) {
    if (p.group != GroupId::SU2) throw std::invalid_argument("su2_matrix: not an SU(2) point");
    const double a = p.coords[0], b = p.coords[1], c = p.coords[2];
    const double cb = std::cos(0.5 * b), sb = std::sin(0.5 * b);
    Eigen::Matrix2cd u;
    u(0, 0) = std::polar(cb, -0.5 * (a + c));
    u(0, 1) = -std::polar(sb, -0.5 * (a - c));
    u(1, 0) = std::polar(sb, 0.5 * (a - c));
    u(1, 1) = std::polar(cb, 0.5 * (a + c));
    return u;
}

// Euler angles of a matrix in SU(2); inverse of su2_matrix up to the
// parameterization boundary. The unit-determinant unitary constraint is
// checked to 1e-12. Every returned triple is verified by reconstruction.
inline GroupPoint su2_from_matrix(const Eigen::Matrix2cd& u) {
    const double unitary_defect = (u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    const double det_defect = std::abs(u.determinant() - 1.0);
    if (unitary_defect > 1e-12 || det_defect > 1e-12)
        throw std::invalid_argument("su2_from_matrix: matrix is not in SU(2) to 1e-12");
    const cplx a = u(0, 0);
    const cplx b = u(0, 1);
    const double beta = 2.0 * std::atan2(std::abs(b), std::abs(a));
    const double two_pi = 2.0 * kPi, four_pi = 4.0 * kPi;

    std::vector<std::array<double, 2>> candidates;  // (alpha, gamma)
    if (std::abs(b) < 1e-14) {          // beta ~ 0: only alpha + gamma determined
        double s = detail::wrap(-2.0 * std::arg(a), four_pi);
        if (s < two_pi) candidates.push_back({s, 0.0});
        else candidates.push_back({s - two_pi, two_pi});
    } else if (std::abs(a) < 1e-14) {   // beta ~ pi: only alpha - gamma determined
        double v = detail::wrap(-2.0 * std::arg(-b), four_pi);
        if (v < two_pi) candidates.push_back({v, 0.0});
        else candidates.push_back({v - two_pi, two_pi});
    } else {
        // alpha + gamma = -2 arg(a) (mod 4pi), alpha - gamma = -2 arg(-b) (mod 4pi);
        // admissible shifts are (alpha, gamma) += 2pi (s, t) with s + t even,
        // i.e. gamma moves by the same 2pi s as alpha, mod 4pi.
        const double u0 = -2.0 * std::arg(a);
        const double v0 = -2.0 * std::arg(-b);
        const double alpha0 = 0.5 * (u0 + v0);
        const double gamma0 = 0.5 * (u0 - v0);
        const double s0 = -std::floor(alpha0 / two_pi);
        for (double s : {s0, s0 + 1.0, s0 - 1.0}) {
            double alpha = alpha0 + two_pi * s;
            if (alpha < 0.0 || alpha >= two_pi) alpha = detail::wrap(alpha, two_pi);
            candidates.push_back({alpha, detail::wrap(gamma0 + two_pi * s, four_pi)});
        }
    }

    GroupPoint best{GroupId::SU2, {0.0, beta, 0.0}};
    double best_defect = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) {
        GroupPoint p{GroupId::SU2, {c[0], beta, c[1]}};
        double defect = (su2_matrix(p) - u).cwiseAbs().maxCoeff();
        if (defect < best_defect) {
            best_defect = defect;
            best = p;
        }
    }
    if (best_defect > 1e-9)
        throw std::runtime_error("su2_from_matrix: Euler-angle recovery failed");
    return best;
}

inline GroupPoint multiply(const GroupPoint& x, const GroupPoint& y) {
    if (x.group != y.group) throw std::invalid_argument("multiply: group mismatch");
    switch (x.group) {
        case GroupId::Torus1:
            return GroupPoint{x.group, {detail::wrap(x.coords[0] + y.coords[0], 2.0 * kPi), 0.0, 0.0}};
        case GroupId::Torus2:
            return GroupPoint{x.group,
                              {detail::wrap(x.coords[0] + y.coords[0], 2.0 * kPi),
                               detail::wrap(x.coords[1] + y.coords[1], 2.0 * kPi), 0.0}};
        case GroupId::SU2:
            return su2_from_matrix(su2_matrix(x) * su2_matrix(y));
    }
    throw std::invalid_argument("multiply: unknown group");
}

inline GroupPoint inverse(const GroupPoint& x) {
    switch (x.group) {
        case GroupId::Torus1:
            return GroupPoint{x.group, {detail::wrap(-x.coords[0], 2.0 * kPi), 0.0, 0.0}};
        case GroupId::Torus2:
            return GroupPoint{x.group,
                              {detail::wrap(-x.coords[0], 2.0 * kPi), detail::wrap(-x.coords[1], 2.0 * kPi), 0.0}};
        case GroupId::SU2:
            return su2_from_matrix(su2_matrix(x).adjoint());
    }
    throw std::invalid_argument("inverse: unknown group");
}

// Bi-invariant distance. Tori: wrapped Euclidean; SU(2): rotation angle of
// y^{-1}x (so |xi(x) - xi(y)|_op <= <xi> dist(x,y) for every irrep).
inline double group_distance(const GroupPoint& x, const GroupPoint& y) {
    if (x.group != y.group) throw std::invalid_argument("group_distance: group mismatch");
    auto circ = [](double a, double b) {
        double d = std::abs(detail::wrap(a - b, 2.0 * kPi));
        return std::min(d, 2.0 * kPi - d);
    };
    switch (x.group) {
        case GroupId::Torus1: return circ(x.coords[0], y.coords[0]);
        case GroupId::Torus2: {
            double d1 = circ(x.coords[0], y.coords[0]);
            double d2 = circ(x.coords[1], y.coords[1]);
            return std::sqrt(d1 * d1 + d2 * d2);
        }
        case GroupId::SU2: {
            const Eigen::Matrix2cd r = su2_matrix(y).adjoint() * su2_matrix(x);
            double half_trace = 0.5 * r.trace().real();
            half_trace = std::clamp(half_trace, -1.0, 1.0);
            return 2.0 * std::acos(half_trace);  // in [0, 2pi]
        }
    }
    throw std::invalid_argument("group_distance: unknown group");
}

// xi(x) as a unitary d x d matrix. Tori: [e^{i k.x}]; SU(2): Wigner D^l.
inline Eigen::MatrixXcd evaluate_irrep(GroupId g, const IrrepLabel& label, const GroupPoint& x) {
    if (label.group != g || x.group != g)
        throw std::invalid_argument("evaluate_irrep: group/label mismatch");
    switch (g) {
        case GroupId::Torus1: {
            Eigen::MatrixXcd m(1, 1);
            m(0, 0) = std::polar(1.0, label.index[0] * x.coords[0]);
            return m;
        }
        case GroupId::Torus2: {
            Eigen::MatrixXcd m(1, 1);
            m(0, 0) = std::polar(1.0, label.index[0] * x.coords[0] + label.index[1] * x.coords[1]);
            return m;
        }
        case GroupId::SU2:
            return wigner_D(label.index[0], x.coords[0], x.coords[1], x.coords[2]);
    }
    throw std::invalid_argument("evaluate_irrep: unknown group");
}

// Haar samples, deterministic in (count, seed). Tori: uniform angles;
// SU(2): uniform on S^3 mapped to 2x2 unitaries.
inline std::vector<GroupPoint> sample_haar(GroupId g, int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("sample_haar: count must be >= 1");
    Rng rng(seed, stream::kHaarSampling);
    std::vector<GroupPoint> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
        switch (g) {
            case GroupId::Torus1:
                pts.push_back(GroupPoint{g, {rng.uniform(0.0, 2.0 * kPi), 0.0, 0.0}});
                break;
            case GroupId::Torus2:
                pts.push_back(GroupPoint{g, {rng.uniform(0.0, 2.0 * kPi), rng.uniform(0.0, 2.0 * kPi), 0.0}});
                break;
            case GroupId::SU2: {
                double q0 = rng.normal(), q1 = rng.normal(), q2 = rng.normal(), q3 = rng.normal();
                double norm = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
                while (norm < 1e-12) {
                    q0 = rng.normal(); q1 = rng.normal(); q2 = rng.normal(); q3 = rng.normal();
                    norm = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
                }
                q0 /= norm; q1 /= norm; q2 /= norm; q3 /= norm;
                Eigen::Matrix2cd u;
                u(0, 0) = cplx(q0, q3);
                u(0, 1) = cplx(q2, q1);
                u(1, 0) = cplx(-q2, q1);
                u(1, 1) = cplx(q0, -q3);
                pts.push_back(su2_from_matrix(u));
                break;
            }
        }
    }
    return pts;
}

}  // namespace lierkhs

// Unit tests for the dual enumeration, irrep evaluation and Haar quadrature.
//
// Oracles: Schur orthogonality (integral of |xi_ij|^2 is 1/d, off-diagonal
// pairs vanish), character means under Haar sampling, and direct enumeration
// of lattice / spin label sets.

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "lierkhs/groups.hpp"
#include "lierkhs/quadrature.hpp"

using namespace lierkhs;

TEST(EnumerateDual, Torus1SmallWindow) {
    const auto labels = enumerate_dual(GroupId::Torus1, 2.0);
    ASSERT_EQ(labels.size(), 3u);
    EXPECT_EQ(labels[0].index[0], 0);
    EXPECT_EQ(labels[1].index[0], -1);
    EXPECT_EQ(labels[2].index[0], 1);
    EXPECT_DOUBLE_EQ(labels[0].weight, 1.0);
    EXPECT_DOUBLE_EQ(labels[1].weight, std::sqrt(2.0));
}

TEST(EnumerateDual, SU2SmallWindow) {
    const auto labels = enumerate_dual(GroupId::SU2, 2.0);
    ASSERT_EQ(labels.size(), 3u);
    EXPECT_EQ(labels[0].dim, 1);
    EXPECT_EQ(labels[1].dim, 2);
    EXPECT_EQ(labels[2].dim, 3);
    EXPECT_DOUBLE_EQ(labels[1].eigenvalue, 0.75);  // l = 1/2
    EXPECT_DOUBLE_EQ(labels[2].eigenvalue, 2.0);   // l = 1
}

TEST(EnumerateDual, RejectsBoundaryLambda) {
    EXPECT_THROW(enumerate_dual(GroupId::Torus1, 1.0), std::invalid_argument);
    EXPECT_THROW(enumerate_dual(GroupId::SU2, 0.5), std::invalid_argument);
}

TEST(EnumerateDual, NestedFamilies) {
    for (auto g : {GroupId::Torus1, GroupId::Torus2, GroupId::SU2}) {
        std::size_t prev = 0;
        for (double lam : {1.5, 2.0, 3.0, 5.0, 8.0}) {
            const auto labels = enumerate_dual(g, lam);
            EXPECT_GE(labels.size(), prev);
            prev = labels.size();
        }
    }
}

TEST(EnumerateDual, WeightEigenvalueIdentity) {
    for (auto g : {GroupId::Torus1, GroupId::Torus2, GroupId::SU2})
        for (const auto& l : enumerate_dual(g, 9.0))
            EXPECT_NEAR(l.weight * l.weight - l.eigenvalue, 1.0, 1e-12);
}

TEST(EvaluateIrrep, IdentityPointGivesIdentityMatrix) {
    for (auto g : {GroupId::Torus1, GroupId::Torus2, GroupId::SU2}) {
        for (const auto& l : enumerate_dual(g, 4.0)) {
            const auto m = evaluate_irrep(g, l, identity_point(g));
            EXPECT_LT((m - Eigen::MatrixXcd::Identity(l.dim, l.dim)).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(EvaluateIrrep, ScalarCharacterOnCircle) {
    const auto l = make_irrep(GroupId::Torus1, {2, 0});
    GroupPoint x{GroupId::Torus1, {0.5 * kPi, 0.0, 0.0}};
    const auto m = evaluate_irrep(GroupId::Torus1, l, x);
    EXPECT_NEAR(m(0, 0).real(), -1.0, 1e-14);
    EXPECT_NEAR(m(0, 0).imag(), 0.0, 1e-14);
}

TEST(EvaluateIrrep, SpinHalfIsDefiningMatrix) {
    const auto l = make_irrep(GroupId::SU2, {1, 0});
    for (const auto& x : sample_haar(GroupId::SU2, 20, 11)) {
        const auto d = evaluate_irrep(GroupId::SU2, l, x);
        const auto u = su2_matrix(x);
        EXPECT_LT((d - u).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(EvaluateIrrep, MismatchedLabelThrows) {
    const auto l = make_irrep(GroupId::Torus1, {1, 0});
    EXPECT_THROW(evaluate_irrep(GroupId::SU2, l, identity_point(GroupId::SU2)),
                 std::invalid_argument);
}

TEST(EvaluateIrrep, UnitarityInvariant) {
    int pair_count = 0;
    for (auto g : {GroupId::Torus1, GroupId::Torus2, GroupId::SU2}) {
        const auto labels = enumerate_dual(g, g == GroupId::SU2 ? 31.0 : 31.0);
        const auto points = sample_haar(g, 12, 303);
        for (const auto& l : labels) {
            if (g == GroupId::SU2 && l.index[0] % 7 != 0 && l.index[0] > 12) continue;
            for (const auto& x : points) {
                const auto m = evaluate_irrep(g, l, x);
                const double defect =
                    (m * m.adjoint() - Eigen::MatrixXcd::Identity(l.dim, l.dim)).cwiseAbs().maxCoeff();
                EXPECT_LT(defect, 1e-10) << group_name(g) << " label " << l.index[0];
                ++pair_count;
            }
        }
    }
    EXPECT_GE(pair_count, 1000);
}

TEST(EvaluateIrrep, WignerAccuracyAtHighSpin) {
    // m = 60 (l = 30): unitarity and inversion stay below 1e-10
    const auto l = make_irrep(GroupId::SU2, {60, 0});
    for (const auto& x : sample_haar(GroupId::SU2, 5, 17)) {
        const auto m = evaluate_irrep(GroupId::SU2, l, x);
        EXPECT_LT((m * m.adjoint() - Eigen::MatrixXcd::Identity(61, 61)).cwiseAbs().maxCoeff(),
                  1e-10);
        const auto minv = evaluate_irrep(GroupId::SU2, l, inverse(x));
        EXPECT_LT((minv - m.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(EvaluateIrrep, HomomorphismInvariant) {
    for (auto g : {GroupId::Torus1, GroupId::Torus2, GroupId::SU2}) {
        const auto labels = enumerate_dual(g, 7.0);
        const auto xs = sample_haar(g, 8, 41);
        const auto ys = sample_haar(g, 8, 42);
        for (const auto& l : labels)
            for (std::size_t i = 0; i < xs.size(); ++i) {
                const Eigen::MatrixXcd lhs = evaluate_irrep(g, l, multiply(xs[i], ys[i]));
                const Eigen::MatrixXcd rhs =
                    evaluate_irrep(g, l, xs[i]) * evaluate_irrep(g, l, ys[i]);
                EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-9);
            }
    }
}

TEST(EvaluateIrrep, InversionInvariant) {
    for (auto g : {GroupId::Torus1, GroupId::Torus2, GroupId::SU2}) {
        const auto labels = enumerate_dual(g, 6.0);
        for (const auto& x : sample_haar(g, 10, 99))
            for (const auto& l : labels) {
                const Eigen::MatrixXcd lhs = evaluate_irrep(g, l, inverse(x));
                const Eigen::MatrixXcd rhs = evaluate_irrep(g, l, x).adjoint();
                EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10);
            }
    }
}

TEST(SU2Points, EulerRoundTrip) {
    for (const auto& x : sample_haar(GroupId::SU2, 200, 5)) {
        EXPECT_GE(x.coords[0], 0.0);
        EXPECT_LT(x.coords[0], 2.0 * kPi + 1e-12);
        EXPECT_GE(x.coords[1], 0.0);
        EXPECT_LE(x.coords[1], kPi);
        EXPECT_GE(x.coords[2], 0.0);
        EXPECT_LT(x.coords[2], 4.0 * kPi + 1e-12);
        const auto u = su2_matrix(x);
        const auto y = su2_from_matrix(u);
        EXPECT_LT((su2_matrix(y) - u).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(SampleHaar, DeterministicGivenSeed) {
    const auto a = sample_haar(GroupId::Torus1, 3, 42);
    const auto b = sample_haar(GroupId::Torus1, 3, 42);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        EXPECT_EQ(a[i].coords[0], b[i].coords[0]);
    const auto c = sample_haar(GroupId::Torus1, 3, 43);
    EXPECT_NE(a[0].coords[0], c[0].coords[0]);
}

TEST(SampleHaar, SU2CharacterMeanVanishes) {
    const auto l = make_irrep(GroupId::SU2, {2, 0});  // spin 1
    CompensatedComplexSum s;
    const auto pts = sample_haar(GroupId::SU2, 1000, 7);
    for (const auto& x : pts) s.add(evaluate_irrep(GroupId::SU2, l, x).trace());
    EXPECT_LT(std::abs(s.value()) / pts.size(), 0.1);
}

TEST(SampleHaar, Torus2CharacterMeanVanishes) {
    const auto l = make_irrep(GroupId::Torus2, {1, 1});
    CompensatedComplexSum s;
    const auto pts = sample_haar(GroupId::Torus2, 500, 1);
    for (const auto& x : pts) s.add(evaluate_irrep(GroupId::Torus2, l, x)(0, 0));
    EXPECT_LT(std::abs(s.value()) / pts.size(), 0.1);
}

TEST(HaarGrid, CircleWeightsAndNodes) {
    const auto grid = haar_grid(GroupId::Torus1, 8);
    ASSERT_EQ(grid.points.size(), 8u);
    for (double w : grid.weights) EXPECT_DOUBLE_EQ(w, 0.125);
    double sum = 0.0;
    for (double w : haar_grid(GroupId::Torus1, 16).weights) sum += w;
    EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(HaarGrid, WeightsSumToOne) {
    for (auto g : {GroupId::Torus1, GroupId::Torus2, GroupId::SU2}) {
        const auto grid = haar_grid(g, 12);
        CompensatedSum s;
        for (double w : grid.weights) s.add(w);
        EXPECT_NEAR(s.value(), 1.0, 1e-12);
        for (double w : grid.weights) EXPECT_GT(w, 0.0);
    }
}

TEST(HaarGrid, RejectsTinyResolution) {
    EXPECT_THROW(haar_grid(GroupId::Torus1, 1), std::invalid_argument);
}

TEST(HaarGrid, SchurSecondMomentSU2) {
    // integral of |D^{1/2}_{ij}|^2 equals 1/d = 1/2
    const auto grid = haar_grid(GroupId::SU2, 12);
    const auto l = make_irrep(GroupId::SU2, {1, 0});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            CompensatedSum s;
            for (std::size_t p = 0; p < grid.points.size(); ++p) {
                const auto m = evaluate_irrep(GroupId::SU2, l, grid.points[p]);
                s.add(grid.weights[p] * std::norm(m(i, j)));
            }
            EXPECT_NEAR(s.value(), 0.5, 1e-10);
        }
}

TEST(VerifyOrthogonality, ExactOnCircleGrid) {
    const auto grid = haar_grid(GroupId::Torus1, 8);
    const auto labels = enumerate_dual(GroupId::Torus1, 2.0);  // k in {-1,0,1}
    EXPECT_LE(verify_orthogonality(GroupId::Torus1, labels, grid), 1e-12);
}

TEST(VerifyOrthogonality, SU2SmallSpins) {
    const auto grid = haar_grid(GroupId::SU2, 12);
    const auto labels = enumerate_dual(GroupId::SU2, 2.0);  // m in {0,1,2}
    EXPECT_LE(verify_orthogonality(GroupId::SU2, labels, grid), 1e-10);
}

TEST(VerifyOrthogonality, RaisesOnAliasedGrid) {
    const auto grid = haar_grid(GroupId::SU2, 4);
    std::vector<IrrepLabel> labels;
    for (int m = 0; m <= 8; ++m) labels.push_back(make_irrep(GroupId::SU2, {m, 0}));
    EXPECT_THROW(verify_orthogonality(GroupId::SU2, labels, grid), ResolutionError);
}

TEST(PeterWeyl, DeltaPartialSumMatchesSquaredDims) {
    // sum d Tr xi(e) = sum d^2 over the window
    for (auto g : {GroupId::Torus1, GroupId::Torus2, GroupId::SU2}) {
        const auto labels = enumerate_dual(g, 5.0);
        double lhs = 0.0;
        long long rhs = 0;
        for (const auto& l : labels) {
            lhs += l.dim * evaluate_irrep(g, l, identity_point(g)).trace().real();
            rhs += static_cast<long long>(l.dim) * l.dim;
        }
        EXPECT_NEAR(lhs, static_cast<double>(rhs), 1e-9);
    }
}

TEST(GroupDistance, IrrepLipschitzBoundHolds) {
    // |xi(x) - xi(y)|_op <= <xi> dist(x, y), spot-checked entrywise
    for (auto g : {GroupId::Torus1, GroupId::SU2}) {
        const auto labels = enumerate_dual(g, 5.0);
        const auto xs = sample_haar(g, 6, 7);
        const auto ys = sample_haar(g, 6, 8);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double dist = group_distance(xs[i], ys[i]);
            for (const auto& l : labels) {
                const auto diff = evaluate_irrep(g, l, xs[i]) - evaluate_irrep(g, l, ys[i]);
                EXPECT_LE(diff.operatorNorm(), l.weight * dist + 1e-9);
            }
        }
    }
}

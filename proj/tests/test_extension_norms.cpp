#include <gtest/gtest.h>

#include <cmath>

#include "neumann/extension_norms.hpp"

using namespace neumann;

TEST(MikhlinBall, PublishedValues) {
    EXPECT_NEAR(mikhlin_ball_norm_sq(3, 2.0).value_sq, 8.38905, 1e-4);
    EXPECT_NEAR(mikhlin_ball_norm_sq(3, 3.0).value_sq, 7.50825, 1e-4);
    const auto e = mikhlin_ball_norm_sq(3, 2.0);
    EXPECT_EQ(e.kind, EstimateKind::exact);
    EXPECT_EQ(e.norm_type, "W1_2");
}

TEST(MikhlinBall, DivergesAsRadiusApproachesOne) {
    EXPECT_GT(mikhlin_ball_norm_sq(3, 1.0001).value_sq, 1e4);
    EXPECT_THROW(mikhlin_ball_norm_sq(3, 1.0), DomainError);
    EXPECT_THROW(mikhlin_ball_norm_sq(3, 0.5), DomainError);
    EXPECT_THROW(mikhlin_ball_norm_sq(2, 2.0), DomainError);
}

TEST(MikhlinBall, FrozenValuesForEvenDimensions) {
    // scipy.special iv/kv evaluation of the same formula
    EXPECT_NEAR(mikhlin_ball_norm_sq(4, 2.0).value_sq, 13.34017374473289, 1e-9);
    EXPECT_NEAR(mikhlin_ball_norm_sq(4, 3.0).value_sq, 12.35662775733684, 1e-9);
    EXPECT_NEAR(mikhlin_ball_norm_sq(5, 1.5).value_sq, 23.720109593842523, 1e-9);
}

TEST(MikhlinBall, DecreasingInRadius) {
    for (int n : {3, 4, 5}) {
        double previous = INFINITY;
        for (double R = 1.05; R < 6.0; R += 0.05) {
            const double v = mikhlin_ball_norm_sq(n, R).value_sq;
            EXPECT_LT(v, previous) << "n=" << n << " R=" << R;
            previous = v;
        }
    }
}

TEST(MikhlinBall, GenericAndClosedFormRoutesAgree) {
    for (int n : {3, 5, 7}) {
        for (double R : {1.1, 1.5, 2.0, 3.0, 5.0}) {
            const double a = mikhlin_ball_norm_sq(n, R, BesselPath::generic).value_sq;
            const double b = mikhlin_ball_norm_sq(n, R, BesselPath::half_integer).value_sq;
            EXPECT_NEAR(a, b, 1e-9 * b) << "n=" << n << " R=" << R;
        }
    }
    EXPECT_THROW(mikhlin_ball_norm_sq(4, 2.0, BesselPath::half_integer), PreconditionError);
}

TEST(MikhlinStar, Examples) {
    const double e2 = mikhlin_ball_norm_sq(3, 2.0).value_sq;
    const double e3 = mikhlin_ball_norm_sq(3, 3.0).value_sq;
    StarShapeData ball{1.0, 1.0, 0.0, 3, 2.0};
    EXPECT_DOUBLE_EQ(ball.n1_sq(), 2.0);
    EXPECT_DOUBLE_EQ(ball.n2_sq(), 2.0);
    EXPECT_NEAR(mikhlin_star_norm_sq_bound(ball).value_sq, 1.0 + 4.0 * (e2 - 1.0), 1e-12);
    EXPECT_NEAR(mikhlin_star_norm_sq_bound(ball).value_sq, 30.5562, 1e-3);
    ball.R = 3.0;
    EXPECT_NEAR(mikhlin_star_norm_sq_bound(ball).value_sq, 1.0 + 4.0 * (e3 - 1.0), 1e-12);
    EXPECT_NEAR(mikhlin_star_norm_sq_bound(ball).value_sq, 27.0330, 1e-3);
    const StarShapeData wide{2.0, 2.0, 0.0, 3, 2.0};
    EXPECT_DOUBLE_EQ(wide.n1_sq(), 1.0);
    EXPECT_DOUBLE_EQ(wide.n2_sq(), 8.0);
    EXPECT_NEAR(mikhlin_star_norm_sq_bound(wide).value_sq, 60.1124, 1e-3);
    EXPECT_EQ(mikhlin_star_norm_sq_bound(wide).kind, EstimateKind::upper_bound);
}

TEST(MikhlinStar, GradientTermsEnterBothFactors) {
    const StarShapeData d{1.0, 1.5, 0.5, 4, 2.0};
    EXPECT_DOUBLE_EQ(d.n1_sq(), std::max({(1.0 + 3 * 0.25) / 1.0, 2.0, 1.0}));
    EXPECT_DOUBLE_EQ(d.n2_sq(), std::max({2.25 + 6 * 0.25, 4.5, 1.0}));
    const double ball = mikhlin_ball_norm_sq(4, 2.0).value_sq;
    EXPECT_NEAR(mikhlin_star_norm_sq_bound(d).value_sq, 1.0 + 2.25 * d.n1_sq() * d.n2_sq() * (ball - 1.0), 1e-10);
}

TEST(MikhlinStar, RejectsInvalidData) {
    EXPECT_THROW(mikhlin_star_norm_sq_bound({0.0, 1.0, 0.0, 3, 2.0}), DomainError);
    EXPECT_THROW(mikhlin_star_norm_sq_bound({1.0, 0.5, 0.0, 3, 2.0}), DomainError);
    EXPECT_THROW(mikhlin_star_norm_sq_bound({1.0, 1.0, -1.0, 3, 2.0}), DomainError);
    EXPECT_THROW(mikhlin_star_norm_sq_bound({1.0, 1.0, 0.0, 2, 2.0}), DomainError);
    EXPECT_THROW(mikhlin_star_norm_sq_bound({1.0, 1.0, 0.0, 3, 1.0}), DomainError);
}

TEST(Quasidisc, Examples) {
    EXPECT_DOUBLE_EQ(quasidisc_norm(QcCoefficient::user(1.0)).value_sq, 4.0);
    const double k = (3.0 + std::sqrt(5.0)) / 2.0;
    EXPECT_NEAR(quasidisc_norm(QcCoefficient::user(k)).value_sq, std::pow((5.0 + std::sqrt(5.0)) / 2.0, 2), 1e-12);
    EXPECT_NEAR(quasidisc_norm(QcCoefficient::user(k)).value_sq, 13.0902, 1e-4);
    EXPECT_NEAR(quasidisc_norm(star_shaped_K(0.5)).value_sq, std::pow(4.0 + 2.0 * std::sqrt(2.0), 2), 1e-11);
    EXPECT_NEAR(quasidisc_norm(star_shaped_K(0.5)).value_sq, 46.627, 1e-3);
    EXPECT_THROW(quasidisc_norm(QcCoefficient::user(0.9)), DomainError);
}

TEST(HalfBall, ReflectionNorm) {
    const auto e = half_ball_reflection_norm();
    EXPECT_EQ(e.value_sq, 2.0);
    EXPECT_EQ(e.kind, EstimateKind::exact);
}

TEST(ExtensionNormEstimate, AllAtLeastOne) {
    EXPECT_THROW(ExtensionNormEstimate::make(0.99, EstimateKind::exact, "x"), DomainError);
    for (int n = 3; n <= 8; ++n)
        for (double R : {1.2, 2.0, 4.0}) EXPECT_GE(mikhlin_ball_norm_sq(n, R).value_sq, 1.0);
}

#include <doctest.h>
#include <Eigen/Eigenvalues>

#include <cmath>

#include "scl/model.hpp"
#include "scl/oracle.hpp"
#include "test_support.hpp"

using namespace scl;
using namespace scl::testing;

TEST_CASE("objective: linear loss with zero coefficients and zero response is zero") {
    ProblemData data = random_instance(6, 4, 3, Loss::Linear, 11);
    data.y.setZero();
    CHECK(objective(data, {1, 1, 1}, Iterate::zero(4, 3)) == 0.0);
}

TEST_CASE("objective: logistic loss at zero equals (a+b) log 2 for any binary response") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        ProblemData data = random_instance(8, 5, 4, Loss::Logistic, seed);
        const WeightConfig w{0.7, 1.9, 3.0};
        const double f0 = objective(data, w, Iterate::zero(5, 4));
        CHECK(f0 == doctest::Approx((w.a + w.b) * std::log(2.0)).epsilon(1e-14));
    }
}

TEST_CASE("objective matches the per-sample summation oracle") {
    for (Loss loss : {Loss::Logistic, Loss::Linear}) {
        ProblemData data = random_instance(5, 3, 3, loss, 42);
        SplitMix64 rng(7);
        const Iterate beta = random_feasible(rng, 3, 3, 2, 2);
        const WeightConfig w{0.9, 1.3, 0.4};
        const double got = objective(data, w, beta);
        const double want = objective_loop_oracle(data, w, beta);
        CHECK(rel_err(got, want) <= 1e-12);
        CHECK(std::isfinite(got));
        if (loss == Loss::Logistic) CHECK(got >= 0.0);
    }
}

TEST_CASE("objective rejects mismatched dimensions") {
    ProblemData data = random_instance(5, 3, 3, Loss::Linear, 1);
    CHECK_THROWS_AS(objective(data, {1, 1, 1}, Iterate::zero(4, 3)), std::invalid_argument);
    CHECK_THROWS_AS(gradient(data, {1, 1, 1}, Iterate::zero(3, 2)), std::invalid_argument);
}

TEST_CASE("gradient: linear loss, beta = 0, y = 0 gives the zero vector") {
    ProblemData data = random_instance(6, 4, 5, Loss::Linear, 3);
    data.y.setZero();
    CHECK(gradient(data, {2, 3, 1}, Iterate::zero(4, 5)).norm() == 0.0);
}

TEST_CASE("gradient: logistic loss at zero has the closed form") {
    ProblemData data = random_instance(7, 4, 3, Loss::Logistic, 5);
    const WeightConfig w{1.5, 0.5, 2.0};
    const Vector g = gradient(data, w, Iterate::zero(4, 3));
    const Vector half = Vector::Constant(7, 0.5);
    const Vector want1 = w.a * data.X.transpose() * (half - data.y) / 7.0;
    const Vector want2 = w.b * data.Z.transpose() * (half - data.y) / 7.0;
    CHECK((g.head(4) - want1).lpNorm<Eigen::Infinity>() <= 1e-15);
    CHECK((g.tail(3) - want2).lpNorm<Eigen::Infinity>() <= 1e-15);
}

TEST_CASE("gradient matches central finite differences for both losses") {
    for (Loss loss : {Loss::Logistic, Loss::Linear}) {
        ProblemData data = random_instance(9, 5, 4, loss, 17);
        const WeightConfig w{0.8, 1.2, 0.6};
        SplitMix64 rng(99);
        const Vector beta = 0.3 * random_vector(rng, 9);
        const Vector g = gradient(data, w, beta);
        const Vector fd = fd_gradient(data, w, beta);
        for (Index i = 0; i < g.size(); ++i) CHECK(rel_err(g[i], fd[i]) <= 1e-5);
    }
}

TEST_CASE("restricted Hessian: linear loss is independent of the evaluation point") {
    ProblemData data = random_instance(8, 5, 5, Loss::Linear, 23);
    const WeightConfig w{1.0, 2.0, 0.5};
    const IndexSet support{0, 2, 5, 9};
    SplitMix64 rng(4);
    const Matrix h0 = restricted_hessian(data, w, Iterate::zero(5, 5), support);
    const Matrix h1 = restricted_hessian(data, w, random_feasible(rng, 5, 5, 3, 3), support);
    CHECK((h0 - h1).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("restricted Hessian: logistic loss at zero uses quarter weights") {
    ProblemData data = random_instance(6, 4, 4, Loss::Logistic, 31);
    const WeightConfig w{2.0, 1.0, 0.7};
    IndexSet all(8);
    for (Index i = 0; i < 8; ++i) all[static_cast<std::size_t>(i)] = i;
    const Matrix H = restricted_hessian(data, w, Iterate::zero(4, 4), all);
    Matrix want(8, 8);
    want.topLeftCorner(4, 4) = (w.a / 4 + w.c) / 6.0 * (data.X.transpose() * data.X);
    want.topRightCorner(4, 4) = -w.c / 6.0 * (data.X.transpose() * data.Z);
    want.bottomLeftCorner(4, 4) = want.topRightCorner(4, 4).transpose();
    want.bottomRightCorner(4, 4) = (w.b / 4 + w.c) / 6.0 * (data.Z.transpose() * data.Z);
    CHECK((H - want).lpNorm<Eigen::Infinity>() <= 1e-14);
}

TEST_CASE("restricted Hessian matches finite differences of the gradient") {
    for (Loss loss : {Loss::Logistic, Loss::Linear}) {
        ProblemData data = random_instance(10, 5, 4, loss, 47);
        const WeightConfig w{0.9, 1.1, 0.8};
        SplitMix64 rng(8);
        const Vector beta = 0.4 * random_vector(rng, 9);
        const IndexSet support{1, 3, 5, 8};
        const Matrix H = restricted_hessian(data, w, beta, support);
        const Matrix fd = fd_restricted_hessian(data, w, beta, support);
        for (Index r = 0; r < H.rows(); ++r)
            for (Index c = 0; c < H.cols(); ++c) CHECK(rel_err(H(r, c), fd(r, c)) <= 1e-4);
    }
}

TEST_CASE("restricted Hessian validates the support") {
    ProblemData data = random_instance(5, 3, 3, Loss::Linear, 2);
    CHECK_THROWS_AS(restricted_hessian(data, {1, 1, 1}, Iterate::zero(3, 3), IndexSet{0, 6}),
                    std::invalid_argument);
    CHECK_THROWS_AS(restricted_hessian(data, {1, 1, 1}, Iterate::zero(3, 3), IndexSet{2, 1}),
                    std::invalid_argument);
}

TEST_CASE("smoothness constant: identity design has the closed-form value 3/n") {
    const Index n = 5;
    ProblemData data;
    data.X = Matrix::Identity(n, n);
    data.Z = Matrix::Identity(n, n);
    data.y = Vector::Zero(n);
    data.loss = Loss::Linear;
    const double lf = smoothness_constant(data, {1, 1, 1});
    CHECK(lf == doctest::Approx(3.0 / n).epsilon(1e-8));
}

TEST_CASE("smoothness constant scales quadratically with the data (linear loss)") {
    ProblemData data = random_instance(6, 4, 4, Loss::Linear, 13);
    const WeightConfig w{1.4, 0.9, 0.3};
    const double base = smoothness_constant(data, w);
    ProblemData scaled = data;
    scaled.X *= 2.0;
    scaled.Z *= 2.0;
    CHECK(smoothness_constant(scaled, w) == doctest::Approx(4.0 * base).epsilon(1e-6));
}

TEST_CASE("smoothness constant matches a dense eigensolve") {
    for (Loss loss : {Loss::Logistic, Loss::Linear}) {
        ProblemData data = random_instance(6, 4, 4, loss, 61);
        const WeightConfig w{1.0, 0.8, 0.5};
        const double lf = smoothness_constant(data, w);
        const double dense = oracle::dense_top_eigenvalue(oracle::dense_smoothness_matrix(data, w));
        CHECK(rel_err(lf, dense) <= 1e-6);
    }
}

TEST_CASE("Hessian Lipschitz constant: linear loss gives zero") {
    ProblemData data = random_instance(5, 3, 3, Loss::Linear, 7);
    CHECK(lipschitz_hessian_constant(data, {1, 1, 1}) == 0.0);
}

TEST_CASE("Hessian Lipschitz constant: identity design evaluates the formula") {
    const Index n = 4;
    ProblemData data;
    data.X = Matrix::Identity(n, n);
    data.Z = Matrix::Identity(n, n);
    data.y = Vector::Zero(n);
    data.loss = Loss::Logistic;
    const double cf = lipschitz_hessian_constant(data, {1, 1, 1});
    CHECK(cf == doctest::Approx(3.0 * std::sqrt(2.0) / n).epsilon(1e-8));
}

TEST_CASE("Hessian Lipschitz constant grows with the first weight") {
    ProblemData data = random_instance(6, 4, 4, Loss::Logistic, 19);
    const double c1 = lipschitz_hessian_constant(data, {1, 1, 1});
    const double c2 = lipschitz_hessian_constant(data, {2, 1, 1});
    CHECK(c2 >= c1);
}

TEST_CASE("strong smoothness: first-order expansion bounded by (L_f/2) h^2") {
    for (Loss loss : {Loss::Logistic, Loss::Linear}) {
        ProblemData data = random_instance(8, 5, 4, loss, 29);
        const WeightConfig w{1.0, 1.0, 1.0};
        const double lf = smoothness_constant(data, w);
        SplitMix64 rng(12);
        for (int rep = 0; rep < 20; ++rep) {
            const Vector beta = 0.5 * random_vector(rng, 9);
            Vector d = random_vector(rng, 9);
            d.normalize();
            const double f0 = objective(data, w, beta);
            const double slope = gradient(data, w, beta).dot(d);
            for (double h : {1e-2, 1e-3}) {
                const double fh = objective(data, w, Vector(beta + h * d));
                CHECK(std::abs(fh - f0 - h * slope) <= 0.5 * lf * h * h + 1e-10);
            }
        }
    }
}

TEST_CASE("descent lemma holds over 1000 random pairs") {
    ProblemData data = random_instance(7, 4, 4, Loss::Logistic, 37);
    const WeightConfig w{0.9, 1.0, 0.7};
    const double lf = smoothness_constant(data, w);
    SplitMix64 rng(3);
    for (int rep = 0; rep < 1000; ++rep) {
        const Vector beta = random_vector(rng, 8);
        const Vector d = random_vector(rng, 8);
        const double lhs = objective(data, w, Vector(beta + d));
        const double rhs = objective(data, w, beta) + gradient(data, w, beta).dot(d) +
                           0.5 * lf * d.squaredNorm();
        CHECK(lhs <= rhs + 1e-9 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("restricted Hessian is symmetric and positive definite under s-regularity") {
    ProblemData data = random_instance(10, 4, 4, Loss::Logistic, 53);
    const WeightConfig w{1.0, 1.0, 0.8};
    const SparsityBudget budget{2, 2};
    Matrix xz(10, 8);
    xz << data.X, data.Z;
    REQUIRE(oracle::is_s_regular(xz, 4));
    const double lf = oracle::restricted_convexity_constant(data, w, budget).l_f;
    CHECK(lf > 0.0);
    SplitMix64 rng(21);
    for (int rep = 0; rep < 50; ++rep) {
        const Iterate beta = random_feasible(rng, 4, 4, 2, 2);
        const IndexSet support = beta.stacked_support();
        if (support.empty()) continue;
        const Matrix H = restricted_hessian(data, w, beta, support);
        CHECK((H - H.transpose()).lpNorm<Eigen::Infinity>() == 0.0);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(H, Eigen::EigenvaluesOnly);
        CHECK(eig.eigenvalues().minCoeff() >= lf - 1e-8);
    }
}

TEST_CASE("logistic Hessian is C_f-Lipschitz on random pairs (dense spot check)") {
    ProblemData data = random_instance(8, 3, 3, Loss::Logistic, 71);
    const WeightConfig w{1.2, 0.8, 0.5};
    const double cf = lipschitz_hessian_constant(data, w);
    SplitMix64 rng(14);
    for (int rep = 0; rep < 25; ++rep) {
        const Vector b1 = random_vector(rng, 6);
        const Vector b2 = random_vector(rng, 6);
        const Matrix h1 = oracle::dense_hessian(data, w, Iterate::from_stacked(b1, 3));
        const Matrix h2 = oracle::dense_hessian(data, w, Iterate::from_stacked(b2, 3));
        Eigen::SelfAdjointEigenSolver<Matrix> eig(h1 - h2, Eigen::EigenvaluesOnly);
        const double norm = eig.eigenvalues().cwiseAbs().maxCoeff();
        CHECK(norm <= cf * (b1 - b2).norm() + 1e-12);
    }
}

TEST_CASE("objective is convex along random chords") {
    for (Loss loss : {Loss::Logistic, Loss::Linear}) {
        ProblemData data = random_instance(6, 4, 3, loss, 83);
        const WeightConfig w{1.0, 1.0, 1.0};
        SplitMix64 rng(6);
        for (int rep = 0; rep < 50; ++rep) {
            const Vector u = random_vector(rng, 7);
            const Vector v = random_vector(rng, 7);
            const double fu = objective(data, w, u);
            const double fv = objective(data, w, v);
            for (double lam : {0.25, 0.5, 0.75}) {
                const double mix = objective(data, w, Vector(lam * u + (1 - lam) * v));
                CHECK(mix <= lam * fu + (1 - lam) * fv + 1e-10);
            }
        }
    }
}

TEST_CASE("stable logistic primitives behave at extreme arguments") {
    CHECK(log1pexp(800.0) == 800.0);
    CHECK(log1pexp(-800.0) == doctest::Approx(0.0));
    CHECK(log1pexp(0.0) == doctest::Approx(std::log(2.0)));
    CHECK(sigmoid(800.0) == 1.0);
    CHECK(sigmoid(-800.0) == doctest::Approx(0.0));
    CHECK(sigmoid(0.0) == 0.5);
    CHECK(std::isfinite(log1pexp(1e308)));
}

#include <doctest.h>
#include <Eigen/Eigenvalues>

#include <cmath>

#include "scl/gpna.hpp"
#include "scl/model.hpp"
#include "scl/oracle.hpp"
#include "scl/synthdata.hpp"
#include "test_support.hpp"

using namespace scl;
using namespace scl::testing;

TEST_CASE("bruteforce oracle matches a direct convex solve when unconstrained") {
    for (Loss loss : {Loss::Linear, Loss::Logistic}) {
        ProblemData data = random_instance(25, 3, 3, loss, 5);
        const WeightConfig w{1.0, 1.0, 0.5};
        const SparsityBudget budget{3, 3};  // s_j = p_j: no constraint active
        const auto sol = oracle::global_solve_bruteforce(data, w, budget);
        // At the unconstrained optimum the full gradient vanishes.
        CHECK(gradient(data, w, sol.beta).lpNorm<Eigen::Infinity>() <= 1e-8);
        CHECK(sol.supports_tried == 1);
    }
}

TEST_CASE("bruteforce oracle dominates every restricted solve on a noiseless micro instance") {
    SynthSpec spec;
    spec.n = 20;
    spec.p = 8;
    spec.s1 = spec.s2 = 2;
    spec.theta = 0.0;
    spec.loss = Loss::Linear;
    spec.seed = 99;
    SynthInstance inst = generate(spec);
    const WeightConfig w = default_weights(2, 2);
    const auto sol = oracle::global_solve_bruteforce(inst.data, w, {2, 2});
    CHECK(sol.supports_tried == 28 * 28);

    // The global value is no worse than the generating coefficients...
    const Iterate truth(inst.truth.beta1_true, inst.truth.beta2_true);
    CHECK(sol.value <= objective(inst.data, w, truth) + 1e-12);
    // ...and no worse than whatever local minimizer GPNA reaches.
    const SolverReport rep = solve(inst.data, w, {2, 2});
    CHECK(sol.value <= objective(inst.data, w, rep.solution) + 1e-8);
    // The oracle optimum is itself a certified local minimizer.
    const Vector g = gradient(inst.data, w, sol.beta);
    for (Index i : sol.beta.stacked_support()) CHECK(std::abs(g[i]) <= 1e-8);
}

TEST_CASE("GPNA meets the oracle value when it keeps the oracle's support") {
    // Seed chosen so the first projected-gradient screen identifies the
    // globally optimal support pair; GPNA then finishes it exactly.
    SynthSpec spec;
    spec.n = 20;
    spec.p = 6;
    spec.s1 = spec.s2 = 2;
    spec.theta = 0.0;
    spec.loss = Loss::Linear;
    spec.seed = 2003;
    SynthInstance inst = generate(spec);
    const WeightConfig w = default_weights(2, 2);
    const auto sol = oracle::global_solve_bruteforce(inst.data, w, {2, 2});
    const SolverReport rep = solve(inst.data, w, {2, 2});
    const double gpna_value = objective(inst.data, w, rep.solution);
    CHECK(gpna_value == doctest::Approx(sol.value).epsilon(1e-9));
    CHECK(rep.solution.support1() == sol.beta.support1());
    CHECK(rep.solution.support2() == sol.beta.support2());
}

TEST_CASE("bruteforce oracle refuses oversized instances") {
    ProblemData data = random_instance(10, 40, 40, Loss::Linear, 3);
    CHECK_THROWS_AS(oracle::global_solve_bruteforce(data, {1, 1, 1}, {10, 10}),
                    std::invalid_argument);
}

TEST_CASE("oracle value lower-bounds GPNA across tiny instances") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Loss loss = seed % 2 ? Loss::Linear : Loss::Logistic;
        SynthSpec spec;
        spec.n = 20;
        spec.p = 6;
        spec.s1 = spec.s2 = 2;
        spec.theta = 0.2;
        spec.loss = loss;
        spec.seed = 7000 + seed;
        SynthInstance inst = generate(spec);
        const WeightConfig w = default_weights(2, 2);
        const auto oracle_sol = oracle::global_solve_bruteforce(inst.data, w, {2, 2});
        const SolverReport rep = solve(inst.data, w, {2, 2});
        const double gpna_value = objective(inst.data, w, rep.solution);
        CHECK(oracle_sol.value <= gpna_value + 1e-8);
        if (std::abs(gpna_value - oracle_sol.value) <= 1e-8) {
            CHECK(rep.solution.support1() == oracle_sol.beta.support1());
            CHECK(rep.solution.support2() == oracle_sol.beta.support2());
        }
    }
}

TEST_CASE("restricted convexity constant on near-orthonormal designs") {
    // Scaled identity blocks stacked over enough rows give orthonormal columns.
    ProblemData data;
    data.X = Matrix::Zero(8, 3);
    data.Z = Matrix::Zero(8, 3);
    data.X.topLeftCorner(3, 3) = Matrix::Identity(3, 3);
    data.Z.block(3, 0, 3, 3) = Matrix::Identity(3, 3);
    data.y = Vector::Zero(8);
    data.loss = Loss::Linear;
    const WeightConfig w{1, 1, 1};
    const auto rc = oracle::restricted_convexity_constant(data, w, {2, 2});
    CHECK(rc.l_f > 0.0);
    // The full-matrix smallest eigenvalue lower-bounds the restricted one.
    IndexSet all{0, 1, 2, 3, 4, 5};
    const Matrix Q = restricted_hessian(data, w, Vector::Zero(6), all);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(Q, Eigen::EigenvaluesOnly);
    CHECK(rc.l_f >= eig.eigenvalues().minCoeff() - 1e-12);
    CHECK(rc.minimizing_support.size() == 4);
}

TEST_CASE("restricted convexity constant is zero for duplicate columns within budget") {
    ProblemData data = random_instance(10, 4, 4, Loss::Linear, 21);
    data.X.col(2) = data.X.col(0);
    const auto rc = oracle::restricted_convexity_constant(data, {1, 1, 1}, {2, 2});
    CHECK(rc.l_f <= 1e-10);
}

TEST_CASE("restricted convexity constant never increases with the budget") {
    ProblemData data = random_instance(12, 4, 4, Loss::Logistic, 31);
    const WeightConfig w{1.0, 1.0, 0.8};
    double prev = std::numeric_limits<double>::infinity();
    for (Index s = 1; s <= 4; ++s) {
        const double lf = oracle::restricted_convexity_constant(data, w, {s, s}).l_f;
        CHECK(lf <= prev + 1e-14);
        prev = lf;
    }
}

TEST_CASE("restricted convexity constant refuses large instances") {
    ProblemData data = random_instance(5, 10, 10, Loss::Linear, 2);
    CHECK_THROWS_AS(oracle::restricted_convexity_constant(data, {1, 1, 1}, {2, 2}),
                    std::invalid_argument);
}

TEST_CASE("s-regularity of simple matrices") {
    Matrix eye = Matrix::Identity(5, 5);
    CHECK(oracle::is_s_regular(eye, 3));
    CHECK(oracle::is_s_regular(eye, 5));

    Matrix with_zero = eye;
    with_zero.col(2).setZero();
    CHECK_FALSE(oracle::is_s_regular(with_zero, 1));

    SplitMix64 rng(11);
    Matrix gauss = random_matrix(rng, 8, 12);
    CHECK(oracle::is_s_regular(gauss, 4));
    CHECK_FALSE(oracle::is_s_regular(gauss, 9));  // s > n cannot be regular

    CHECK_THROWS_AS(oracle::is_s_regular(random_matrix(rng, 5, 60), 20), std::invalid_argument);
    CHECK_THROWS_AS(oracle::is_s_regular(eye, 0), std::invalid_argument);
}

#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "svn/projection.hpp"

using namespace svn;

namespace {

// Independent feasible operator: random orthonormal factors with a random
// spectrum rescaled into the ball.
LinearOperator random_feasible(RngStream& rng, Eigen::Index d, const SchattenBall& ball) {
    const Mat u = test::random_orthogonal(rng, d);
    const Mat v = test::random_orthogonal(rng, d);
    Vec s = rng.gaussian_vector(d).cwiseAbs();
    std::sort(s.data(), s.data() + d, std::greater<double>());
    const double norm = lp_norm(s, ball.p);
    if (norm > 0.0) s *= (ball.radius * rng.next_uniform()) / norm;
    return LinearOperator(u, s, v);
}

}  // namespace

TEST_CASE("project_lp: l1 soft threshold with dual-scan oracle") {
    Vec v(2);
    v << 3.0, 1.0;
    const Vec u = project_lp(v, LpBall(1.0, 2.0));
    CHECK(u[0] == doctest::Approx(2.0));
    CHECK(u[1] == doctest::Approx(0.0).epsilon(0.0));

    // Dense scan over the threshold confirms theta = 1.
    double best_theta = -1.0, best_err = 1e300;
    for (int i = 0; i <= 300000; ++i) {
        const double theta = 3.0 * i / 300000.0;
        const double sum = std::max(3.0 - theta, 0.0) + std::max(1.0 - theta, 0.0);
        if (std::abs(sum - 2.0) < best_err) {
            best_err = std::abs(sum - 2.0);
            best_theta = theta;
        }
    }
    CHECK(best_theta == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("project_lp: closed-form cases") {
    RngStream rng(31);
    Vec v = rng.gaussian_vector(6);
    v *= 5.0 / v.norm();
    const Vec u2 = project_lp(v, LpBall(2.0, 1.0));
    CHECK((u2 - v / 5.0).cwiseAbs().maxCoeff() <= 1e-14);

    Vec w(2);
    w << 3.0, 4.0;
    const Vec uinf = project_lp(w, LpBall(kInfOrder, 2.0));
    CHECK(uinf[0] == doctest::Approx(2.0));
    CHECK(uinf[1] == doctest::Approx(2.0));

    // Feasible points are returned bit-identically.
    Vec f(3);
    f << 0.1, -0.2, 0.05;
    const Vec uf = project_lp(f, LpBall(1.5, 1.0));
    CHECK(uf[0] == f[0]);
    CHECK(uf[1] == f[1]);
    CHECK(uf[2] == f[2]);

    CHECK_THROWS_AS(project_lp(f, LpBall(0.9, 1.0)), UnsupportedOrderError);
}

TEST_CASE("project_lp: feasibility, idempotence, sign handling") {
    RngStream rng(32);
    for (double p : {1.0, 1.5, 2.0, 3.0, kInfOrder}) {
        const LpBall ball(p, 1.0);
        for (int it = 0; it < 40; ++it) {
            const Vec v = 4.0 * rng.gaussian_vector(8);
            const Vec u = project_lp(v, ball);
            CHECK(lp_norm(u, p) <= ball.radius * (1.0 + 1e-10));
            const Vec uu = project_lp(u, ball);
            CHECK((uu - u).cwiseAbs().maxCoeff() <= 1e-10);
            // Signs survive projection.
            for (int i = 0; i < 8; ++i)
                CHECK(u[i] * v[i] >= 0.0);
        }
    }
}

TEST_CASE("project_lp: non-expansive for p > 1") {
    RngStream rng(33);
    for (double p : {1.5, 2.0, 3.0, kInfOrder}) {
        const LpBall ball(p, 1.0);
        for (int it = 0; it < 40; ++it) {
            const Vec a = 3.0 * rng.gaussian_vector(6);
            const Vec b = 3.0 * rng.gaussian_vector(6);
            const double dist = (project_lp(a, ball) - project_lp(b, ball)).norm();
            CHECK(dist <= (a - b).norm() + 1e-8);
        }
    }
}

TEST_CASE("project_lp: KKT residual and complementary slackness for 1 < p < inf") {
    RngStream rng(34);
    for (double p : {1.5, 3.0}) {
        const LpBall ball(p, 1.0);
        for (int it = 0; it < 20; ++it) {
            Vec v = rng.gaussian_vector(6);
            v *= 3.0 / lp_norm(v, p);  // strictly infeasible
            const Vec u = project_lp(v, ball);

            // Recover the multiplier from the largest coordinate, then check
            // the stationarity system on all of them.
            Eigen::Index top = 0;
            u.cwiseAbs().maxCoeff(&top);
            const double mag = std::abs(u[top]);
            REQUIRE(mag > 0.0);
            const double lambda =
                (std::abs(v[top]) - mag) / (p * std::pow(mag, p - 1.0));
            CHECK(lambda >= 0.0);
            for (int i = 0; i < 6; ++i) {
                const double ui = std::abs(u[i]);
                const double resid = ui + lambda * p * std::pow(ui, p - 1.0) - std::abs(v[i]);
                CHECK(std::abs(resid) <= 1e-7 * std::max(1.0, std::abs(v[i])));
            }
            CHECK(std::abs(lambda * (lp_norm(u, p) - ball.radius)) <= 1e-8);
        }
    }
}

TEST_CASE("project_schatten: spectrum clipping and feasible identity") {
    Vec d(2);
    d << 3.0, 4.0;
    const LinearOperator t{Mat(d.asDiagonal())};
    const LinearOperator clipped = project_schatten(t, SchattenBall(kInfOrder, 2.0));
    const Mat m = clipped.dense();
    CHECK(m(0, 0) == doctest::Approx(2.0));
    CHECK(m(1, 1) == doctest::Approx(2.0));
    CHECK(std::abs(m(0, 1)) <= 1e-14);

    RngStream rng(35);
    const SchattenBall ball(1.5, 2.0);
    const LinearOperator feasible = random_feasible(rng, 5, ball);
    const LinearOperator back = project_schatten(feasible, ball);
    const Vec s0 = svd_spectrum(feasible);
    const Vec s1 = svd_spectrum(back);
    for (int k = 0; k < 5; ++k) CHECK(s0[k] == s1[k]);
}

TEST_CASE("project_schatten: optimality against random feasible points") {
    RngStream rng(36);
    const SchattenBall ball(1.5, 1.0);
    const Mat t = 2.0 * test::random_matrix(rng, 6, 6);
    const Mat proj = project_schatten(t, ball);
    const double best = (t - proj).norm();
    for (int it = 0; it < 10000; ++it) {
        const LinearOperator candidate = random_feasible(rng, 6, ball);
        CHECK(schatten_norm(candidate, ball.p) <= ball.radius * (1.0 + 1e-10));
        CHECK((t - candidate.dense()).norm() >= best - 1e-7);
    }
}

TEST_CASE("project_schatten: spectrum stays sorted; projected iterates feasible") {
    RngStream rng(37);
    for (double p : {1.0, 1.5, 2.0, 3.0, kInfOrder}) {
        const SchattenBall ball(p, 1.0);
        for (int it = 0; it < 20; ++it) {
            const LinearOperator t(Mat(3.0 * test::random_matrix(rng, 6, 6)));
            const LinearOperator u = project_schatten(t, ball);
            const Vec s = svd_spectrum(u);
            for (int k = 1; k < s.size(); ++k) CHECK(s[k] <= s[k - 1] + 1e-12);
            CHECK(is_member(u, ball));
            const LinearOperator uu = project_schatten(u, ball);
            CHECK((uu.dense() - u.dense()).cwiseAbs().maxCoeff() <= 1e-10);
        }
    }
}

TEST_CASE("is_member basics") {
    const SchattenBall one(1.0, 1.0);
    CHECK(is_member(LinearOperator::zero(3, 4), one));
    Vec d(1);
    d << 2.0;
    CHECK_FALSE(is_member(LinearOperator(Mat(d.asDiagonal())), one));

    RngStream rng(38);
    for (int it = 0; it < 100; ++it) {
        const SchattenBall ball(1.0 + 3.0 * rng.next_uniform(), 1.0);
        const LinearOperator t(Mat(4.0 * test::random_matrix(rng, 5, 5)));
        CHECK(is_member(project_schatten(t, ball), ball));
    }
}

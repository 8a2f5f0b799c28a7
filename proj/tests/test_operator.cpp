#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "helpers.hpp"
#include "svn/operator.hpp"

using namespace svn;

namespace {

LinearOperator diag_op(std::initializer_list<double> values) {
    Vec d(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double v : values) d[i++] = v;
    return LinearOperator(Mat(d.asDiagonal()));
}

}  // namespace

TEST_CASE("svd_spectrum: diagonal and rank-one cases") {
    const Vec s = svd_spectrum(diag_op({3.0, 4.0}));
    REQUIRE(s.size() == 2);
    CHECK(s[0] == doctest::Approx(4.0));
    CHECK(s[1] == doctest::Approx(3.0));

    RngStream rng(11);
    Vec a = rng.gaussian_vector(5);
    Vec b = rng.gaussian_vector(5);
    a *= 3.0 / a.norm();
    b *= 2.0 / b.norm();
    const Vec rs = svd_spectrum(rank1(a, b));
    REQUIRE(rs.size() == 5);
    CHECK(rs[0] == doctest::Approx(6.0));
    for (int k = 1; k < 5; ++k) CHECK(rs[k] == doctest::Approx(0.0).epsilon(0.0));
}

TEST_CASE("svd_spectrum matches a symmetric eigensolver oracle") {
    RngStream rng(12);
    const Mat t = test::random_matrix(rng, 8, 6);
    const Vec s = svd_spectrum(LinearOperator(t));
    REQUIRE(s.size() == 6);

    Eigen::SelfAdjointEigenSolver<Mat> eig(t.transpose() * t);
    Vec expected = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    std::sort(expected.data(), expected.data() + expected.size(), std::greater<double>());
    for (int k = 0; k < 6; ++k) CHECK(std::abs(s[k] - expected[k]) <= 1e-8);
    for (int k = 1; k < 6; ++k) CHECK(s[k] <= s[k - 1]);
}

TEST_CASE("schatten_norm: closed forms and spectrum-sum oracle") {
    const LinearOperator t = diag_op({3.0, 4.0});
    CHECK(schatten_norm(t, 1.0) == doctest::Approx(7.0));
    CHECK(schatten_norm(t, 2.0) == doctest::Approx(5.0));
    CHECK(schatten_norm(t, kInfOrder) == doctest::Approx(4.0));

    RngStream rng(13);
    const LinearOperator r(test::random_matrix(rng, 8, 8));
    const Vec s = svd_spectrum(r);
    double acc = 0.0;
    for (int k = 0; k < s.size(); ++k) acc += std::pow(s[k], 1.5);
    CHECK(std::abs(schatten_norm(r, 1.5) - std::pow(acc, 1.0 / 1.5)) <= 1e-10);

    CHECK_THROWS_AS(schatten_norm(r, 0.5), UnsupportedOrderError);
}

TEST_CASE("trace: identity, rank-one, basis invariance") {
    CHECK(trace(LinearOperator(Mat::Identity(5, 5))) == doctest::Approx(5.0));

    RngStream rng(14);
    const Vec y = rng.gaussian_vector(6);
    const Vec x = rng.gaussian_vector(6);
    CHECK(trace(rank1(y, x)) == doctest::Approx(y.dot(x)));

    const Mat t = test::random_matrix(rng, 6, 6);
    const Mat q = test::random_orthogonal(rng, 6);
    const double direct = trace(LinearOperator(t));
    const double conjugated = trace(LinearOperator(Mat(q.transpose() * t * q)));
    CHECK(std::abs(direct - conjugated) <= 1e-10);

    CHECK_THROWS_AS(trace(LinearOperator(Mat::Zero(3, 4))), ShapeError);
}

TEST_CASE("rank1: entries, action, and schatten norms") {
    const Vec e1 = Vec::Unit(2, 0);
    const Vec e2 = Vec::Unit(2, 1);
    const Mat m = rank1(e1, e2).dense();
    CHECK(m(0, 0) == 0.0);
    CHECK(m(0, 1) == 1.0);
    CHECK(m(1, 0) == 0.0);
    CHECK(m(1, 1) == 0.0);

    RngStream rng(15);
    const Vec a = rng.gaussian_vector(4);
    const Vec b = rng.gaussian_vector(4);
    const Vec applied = rank1(a, b).apply(b);
    CHECK((applied - b.squaredNorm() * a).norm() <= 1e-12 * a.norm() * b.squaredNorm());

    for (double p : {1.0, 2.0, 3.0, kInfOrder})
        CHECK(schatten_norm(rank1(a, b), p) == doctest::Approx(a.norm() * b.norm()));
}

TEST_CASE("apply and adjoint") {
    RngStream rng(16);
    const Vec x = rng.gaussian_vector(7);
    CHECK((LinearOperator(Mat::Identity(7, 7)).apply(x) - x).norm() == 0.0);

    for (int it = 0; it < 20; ++it) {
        const LinearOperator t(test::random_matrix(rng, 5, 7));
        const Vec u = rng.gaussian_vector(7);
        const Vec v = rng.gaussian_vector(5);
        CHECK(std::abs(t.apply(u).dot(v) - u.dot(t.adjoint().apply(v))) <= 1e-10);
    }

    CHECK_THROWS_AS(LinearOperator(Mat::Identity(3, 3)).apply(Vec::Zero(4)), ShapeError);
}

TEST_CASE("adjoint-trace identities on random instances") {
    RngStream rng(17);
    for (int it = 0; it < 100; ++it) {
        const LinearOperator t(test::random_matrix(rng, 6, 5));
        const Vec x = rng.gaussian_vector(5);
        const Vec y = rng.gaussian_vector(6);
        const double norm_sq = t.apply(x).squaredNorm();
        const double via_trace = trace(compose(compose(t.adjoint(), t), rank1(x, x)));
        CHECK(std::abs(norm_sq - via_trace) <= 1e-8);

        const double inner = t.apply(x).dot(y);
        const double inner_trace = trace(compose(t, rank1(x, y)));
        CHECK(std::abs(inner - inner_trace) <= 1e-8);
    }
}

TEST_CASE("Hoelder trace inequality") {
    RngStream rng(18);
    const std::pair<double, double> pairs[] = {{1.0, kInfOrder}, {2.0, 2.0}, {3.0, 1.5}};
    for (const auto& [p, q] : pairs) {
        for (int it = 0; it < 100; ++it) {
            const LinearOperator t1(test::random_matrix(rng, 8, 8));
            const LinearOperator t2(test::random_matrix(rng, 8, 8));
            const double lhs = std::abs(trace(compose(t1.adjoint(), t2)));
            CHECK(lhs <= schatten_norm(t1, p) * schatten_norm(t2, q) + 1e-8);
        }
    }
}

TEST_CASE("rank-N norm comparison for low-rank PSD operators") {
    RngStream rng(19);
    const std::pair<double, double> pairs[] = {{1.0, 2.0}, {1.5, 3.0}, {2.0, 4.0}, {1.0, kInfOrder}};
    for (const auto& [p, q] : pairs) {
        for (int it = 0; it < 100; ++it) {
            const Eigen::Index rank = 1 + static_cast<Eigen::Index>(rng.next_u64() % 4);
            const LinearOperator t(test::random_psd(rng, 8, rank));
            const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
            const double factor = std::pow(static_cast<double>(rank), 1.0 / p - inv_q);
            CHECK(schatten_norm(t, p) <= factor * schatten_norm(t, q) + 1e-8);
        }
    }
}

TEST_CASE("square identity ||T*T||_p = ||T||_{2p}^2") {
    RngStream rng(20);
    for (double p : {1.0, 1.5, 2.0}) {
        for (int it = 0; it < 100; ++it) {
            const LinearOperator t(test::random_matrix(rng, 8, 8));
            const double lhs = schatten_norm(compose(t.adjoint(), t), p);
            const double rhs = std::pow(schatten_norm(t, 2.0 * p), 2.0);
            CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, rhs));
        }
    }
}

TEST_CASE("schatten norm monotone nonincreasing in the order") {
    RngStream rng(21);
    const std::pair<double, double> pairs[] = {{2.0, 1.0}, {3.0, 1.5}, {kInfOrder, 2.0}};
    for (const auto& [p, q] : pairs) {  // p >= q
        for (int it = 0; it < 50; ++it) {
            const LinearOperator t(test::random_matrix(rng, 8, 8));
            CHECK(schatten_norm(t, p) <= schatten_norm(t, q) + 1e-10);
        }
    }
}

TEST_CASE("factored and dense forms agree") {
    RngStream rng(22);
    const Mat m = test::random_matrix(rng, 7, 5);
    const LinearOperator dense(m);
    const SvdFactors f = dense.factors();
    const LinearOperator factored(f.u, f.s, f.v);
    CHECK((factored.dense() - m).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(factored.is_factored());
    CHECK((factored.adjoint().dense() - m.transpose()).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("input validation") {
    Mat bad = Mat::Zero(2, 2);
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(LinearOperator{bad}, InvalidInputError);
    CHECK_THROWS_AS(SchattenBall(0.5, 1.0), UnsupportedOrderError);
    CHECK(SchattenBall(1.0, 2.0).conjugate() == kInfOrder);
    CHECK(SchattenBall(kInfOrder, 2.0).conjugate() == doctest::Approx(1.0));
    CHECK(SchattenBall(1.5, 1.0).conjugate() == doctest::Approx(3.0));
    CHECK(SchattenBall(2.0, 1.0).conjugate() == doctest::Approx(2.0));
}

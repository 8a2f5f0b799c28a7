#include "svn/projection.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace svn {

namespace {

// Solve u + lambda*p*u^(p-1) = a for u in [0, a], a >= 0. The left side is
// strictly increasing in u, so the root is unique. Newton with a bisection
// safeguard; the bracket [lo, hi] always contains the root.
double shrink_coordinate(double a, double lambda, double p) {
    if (a == 0.0) return 0.0;
    double lo = 0.0, hi = a;
    double u = a / (1.0 + lambda * p);  // exact for p = 2, decent start otherwise
    for (int it = 0; it < 128; ++it) {
        const double phi = u + lambda * p * std::pow(u, p - 1.0) - a;
        if (phi > 0.0)
            hi = u;
        else
            lo = u;
        const double dphi = 1.0 + lambda * p * (p - 1.0) * std::pow(u, p - 2.0);
        double next = u - phi / dphi;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - u) <= 1e-16 * a) return next;
        u = next;
    }
    return u;
}

Vec shrink_all(const Vec& mags, double lambda, double p) {
    Vec u(mags.size());
    for (Eigen::Index i = 0; i < mags.size(); ++i) u[i] = shrink_coordinate(mags[i], lambda, p);
    return u;
}

// Exact sort-based soft threshold for the l1 ball.
Vec project_l1(const Vec& mags, double radius) {
    const Eigen::Index n = mags.size();
    Vec sorted = mags;
    std::sort(sorted.data(), sorted.data() + n, std::greater<double>());
    double prefix = 0.0;
    double theta = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        prefix += sorted[k];
        const double cand = (prefix - radius) / static_cast<double>(k + 1);
        if (sorted[k] > cand) theta = cand;
    }
    return (mags.array() - theta).max(0.0).matrix();
}

// General 1 < p < inf: bisection on the dual multiplier with the monotone
// per-coordinate shrink above. No closed form exists for general p.
Vec project_general(const Vec& mags, double p, double radius, double tol) {
    double lo = 0.0;
    double hi = 1.0;
    while (lp_norm(shrink_all(mags, hi, p), p) > radius) {
        hi *= 2.0;
        if (hi > 1e150) throw ConvergenceError("project_lp: no finite dual bracket");
    }
    Vec u;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        u = shrink_all(mags, mid, p);
        const double norm = lp_norm(u, p);
        if (std::abs(norm - radius) <= tol * radius) return u;
        if (norm > radius)
            lo = mid;
        else
            hi = mid;
    }
    throw ConvergenceError("project_lp: dual bisection did not converge in 200 iterations");
}

}  // namespace

LpBall::LpBall(double p_, double radius_) : p(p_), radius(radius_) {
    if (!(p >= 1.0)) throw UnsupportedOrderError("LpBall: p must be >= 1");
    if (!(radius >= 0.0) || !std::isfinite(radius))
        throw InvalidInputError("LpBall: radius must be finite and >= 0");
}

double lp_norm(const Vec& v, double p) {
    if (!(p >= 1.0)) throw UnsupportedOrderError("lp_norm: p must be >= 1 or inf");
    if (v.size() == 0) return 0.0;
    const double top = v.cwiseAbs().maxCoeff();
    if (std::isinf(p) || top == 0.0) return top;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]) / top, p);
    return top * std::pow(acc, 1.0 / p);
}

Vec project_lp(const Vec& v, const LpBall& ball, double tol) {
    if (!v.allFinite()) throw InvalidInputError("project_lp: non-finite input");
    if (!(ball.p >= 1.0)) throw UnsupportedOrderError("project_lp: p must be >= 1");
    if (!(tol > 0.0)) throw InvalidInputError("project_lp: tol must be > 0");
    if (lp_norm(v, ball.p) <= ball.radius) return v;
    if (ball.radius == 0.0) return Vec::Zero(v.size());

    // Projection preserves signs; work on magnitudes.
    const Vec mags = v.cwiseAbs();
    Vec u;
    if (ball.p == 1.0)
        u = project_l1(mags, ball.radius);
    else if (ball.p == 2.0)
        u = mags * (ball.radius / mags.norm());
    else if (std::isinf(ball.p))
        u = mags.cwiseMin(ball.radius);
    else
        u = project_general(mags, ball.p, ball.radius, tol);
    return u.cwiseProduct(v.cwiseSign());
}

Mat project_schatten(const Mat& t, const SchattenBall& ball, double tol) {
    if (!t.allFinite()) throw InvalidInputError("project_schatten: non-finite input");
    Eigen::JacobiSVD<Mat> svd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vec s = svd.singularValues();
    if (schatten_norm(s, ball.p) <= ball.radius) return t;
    const Vec projected = project_lp(s, LpBall(ball.p, ball.radius), tol);
    return svd.matrixU() * projected.asDiagonal() * svd.matrixV().transpose();
}

LinearOperator project_schatten(const LinearOperator& t, const SchattenBall& ball, double tol) {
    const SvdFactors f = t.factors();
    if (schatten_norm(f.s, ball.p) <= ball.radius) return t;
    const Vec projected = project_lp(f.s, LpBall(ball.p, ball.radius), tol);
    return LinearOperator(f.u, projected, f.v);
}

bool is_member(const LinearOperator& t, const SchattenBall& ball, double tol) {
    return schatten_norm(t, ball.p) <= ball.radius * (1.0 + tol);
}

bool is_member(const Mat& t, const SchattenBall& ball, double tol) {
    Eigen::JacobiSVD<Mat> svd(t);
    return schatten_norm(svd.singularValues(), ball.p) <= ball.radius * (1.0 + tol);
}

}  // namespace svn

#include "svn/operator.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace svn {

namespace {

constexpr double kOrthTol = 1e-10;

void check_finite(const Mat& m, const char* what) {
    if (!m.allFinite()) throw InvalidInputError(std::string(what) + ": non-finite entries");
}

void check_factors(const SvdFactors& f) {
    check_finite(f.u, "factored operator U");
    check_finite(f.v, "factored operator V");
    if (!f.s.allFinite()) throw InvalidInputError("factored operator s: non-finite entries");
    const Eigen::Index r = f.s.size();
    if (f.u.cols() != r || f.v.cols() != r)
        throw ShapeError("factored operator: U/V column count must match length of s");
    for (Eigen::Index k = 0; k < r; ++k) {
        if (f.s[k] < 0.0) throw InvalidInputError("factored operator: negative singular value");
        if (k > 0 && f.s[k] > f.s[k - 1] + kOrthTol)
            throw InvalidInputError("factored operator: singular values not nonincreasing");
    }
    const Mat gu = f.u.transpose() * f.u - Mat::Identity(r, r);
    const Mat gv = f.v.transpose() * f.v - Mat::Identity(r, r);
    if (gu.cwiseAbs().maxCoeff() > kOrthTol || gv.cwiseAbs().maxCoeff() > kOrthTol)
        throw InvalidInputError("factored operator: U/V columns not orthonormal");
}

}  // namespace

LinearOperator::LinearOperator(Mat dense) {
    check_finite(dense, "operator");
    rows_ = dense.rows();
    cols_ = dense.cols();
    dense_ = std::move(dense);
}

LinearOperator::LinearOperator(Mat u, Vec s, Mat v) {
    SvdFactors f{std::move(u), std::move(s), std::move(v)};
    check_factors(f);
    rows_ = f.u.rows();
    cols_ = f.v.rows();
    factors_ = std::move(f);
}

LinearOperator LinearOperator::zero(Eigen::Index d_y, Eigen::Index d_x) {
    return LinearOperator(Mat::Zero(d_y, d_x));
}

Mat LinearOperator::dense() const {
    if (dense_) return *dense_;
    const SvdFactors& f = *factors_;
    return f.u * f.s.asDiagonal() * f.v.transpose();
}

SvdFactors LinearOperator::factors() const {
    if (factors_) return *factors_;
    Eigen::JacobiSVD<Mat> svd(*dense_, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return SvdFactors{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

HilbertVector LinearOperator::apply(const HilbertVector& x) const {
    if (x.size() != cols_) throw ShapeError("apply: dim(x) != d_x");
    if (!x.allFinite()) throw InvalidInputError("apply: non-finite input vector");
    if (factors_) {
        const SvdFactors& f = *factors_;
        return f.u * (f.s.cwiseProduct(f.v.transpose() * x));
    }
    return *dense_ * x;
}

LinearOperator LinearOperator::adjoint() const {
    if (factors_) {
        const SvdFactors& f = *factors_;
        return LinearOperator(f.v, f.s, f.u);
    }
    return LinearOperator(dense_->transpose());
}

SchattenBall::SchattenBall(double p_, double radius_) : p(p_), radius(radius_) {
    if (!(p >= 1.0)) throw UnsupportedOrderError("SchattenBall: p must be >= 1");
    if (!(radius >= 0.0) || !std::isfinite(radius))
        throw InvalidInputError("SchattenBall: radius must be finite and >= 0");
}

double SchattenBall::conjugate() const {
    if (p == 1.0) return kInfOrder;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

SingularSpectrum svd_spectrum(const LinearOperator& t) {
    const Eigen::Index n = std::min(t.rows(), t.cols());
    Vec out = Vec::Zero(n);
    const SvdFactors f = t.factors();
    const Eigen::Index r = std::min<Eigen::Index>(f.s.size(), n);
    out.head(r) = f.s.head(r);
    return out;
}

double schatten_norm(const SingularSpectrum& spectrum, double p) {
    if (!(p >= 1.0)) throw UnsupportedOrderError("schatten_norm: p must be >= 1 or inf");
    if (spectrum.size() == 0) return 0.0;
    const double top = spectrum.maxCoeff();
    if (std::isinf(p) || top == 0.0) return top;
    // Scale by the largest value so s^p never overflows.
    double acc = 0.0;
    for (Eigen::Index k = 0; k < spectrum.size(); ++k) acc += std::pow(spectrum[k] / top, p);
    return top * std::pow(acc, 1.0 / p);
}

double schatten_norm(const LinearOperator& t, double p) {
    return schatten_norm(svd_spectrum(t), p);
}

double trace(const LinearOperator& t) {
    if (t.rows() != t.cols()) throw ShapeError("trace: operator must be square");
    if (t.is_factored()) {
        // tr(U S V^T) = sum_k s_k <v_k, u_k>
        const SvdFactors f = t.factors();
        double acc = 0.0;
        for (Eigen::Index k = 0; k < f.s.size(); ++k)
            acc += f.s[k] * f.v.col(k).dot(f.u.col(k));
        return acc;
    }
    return t.dense().trace();
}

LinearOperator rank1(const HilbertVector& a, const HilbertVector& b) {
    if (!a.allFinite() || !b.allFinite()) throw InvalidInputError("rank1: non-finite input");
    return LinearOperator(a * b.transpose());
}

LinearOperator compose(const LinearOperator& a, const LinearOperator& b) {
    if (a.cols() != b.rows()) throw ShapeError("compose: inner dimensions differ");
    return LinearOperator(a.dense() * b.dense());
}

}  // namespace svn

#pragma once

#include <Eigen/Core>
#include <limits>
#include <optional>

#include "svn/errors.hpp"

namespace svn {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Coordinates of an element of the ambient Hilbert space against a fixed
// orthonormal basis truncation.
using HilbertVector = Vec;

// Singular values, sorted nonincreasing, all >= 0.
using SingularSpectrum = Vec;

inline constexpr double kInfOrder = std::numeric_limits<double>::infinity();

// Column-orthonormal factorization U * diag(s) * V^T.
struct SvdFactors {
    Mat u;  // d_y x r
    Vec s;  // length r, nonincreasing, nonnegative
    Mat v;  // d_x x r
};

// A finite-dimensional linear operator, held either as a dense matrix or in
// factored (SVD) form. Immutable after construction; safe to share across
// threads.
class LinearOperator {
public:
    LinearOperator() = default;
    explicit LinearOperator(Mat dense);
    LinearOperator(Mat u, Vec s, Mat v);

    static LinearOperator zero(Eigen::Index d_y, Eigen::Index d_x);

    Eigen::Index rows() const { return rows_; }
    Eigen::Index cols() const { return cols_; }
    bool is_factored() const { return factors_.has_value(); }

    // Dense materialization (copies when only the factored form is held).
    Mat dense() const;

    // Factored form; runs an SVD when only the dense form is held.
    SvdFactors factors() const;

    HilbertVector apply(const HilbertVector& x) const;
    LinearOperator adjoint() const;

private:
    Eigen::Index rows_ = 0;
    Eigen::Index cols_ = 0;
    std::optional<Mat> dense_;
    std::optional<SvdFactors> factors_;
};

// The hypothesis class { T : ||T||_{S_p} <= radius }. p = inf is a
// first-class value (operator-norm ball).
struct SchattenBall {
    double p = 2.0;
    double radius = 1.0;

    SchattenBall() = default;
    SchattenBall(double p_, double radius_);

    // Conjugate exponent q with 1/p + 1/q = 1 (1 <-> inf).
    double conjugate() const;
};

// Singular values of T, sorted nonincreasing, length min(d_x, d_y) with
// trailing zeros retained.
SingularSpectrum svd_spectrum(const LinearOperator& t);

// Schatten norm of a nonnegative sorted spectrum.
double schatten_norm(const SingularSpectrum& spectrum, double p);
double schatten_norm(const LinearOperator& t, double p);

// Sum of diagonal entries; requires a square operator.
double trace(const LinearOperator& t);

// Rank-one operator x |-> <b, x> a, of shape dim(a) x dim(b).
LinearOperator rank1(const HilbertVector& a, const HilbertVector& b);

// Dense composition a * b.
LinearOperator compose(const LinearOperator& a, const LinearOperator& b);

}  // namespace svn

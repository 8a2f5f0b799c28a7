#pragma once

#include <Eigen/QR>

#include "svn/operator.hpp"
#include "svn/rng.hpp"

namespace svn::test {

inline Mat random_matrix(RngStream& rng, Eigen::Index rows, Eigen::Index cols) {
    return rng.gaussian_matrix(rows, cols);
}

inline Mat random_orthogonal(RngStream& rng, Eigen::Index dim) {
    Eigen::HouseholderQR<Mat> qr(rng.gaussian_matrix(dim, dim));
    return qr.householderQ() * Mat::Identity(dim, dim);
}

// Symmetric PSD matrix of rank at most `rank`.
inline Mat random_psd(RngStream& rng, Eigen::Index dim, Eigen::Index rank) {
    const Mat a = rng.gaussian_matrix(dim, rank);
    return a * a.transpose();
}

}  // namespace svn::test

#pragma once

#include <optional>
#include <vector>

#include "svn/operator.hpp"

namespace svn {

// N sample pairs held column-wise, with almost-sure norm bounds.
struct TrainingSet {
    Mat x;  // d_x x N
    Mat y;  // d_y x N
    double c_x = 1.0;
    double c_y = 1.0;

    TrainingSet() = default;
    TrainingSet(Mat x_, Mat y_, double c_x_, double c_y_);

    Eigen::Index size() const { return x.cols(); }
};

// Orthonormal bases of span{x_n} and span{y_n}.
struct BasisPair {
    Mat u_x;  // d_x x N_x
    Mat u_y;  // d_y x N_y
};

// The finite-dimensional problem: minimize (1/N)||Y - T X||_F^2 over
// ||T||_{S_p} <= B, in span coordinates.
struct CoordinateProblem {
    Mat x;  // N_x x N
    Mat y;  // N_y x N
    SchattenBall ball;
};

struct SolveOptions {
    int max_iterations = 10000;
    double rel_tol = 1e-9;   // relative objective decrease over the window
    int window = 10;
    std::optional<Mat> init;  // defaults to T = 0 (feasible for every ball)
};

struct FitReport {
    int iterations = 0;
    std::vector<double> objective_trace;
    double final_risk = 0.0;
    bool converged = false;
    bool active_constraint = false;
};

// Orthonormal basis of the span of the given columns. Deflation-based
// Gram-Schmidt with one re-orthogonalization pass; columns whose residual
// falls below rank_tol * (largest input norm) are discarded.
Mat build_basis(const Mat& vectors, double rank_tol = 1e-10);

// Coordinates of v against an orthonormal basis.
Vec coordinates(const Mat& basis, const HilbertVector& v);

// Projected gradient descent with the exact Lipschitz step 1/L,
// L = (2/N) lambda_max(X X^T). Returns a feasible minimizer and a report.
std::pair<Mat, FitReport> solve_erm(const CoordinateProblem& problem,
                                    const SolveOptions& opts = {});

// Lift the coordinate solution back to the ambient spaces:
// T = U_y * T_hat * U_x^T, returned in factored form so the spectrum (and
// hence feasibility) is preserved exactly.
LinearOperator lift(const Mat& t_hat, const BasisPair& bases);

// Mean squared loss (1/N) sum ||y_n - T x_n||^2.
double empirical_risk(const LinearOperator& t, const TrainingSet& data);

// The full reduce-solve-lift pipeline.
struct ErmFit {
    LinearOperator op;
    Mat t_hat;
    BasisPair bases;
    FitReport report;
};

ErmFit fit_erm(const TrainingSet& data, const SchattenBall& ball, const SolveOptions& opts = {});

}  // namespace svn

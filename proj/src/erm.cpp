#include "svn/erm.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "svn/projection.hpp"

namespace svn {

namespace {

constexpr double kBoundSlack = 1.0 + 1e-12;
constexpr double kStationarityTol = 1e-7;
constexpr double kActiveTol = 1e-6;

}  // namespace

TrainingSet::TrainingSet(Mat x_, Mat y_, double c_x_, double c_y_)
    : x(std::move(x_)), y(std::move(y_)), c_x(c_x_), c_y(c_y_) {
    if (x.cols() != y.cols()) throw ShapeError("TrainingSet: x/y sample counts differ");
    if (!x.allFinite() || !y.allFinite())
        throw InvalidInputError("TrainingSet: non-finite samples");
    if (!(c_x > 0.0) || !(c_y > 0.0))
        throw InvalidInputError("TrainingSet: norm bounds must be positive");
    for (Eigen::Index n = 0; n < x.cols(); ++n) {
        if (x.col(n).norm() > c_x * kBoundSlack)
            throw InvalidInputError("TrainingSet: ||x_n|| exceeds C_x");
        if (y.col(n).norm() > c_y * kBoundSlack)
            throw InvalidInputError("TrainingSet: ||y_n|| exceeds C_y");
    }
}

Mat build_basis(const Mat& vectors, double rank_tol) {
    if (vectors.cols() == 0) throw InvalidInputError("build_basis: empty input");
    if (!vectors.allFinite()) throw InvalidInputError("build_basis: non-finite input");
    if (!(rank_tol > 0.0)) throw InvalidInputError("build_basis: rank_tol must be > 0");

    double max_norm = 0.0;
    for (Eigen::Index j = 0; j < vectors.cols(); ++j)
        max_norm = std::max(max_norm, vectors.col(j).norm());
    const double cutoff = rank_tol * max_norm;

    Mat basis(vectors.rows(), std::min(vectors.rows(), vectors.cols()));
    Eigen::Index r = 0;
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
        Vec w = vectors.col(j);
        // Deflate twice; a single pass loses orthogonality on near-dependent
        // inputs.
        for (int pass = 0; pass < 2; ++pass)
            if (r > 0) w -= basis.leftCols(r) * (basis.leftCols(r).transpose() * w);
        const double norm = w.norm();
        if (norm > cutoff) {
            basis.col(r) = w / norm;
            ++r;
            if (r == basis.cols()) break;
        }
    }
    return basis.leftCols(r);
}

Vec coordinates(const Mat& basis, const HilbertVector& v) {
    if (basis.rows() != v.size()) throw ShapeError("coordinates: dimension mismatch");
    return basis.transpose() * v;
}

std::pair<Mat, FitReport> solve_erm(const CoordinateProblem& problem, const SolveOptions& opts) {
    const Eigen::Index n_x = problem.x.rows();
    const Eigen::Index n_y = problem.y.rows();
    const Eigen::Index n = problem.x.cols();
    if (problem.y.cols() != n) throw ShapeError("solve_erm: X/Y sample counts differ");
    if (n == 0) throw InvalidInputError("solve_erm: empty sample");

    FitReport report;
    if (n_x == 0 || n_y == 0) {
        report.converged = true;
        report.final_risk = problem.y.squaredNorm() / static_cast<double>(n);
        report.objective_trace.push_back(report.final_risk);
        return {Mat::Zero(n_y, n_x), report};
    }

    const double inv_n = 1.0 / static_cast<double>(n);
    const Mat gram_xx = problem.x * problem.x.transpose();
    const Mat cross_yx = problem.y * problem.x.transpose();
    const double yy = problem.y.squaredNorm();

    // J and its gradient in terms of the precomputed Gram matrices; cost per
    // iteration is independent of N.
    const auto objective = [&](const Mat& t) {
        return inv_n * (yy - 2.0 * t.cwiseProduct(cross_yx).sum() +
                        (t * gram_xx).cwiseProduct(t).sum());
    };

    Eigen::SelfAdjointEigenSolver<Mat> eig(gram_xx, Eigen::EigenvaluesOnly);
    const double lipschitz = 2.0 * inv_n * eig.eigenvalues().maxCoeff();

    if (opts.init && (opts.init->rows() != n_y || opts.init->cols() != n_x))
        throw ShapeError("solve_erm: init has wrong shape");
    Mat t = opts.init ? project_schatten(*opts.init, problem.ball) : Mat::Zero(n_y, n_x);

    report.objective_trace.push_back(objective(t));
    if (lipschitz <= 0.0) {
        // All x are zero; every T attains the same objective.
        report.converged = true;
        report.final_risk = report.objective_trace.back();
        return {Mat::Zero(n_y, n_x), report};
    }

    const double step = 1.0 / lipschitz;
    const double pg_tol = kStationarityTol * lipschitz * std::max(problem.ball.radius, 1e-300);
    for (int k = 1; k <= opts.max_iterations; ++k) {
        const Mat grad = 2.0 * inv_n * (t * gram_xx - cross_yx);
        const Mat next = project_schatten(Mat(t - step * grad), problem.ball);
        const double pg_norm = lipschitz * (t - next).norm();
        t = next;
        report.objective_trace.push_back(objective(t));
        report.iterations = k;

        if (k >= opts.window) {
            const std::size_t idx = report.objective_trace.size() - 1;
            const double before = report.objective_trace[idx - opts.window];
            const double after = report.objective_trace[idx];
            const bool stalled = (before - after) < opts.rel_tol * std::max(before, 1e-300);
            if (stalled && pg_norm <= pg_tol) {
                report.converged = true;
                break;
            }
        }
    }

    report.final_risk = inv_n * (problem.y - t * problem.x).squaredNorm();
    report.active_constraint =
        schatten_norm(LinearOperator(t), problem.ball.p) >=
        problem.ball.radius * (1.0 - kActiveTol);
    return {t, report};
}

LinearOperator lift(const Mat& t_hat, const BasisPair& bases) {
    if (t_hat.rows() != bases.u_y.cols() || t_hat.cols() != bases.u_x.cols())
        throw ShapeError("lift: coordinate matrix does not match basis sizes");
    if (t_hat.size() == 0)
        return LinearOperator::zero(bases.u_y.rows(), bases.u_x.rows());
    Eigen::JacobiSVD<Mat> svd(t_hat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return LinearOperator(bases.u_y * svd.matrixU(), svd.singularValues(),
                          bases.u_x * svd.matrixV());
}

double empirical_risk(const LinearOperator& t, const TrainingSet& data) {
    if (data.size() == 0) throw InvalidInputError("empirical_risk: empty training set");
    if (t.cols() != data.x.rows() || t.rows() != data.y.rows())
        throw ShapeError("empirical_risk: operator/sample dimensions differ");
    return (data.y - t.dense() * data.x).squaredNorm() / static_cast<double>(data.size());
}

ErmFit fit_erm(const TrainingSet& data, const SchattenBall& ball, const SolveOptions& opts) {
    ErmFit fit;
    fit.bases.u_x = build_basis(data.x);
    fit.bases.u_y = build_basis(data.y);

    CoordinateProblem problem;
    problem.x = fit.bases.u_x.transpose() * data.x;
    problem.y = fit.bases.u_y.transpose() * data.y;
    problem.ball = ball;

    auto [t_hat, report] = solve_erm(problem, opts);
    fit.t_hat = std::move(t_hat);
    fit.report = std::move(report);
    // The y component orthogonal to span{y_n} is invisible to the coordinate
    // objective; fold it back into the reported risk.
    const double ortho = (data.y - fit.bases.u_y * problem.y).squaredNorm() /
                         static_cast<double>(data.size());
    fit.report.final_risk += ortho;
    fit.op = lift(fit.t_hat, fit.bases);
    return fit;
}

}  // namespace svn

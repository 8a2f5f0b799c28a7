#include "svn/complexity.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "svn/rng.hpp"

namespace svn {

namespace {

constexpr std::uint64_t kSignsTag = 0x7369676eULL;  // "sign"

std::vector<int> draw_signs(RngStream& rng, int n) {
    std::vector<int> signs(static_cast<std::size_t>(n));
    for (auto& s : signs) s = rng.next_sign();
    return signs;
}

double spectrum_norm(const Mat& m, double q) {
    Eigen::JacobiSVD<Mat> svd(m);
    return schatten_norm(svd.singularValues(), q);
}

// sqrt(E||x||^4) per design; for the scenario designs this is the exact
// value for unit-sphere inputs and an almost-sure upper bound otherwise.
double fourth_moment_root(const RademacherConfig& config) {
    switch (config.design) {
        case RademacherDesign::kOrthonormal:
            return 1.0;
        case RademacherDesign::kFixedVector:
            return config.c_x * config.c_x;
        case RademacherDesign::kIidScenario:
            return config.scenario->c_x * config.scenario->c_x;
    }
    return 0.0;
}

// sqrt(E||x||^2 ||y||^2), or its almost-sure bound C_x C_y for scenario data.
double cross_moment_root(const RademacherConfig& config) {
    switch (config.design) {
        case RademacherDesign::kOrthonormal:
            return 1.0;
        case RademacherDesign::kFixedVector:
            return config.c_x * config.c_x;
        case RademacherDesign::kIidScenario:
            return config.scenario->c_x * config.scenario->c_y;
    }
    return 0.0;
}

}  // namespace

void validate(const RademacherConfig& config) {
    if (config.n_grid.empty()) throw InvalidInputError("rademacher: empty N grid");
    for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
        if (config.n_grid[i] < 1) throw InvalidInputError("rademacher: N must be >= 1");
        if (i > 0 && config.n_grid[i] <= config.n_grid[i - 1])
            throw InvalidInputError("rademacher: N grid must be strictly increasing");
    }
    if (config.trials < 1) throw InvalidInputError("rademacher: trials must be >= 1");
    if (!(config.q >= 1.0)) throw UnsupportedOrderError("rademacher: q must be >= 1");
    if (config.design == RademacherDesign::kIidScenario) {
        if (!config.scenario) throw InvalidInputError("rademacher: iid design needs a scenario");
        validate(*config.scenario);
    } else if (!(config.c_x > 0.0)) {
        throw InvalidInputError("rademacher: c_x must be > 0");
    }
}

std::pair<double, double> random_op_norms(const Mat& xs, const Mat& ys,
                                          const std::vector<int>& signs, double q) {
    const Eigen::Index n = xs.cols();
    if (ys.cols() != n || static_cast<Eigen::Index>(signs.size()) != n)
        throw ShapeError("random_op_norms: xs/ys/signs lengths differ");
    if (!xs.allFinite() || !ys.allFinite())
        throw InvalidInputError("random_op_norms: non-finite input");
    Vec sigma(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (signs[static_cast<std::size_t>(i)] != 1 && signs[static_cast<std::size_t>(i)] != -1)
            throw InvalidInputError("random_op_norms: signs must be +-1");
        sigma[i] = static_cast<double>(signs[static_cast<std::size_t>(i)]);
    }
    const Mat weighted = sigma.asDiagonal() * xs.transpose();
    const Mat t_xx = xs * weighted;
    const Mat t_yx = ys * weighted;
    return {spectrum_norm(t_xx, q), spectrum_norm(t_yx, q)};
}

GrowthFit mc_growth(const RademacherConfig& config, int threads) {
    validate(config);
    const int n_points = static_cast<int>(config.n_grid.size());
    const int trials = config.trials;
    const int total = n_points * trials;
    std::vector<double> norm_xx(static_cast<std::size_t>(total));
    std::vector<double> norm_yx(static_cast<std::size_t>(total));

    // One (N, trial) cell. Every draw comes from a stream keyed by
    // (seed, N, trial), so the result is independent of scheduling.
    const auto run_cell = [&](int cell) {
        const int i = cell / trials;
        const int t = cell % trials;
        const int n = config.n_grid[static_cast<std::size_t>(i)];
        RngStream sign_rng(derive_stream(config.seed, kSignsTag,
                                         static_cast<std::uint64_t>(n),
                                         static_cast<std::uint64_t>(t)));
        const std::vector<int> signs = draw_signs(sign_rng, n);
        double xx = 0.0, yx = 0.0;
        switch (config.design) {
            case RademacherDesign::kOrthonormal: {
                // With orthonormal x_n the singular values of both sums are
                // exactly |sigma_n|.
                Vec spectrum = Vec::Ones(n);
                xx = yx = schatten_norm(spectrum, config.q);
                break;
            }
            case RademacherDesign::kFixedVector: {
                // All x_n equal: both sums collapse to rank one with the
                // single singular value |sum sigma_n| ||v||^2.
                double sum = 0.0;
                for (int s : signs) sum += s;
                xx = yx = std::abs(sum) * config.c_x * config.c_x;
                break;
            }
            case RademacherDesign::kIidScenario: {
                ScenarioSpec cell_spec = *config.scenario;
                cell_spec.seed = derive_stream(config.seed, static_cast<std::uint64_t>(n),
                                               static_cast<std::uint64_t>(t));
                const LinearOperator truth = make_ground_truth(cell_spec);
                const TrainingSet data = make_training_set(truth, cell_spec, n);
                std::tie(xx, yx) = random_op_norms(data.x, data.y, signs, config.q);
                break;
            }
        }
        norm_xx[static_cast<std::size_t>(cell)] = xx;
        norm_yx[static_cast<std::size_t>(cell)] = yx;
    };

    if (threads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (int cell = 0; cell < total; ++cell) run_cell(cell);
    } else {
        for (int cell = 0; cell < total; ++cell) run_cell(cell);
    }

    GrowthFit result;
    const double m4 = fourth_moment_root(config);
    const double mxy = cross_moment_root(config);
    const double growth_exp = std::max(0.5, 1.0 / config.q);
    std::vector<double> ns, means_xx, means_yx;
    for (int i = 0; i < n_points; ++i) {
        GrowthCell cell;
        cell.n = config.n_grid[static_cast<std::size_t>(i)];
        double sum_xx = 0.0, sum_yx = 0.0;
        for (int t = 0; t < trials; ++t) {
            sum_xx += norm_xx[static_cast<std::size_t>(i * trials + t)];
            sum_yx += norm_yx[static_cast<std::size_t>(i * trials + t)];
        }
        cell.mean_norm_xx = sum_xx / trials;
        cell.mean_norm_yx = sum_yx / trials;
        const double growth = std::pow(static_cast<double>(cell.n), growth_exp);
        cell.bound_xx = growth * m4;
        cell.bound_yx = growth * mxy;
        cell.violated = cell.mean_norm_xx > cell.bound_xx * (1.0 + 1e-12) ||
                        cell.mean_norm_yx > cell.bound_yx * (1.0 + 1e-12);
        result.any_violation = result.any_violation || cell.violated;
        ns.push_back(static_cast<double>(cell.n));
        means_xx.push_back(cell.mean_norm_xx);
        means_yx.push_back(cell.mean_norm_yx);
        result.cells.push_back(cell);
    }
    if (ns.size() >= 2) {
        result.fit_xx = loglog_fit(ns, means_xx);
        result.fit_yx = loglog_fit(ns, means_yx);
        result.reliable = result.fit_xx.r2 >= 0.95 && result.fit_yx.r2 >= 0.95;
    } else {
        result.reliable = false;
    }
    return result;
}

TheoremBounds theorem_bounds(int n, const SchattenBall& ball, double c_x, double c_y,
                             double delta) {
    if (n < 1) throw InvalidInputError("theorem_bounds: N must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw InvalidInputError("theorem_bounds: delta must be in (0,1)");
    const double inv_p = std::isinf(ball.p) ? 0.0 : 1.0 / ball.p;
    const double rate = std::min(0.5, inv_p);
    const double b = ball.radius;
    const double nn = static_cast<double>(n);
    TheoremBounds out;
    out.rademacher = c_y / std::sqrt(nn) +
                     std::pow(nn, -rate) * (b * b * c_x + 2.0 * b * c_x * c_y);
    out.excess = 4.0 * out.rademacher +
                 2.0 * (c_y + b * c_x) * (c_y + b * c_x) * std::sqrt(std::log(1.0 / delta) / nn);
    return out;
}

std::pair<double, LinearOperator> sup_loss(const HilbertVector& x, const HilbertVector& y,
                                           const SchattenBall& ball) {
    if (!x.allFinite() || !y.allFinite()) throw InvalidInputError("sup_loss: non-finite input");
    const double nx = x.norm();
    const double ny = y.norm();
    if (nx == 0.0 || ny == 0.0 || ball.radius == 0.0)
        return {ny * ny, LinearOperator::zero(y.size(), x.size())};
    const double value = (ny + ball.radius * nx) * (ny + ball.radius * nx);
    LinearOperator achiever(Mat(-(ball.radius / (ny * nx)) * (y * x.transpose())));
    return {value, std::move(achiever)};
}

}  // namespace svn

#include "svn/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "svn/formats.hpp"
#include "svn/rng.hpp"

namespace svn {

namespace {

constexpr std::uint64_t kTrainTag = 0x7472ULL;
constexpr std::uint64_t kTestTag = 0x7465ULL;
constexpr std::uint64_t kOracleTag = 0x6f72ULL;

ScenarioSpec with_seed(const ScenarioSpec& spec, std::uint64_t seed) {
    ScenarioSpec out = spec;
    out.seed = seed;
    return out;
}

}  // namespace

void validate(const RiskCurveConfig& config) {
    validate(config.scenario);
    if (config.n_grid.empty()) throw InvalidInputError("risk_curve: empty N grid");
    int max_n = 0;
    for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
        if (config.n_grid[i] < 1) throw InvalidInputError("risk_curve: N must be >= 1");
        if (i > 0 && config.n_grid[i] <= config.n_grid[i - 1])
            throw InvalidInputError("risk_curve: N grid must be strictly increasing");
        max_n = std::max(max_n, config.n_grid[i]);
    }
    if (config.seeds.empty()) throw InvalidInputError("risk_curve: empty seed list");
    if (config.test_size < 10 * max_n)
        throw InvalidInputError("risk_curve: test_size must be >= 10 * max(N)");
    if (!(config.delta > 0.0 && config.delta < 1.0))
        throw InvalidInputError("risk_curve: delta must be in (0,1)");
}

double oracle_risk(const ScenarioSpec& scenario, const SchattenBall& ball, int budget) {
    validate(scenario);
    if (budget < 1) throw InvalidInputError("oracle_risk: budget must be >= 1");
    const LinearOperator truth = make_ground_truth(scenario);
    const TrainingSet train = make_training_set(
        truth, with_seed(scenario, derive_stream(scenario.seed, kOracleTag, kTrainTag)), budget);
    const ErmFit fit = fit_erm(train, ball);
    const TrainingSet eval = make_training_set(
        truth, with_seed(scenario, derive_stream(scenario.seed, kOracleTag, kTestTag)), budget);
    return empirical_risk(fit.op, eval);
}

std::vector<RiskCurveRow> risk_curve(const RiskCurveConfig& config, int threads) {
    validate(config);
    const LinearOperator truth = make_ground_truth(config.scenario);
    const double oracle = oracle_risk(config.scenario, config.ball, config.test_size);

    const int n_cells = static_cast<int>(config.n_grid.size() * config.seeds.size());
    std::vector<RiskCurveRow> rows(static_cast<std::size_t>(n_cells));

    // Cells share nothing: each derives its sample streams from
    // (scenario seed, replication seed, N), so the output is identical for
    // any thread count.
    const auto run_cell = [&](int cell) {
        const std::size_t i = static_cast<std::size_t>(cell) / config.seeds.size();
        const std::size_t j = static_cast<std::size_t>(cell) % config.seeds.size();
        const int n = config.n_grid[i];
        const std::uint64_t seed = config.seeds[j];

        const std::uint64_t train_key =
            derive_stream(config.scenario.seed, seed, static_cast<std::uint64_t>(n), kTrainTag);
        const std::uint64_t test_key =
            derive_stream(config.scenario.seed, seed, static_cast<std::uint64_t>(n), kTestTag);

        const TrainingSet train =
            make_training_set(truth, with_seed(config.scenario, train_key), n);
        const ErmFit fit = fit_erm(train, config.ball);
        const TrainingSet test =
            make_training_set(truth, with_seed(config.scenario, test_key), config.test_size);

        RiskCurveRow row;
        row.p = config.ball.p;
        row.radius = config.ball.radius;
        row.n = n;
        row.seed = seed;
        row.train_risk = fit.report.final_risk;
        row.test_risk = empirical_risk(fit.op, test);
        row.oracle_risk = oracle;
        row.excess = row.test_risk - oracle;
        row.bound = theorem_bounds(n, config.ball, config.scenario.c_x, config.scenario.c_y,
                                   config.delta)
                        .excess;
        row.converged = fit.report.converged;
        rows[static_cast<std::size_t>(cell)] = row;
    };

    if (threads > 1) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (int cell = 0; cell < n_cells; ++cell) run_cell(cell);
    } else {
        for (int cell = 0; cell < n_cells; ++cell) run_cell(cell);
    }
    // Already ordered by (N, seed-list position); keep the contract explicit.
    std::stable_sort(rows.begin(), rows.end(), [](const RiskCurveRow& a, const RiskCurveRow& b) {
        return a.n < b.n;
    });
    return rows;
}

SlopeFit slope_fit(const std::vector<RiskCurveRow>& rows) {
    std::map<int, std::pair<double, int>> sums;
    for (const auto& row : rows) {
        auto& [sum, count] = sums[row.n];
        sum += row.excess;
        ++count;
    }
    std::vector<double> ns, means;
    SlopeFit out;
    for (const auto& [n, sc] : sums) {
        const double mean = sc.first / sc.second;
        if (mean > 0.0) {
            ns.push_back(static_cast<double>(n));
            means.push_back(mean);
        } else {
            ++out.points_dropped;
        }
    }
    if (ns.size() < 5)
        throw InvalidInputError("slope_fit: need >= 5 N values with positive mean excess");
    out.fit = loglog_fit(ns, means);
    out.points_used = static_cast<int>(ns.size());
    return out;
}

std::vector<BoundCurvePoint> bound_curves(const std::vector<double>& p_list,
                                          const std::vector<int>& n_grid, double radius,
                                          double c_x, double c_y, double delta) {
    if (p_list.empty() || n_grid.empty())
        throw InvalidInputError("bound_curves: empty p list or N grid");
    std::vector<BoundCurvePoint> points;
    for (const double p : p_list) {
        const SchattenBall ball(p, radius);
        for (const int n : n_grid) {
            BoundCurvePoint pt;
            pt.p = p;
            pt.n = n;
            pt.bound = theorem_bounds(n, ball, c_x, c_y, delta).excess;
            points.push_back(pt);
        }
    }
    return points;
}

std::string risk_curve_csv(const std::vector<RiskCurveRow>& rows) {
    std::ostringstream out;
    out << "p,B,N,seed,train_risk,test_risk,oracle_risk,excess,bound,converged\n";
    for (const auto& r : rows) {
        out << fmt17(r.p) << ',' << fmt17(r.radius) << ',' << r.n << ',' << r.seed << ','
            << fmt17(r.train_risk) << ',' << fmt17(r.test_risk) << ',' << fmt17(r.oracle_risk)
            << ',' << fmt17(r.excess) << ',' << fmt17(r.bound) << ','
            << (r.converged ? 1 : 0) << '\n';
    }
    return out.str();
}

namespace {

const char* design_name(RademacherDesign design) {
    switch (design) {
        case RademacherDesign::kFixedVector: return "fixed-vector";
        case RademacherDesign::kOrthonormal: return "orthonormal";
        case RademacherDesign::kIidScenario: return "iid-scenario";
    }
    return "?";
}

}  // namespace

std::string growth_csv(const RademacherConfig& config, const GrowthFit& fit) {
    std::ostringstream out;
    out << "design,q,N,trials,mean_norm_xx,mean_norm_yx,lemma_bound_xx,lemma_bound_yx,violated\n";
    for (const auto& cell : fit.cells) {
        out << design_name(config.design) << ',' << fmt17(config.q) << ',' << cell.n << ','
            << config.trials << ',' << fmt17(cell.mean_norm_xx) << ',' << fmt17(cell.mean_norm_yx)
            << ',' << fmt17(cell.bound_xx) << ',' << fmt17(cell.bound_yx) << ','
            << (cell.violated ? 1 : 0) << '\n';
    }
    // Fit summary row: the N column carries the marker "fit"; the mean/bound
    // columns carry exponent and r^2 for the xx and yx series.
    out << design_name(config.design) << ',' << fmt17(config.q) << ",fit," << config.trials << ','
        << fmt17(fit.fit_xx.slope) << ',' << fmt17(fit.fit_yx.slope) << ','
        << fmt17(fit.fit_xx.r2) << ',' << fmt17(fit.fit_yx.r2) << ','
        << (fit.reliable ? 1 : 0) << '\n';
    return out.str();
}

std::string bound_curves_csv(const std::vector<BoundCurvePoint>& points) {
    std::ostringstream out;
    out << "p,N,bound\n";
    for (const auto& pt : points)
        out << fmt17(pt.p) << ',' << pt.n << ',' << fmt17(pt.bound) << '\n';
    return out.str();
}

std::string bound_curves_svg(const std::vector<BoundCurvePoint>& points) {
    if (points.empty()) throw InvalidInputError("bound_curves_svg: no points");
    // Gather curves in first-seen p order.
    std::vector<double> ps;
    for (const auto& pt : points)
        if (std::find(ps.begin(), ps.end(), pt.p) == ps.end()) ps.push_back(pt.p);

    double min_n = points.front().n, max_n = points.front().n;
    double min_b = points.front().bound, max_b = points.front().bound;
    for (const auto& pt : points) {
        min_n = std::min(min_n, static_cast<double>(pt.n));
        max_n = std::max(max_n, static_cast<double>(pt.n));
        min_b = std::min(min_b, pt.bound);
        max_b = std::max(max_b, pt.bound);
    }
    if (max_n == min_n) max_n = min_n * 10.0;
    if (max_b == min_b) max_b = min_b * 10.0;

    const double width = 640.0, height = 480.0;
    const double left = 70.0, right = 20.0, top = 20.0, bottom = 50.0;
    const double lx0 = std::log10(min_n), lx1 = std::log10(max_n);
    const double ly0 = std::log10(min_b), ly1 = std::log10(max_b);
    const auto x_pix = [&](double n) {
        return left + (std::log10(n) - lx0) / (lx1 - lx0) * (width - left - right);
    };
    const auto y_pix = [&](double b) {
        return height - bottom - (std::log10(b) - ly0) / (ly1 - ly0) * (height - top - bottom);
    };

    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "  <rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << (width - left - right)
        << "\" height=\"" << (height - top - bottom)
        << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";

    // Decade ticks on both log axes.
    for (int e = static_cast<int>(std::ceil(lx0)); e <= static_cast<int>(std::floor(lx1)); ++e) {
        const double px = x_pix(std::pow(10.0, e));
        svg << "  <line x1=\"" << px << "\" y1=\"" << (height - bottom) << "\" x2=\"" << px
            << "\" y2=\"" << (height - bottom + 6) << "\" stroke=\"#333\"/>\n";
        svg << "  <text x=\"" << px << "\" y=\"" << (height - bottom + 20)
            << "\" font-size=\"12\" text-anchor=\"middle\">1e" << e << "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ly0)); e <= static_cast<int>(std::floor(ly1)); ++e) {
        const double py = y_pix(std::pow(10.0, e));
        svg << "  <line x1=\"" << (left - 6) << "\" y1=\"" << py << "\" x2=\"" << left
            << "\" y2=\"" << py << "\" stroke=\"#333\"/>\n";
        svg << "  <text x=\"" << (left - 10) << "\" y=\"" << (py + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
    svg << "  <text x=\"" << (left + (width - left - right) / 2) << "\" y=\"" << (height - 12)
        << "\" font-size=\"13\" text-anchor=\"middle\">samples N</text>\n";
    svg << "  <text x=\"16\" y=\"" << (top + (height - top - bottom) / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (top + (height - top - bottom) / 2) << ")\">excess risk bound</text>\n";

    for (std::size_t c = 0; c < ps.size(); ++c) {
        const char* color = kColors[c % 6];
        svg << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& pt : points)
            if (pt.p == ps[c]) svg << x_pix(pt.n) << ',' << y_pix(pt.bound) << ' ';
        svg << "\"/>\n";
        svg << "  <text x=\"" << (width - right - 90) << "\" y=\"" << (top + 18 + 16 * c)
            << "\" font-size=\"12\" fill=\"" << color << "\">p = "
            << (std::isinf(ps[c]) ? std::string("inf") : fmt17(ps[c])) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace svn

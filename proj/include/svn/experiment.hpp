#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svn/complexity.hpp"
#include "svn/datagen.hpp"
#include "svn/erm.hpp"
#include "svn/stats.hpp"

namespace svn {

struct RiskCurveConfig {
    ScenarioSpec scenario;
    SchattenBall ball;
    std::vector<int> n_grid;
    std::vector<std::uint64_t> seeds;
    int test_size = 0;     // must be >= 10 * max(n_grid)
    double delta = 1e-3;
};

void validate(const RiskCurveConfig& config);

struct RiskCurveRow {
    double p = 0.0;
    double radius = 0.0;
    int n = 0;
    std::uint64_t seed = 0;
    double train_risk = 0.0;
    double test_risk = 0.0;
    double oracle_risk = 0.0;
    double excess = 0.0;
    double bound = 0.0;
    bool converged = true;
};

// Best-in-class risk estimate: one large-sample ERM (size = budget)
// evaluated on an independent sample of the same size.
double oracle_risk(const ScenarioSpec& scenario, const SchattenBall& ball, int budget);

// One row per (N, seed) cell: train, fit via the reduce-solve-lift
// pipeline, estimate test risk on fresh draws, attach the closed-form
// excess bound. Deterministic in the scenario seed for any thread count.
std::vector<RiskCurveRow> risk_curve(const RiskCurveConfig& config, int threads = 1);

struct SlopeFit {
    LineFit fit;
    int points_used = 0;
    int points_dropped = 0;  // N values with nonpositive mean excess
};

// Log-log slope of mean excess vs N. Requires >= 5 distinct N values with
// positive mean excess.
SlopeFit slope_fit(const std::vector<RiskCurveRow>& rows);

struct BoundCurvePoint {
    double p = 0.0;
    int n = 0;
    double bound = 0.0;
};

// The excess bound evaluated on a (p, N) grid, ready for CSV/SVG emission.
std::vector<BoundCurvePoint> bound_curves(const std::vector<double>& p_list,
                                          const std::vector<int>& n_grid, double radius,
                                          double c_x, double c_y, double delta);

std::string risk_curve_csv(const std::vector<RiskCurveRow>& rows);
std::string growth_csv(const RademacherConfig& config, const GrowthFit& fit);
std::string bound_curves_csv(const std::vector<BoundCurvePoint>& points);
std::string bound_curves_svg(const std::vector<BoundCurvePoint>& points);

}  // namespace svn

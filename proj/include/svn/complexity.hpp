#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "svn/datagen.hpp"
#include "svn/operator.hpp"
#include "svn/stats.hpp"

namespace svn {

enum class RademacherDesign { kFixedVector, kOrthonormal, kIidScenario };

struct RademacherConfig {
    std::vector<int> n_grid;
    int trials = 200;
    double q = 2.0;
    RademacherDesign design = RademacherDesign::kIidScenario;
    std::optional<ScenarioSpec> scenario;  // required for kIidScenario
    double c_x = 1.0;                      // vector scale for the synthetic designs
    std::uint64_t seed = 0;
};

void validate(const RademacherConfig& config);

struct GrowthCell {
    int n = 0;
    double mean_norm_xx = 0.0;
    double mean_norm_yx = 0.0;
    double bound_xx = 0.0;
    double bound_yx = 0.0;
    bool violated = false;
};

struct GrowthFit {
    std::vector<GrowthCell> cells;
    LineFit fit_xx;
    LineFit fit_yx;
    bool reliable = true;  // false when either r^2 < 0.95
    bool any_violation = false;
};

// Schatten q-norms of the sign-weighted rank-one sums
// T_xx = sum_n sigma_n x_n x_n^T and T_yx = sum_n sigma_n y_n x_n^T,
// assembled densely. Columns of xs/ys are the vectors.
std::pair<double, double> random_op_norms(const Mat& xs, const Mat& ys,
                                          const std::vector<int>& signs, double q);

// Monte-Carlo growth study of E||T_xx||_{S_q}, E||T_yx||_{S_q} over the N
// grid, with the closed-form growth bounds checked in every cell.
// threads <= 1 runs the serial reference path; results are identical for
// every thread count.
GrowthFit mc_growth(const RademacherConfig& config, int threads = 1);

// The closed-form complexity and excess-risk bounds:
//   rademacher = C_y/sqrt(N) + N^(-min(1/2,1/p)) (B^2 C_x + 2 B C_x C_y)
//   excess     = 4*rademacher + 2 (C_y + B C_x)^2 sqrt(log(1/delta)/N)
struct TheoremBounds {
    double rademacher = 0.0;
    double excess = 0.0;
};

TheoremBounds theorem_bounds(int n, const SchattenBall& ball, double c_x, double c_y,
                             double delta);

// Supremum of the loss ||y - Tx||^2 over the ball, together with the
// rank-one operator achieving it. Zero x or y degenerates to (||y||^2, 0).
std::pair<double, LinearOperator> sup_loss(const HilbertVector& x, const HilbertVector& y,
                                           const SchattenBall& ball);

}  // namespace svn

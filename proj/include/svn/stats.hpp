#pragma once

#include <vector>

namespace svn {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

// Ordinary least squares y = slope*x + intercept with coefficient of
// determination.
LineFit ols_fit(const std::vector<double>& x, const std::vector<double>& y);

// OLS on (log x, log y); inputs must be positive.
LineFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace svn

#pragma once

#include <vector>

namespace wkg {

// composite Simpson on uniform nodes; an odd interval count closes with a 3/8 panel
double simpson(const std::vector<double>& f, double h);
double trapezoid(const std::vector<double>& f, double h);
double trapezoid(const std::vector<double>& x, const std::vector<double>& f);
std::vector<double> cumulative_trapezoid(const std::vector<double>& x, const std::vector<double>& f);

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double width = 0.0;  // 2 standard errors
    int n = 0;
};

// least squares of log y against log x over x >= x_min, ignoring y <= 0
SlopeFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y, double x_min);

}  // namespace wkg

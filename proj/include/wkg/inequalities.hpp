#pragma once

#include "wkg/energies.hpp"
#include "wkg/quadrature.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace wkg {

struct HardyResult {
    double ratio = 0.0;
    double bound = 0.0;
    bool ok = true;
};

// ||r^{-a/2} u|| / ||r^{1-a/2} u_r|| in R^n for radial u supported in r < R
HardyResult check_hardy(const std::function<double(double)>& u, const std::function<double(double)>& ur, double R,
                        double alpha, int n);
HardyResult check_hardy(const RadialProfile& p, double alpha, int n);

// random sum of bump / dbump profiles from a seed
RadialProfile random_profile(std::uint64_t seed);

struct KSResult {
    double s = 0.0;
    double sup_weighted = 0.0;  // sup t^{3/2}|u| on H_s
    double norm_sum = 0.0;      // sum of family L^2 norms, orders <= 2
    double constant = 0.0;
};

KSResult check_klainerman_sobolev(const FieldSampler& f, double s);

struct SlackSeries {
    std::vector<double> s, lhs, rhs, slack;
    double C = 1.0;
    double C_min = 0.0;  // smallest constant validating the run
    double min_slack = 0.0;
};

// E1(s)^{1/2} <= E1(s0)^{1/2} + C int s'^{1/2} ||(s'/t)^{1/2} box u|| ds'
SlackSeries check_conformal_estimate(const FieldSampler& f, const std::vector<double>& s_grid, double C = 1.0);
// E0(s,u)^{1/2} <= E0(2,u)^{1/2} + int ||box u|| ds'   (which = U)
// E0c(s,v)^{1/2} <= k^2 E0c(s0,v)^{1/2} + k^2 int M ds' (which = V, kappa = 2)
SlackSeries check_standard_estimate(const FieldSampler& f, const std::vector<double>& s_grid, Which which,
                                    double kappa = 2.0);

struct MonitorSeries {
    std::string label;
    std::string axis;  // "s" or "t"
    std::vector<double> x, y;
    double expected = 0.0;  // predicted exponent of the weighted series
    SlopeFit fit;
    bool flagged = false;
};

// sup over hyperboloids of the weighted quantities
std::vector<MonitorSeries> decay_monitors(const FieldSampler& f, const std::vector<double>& s_grid, double delta,
                                          double s_fit_min);
// sup over flat slices r <= t - 1 of t|u| and t^{3/2}|v|
std::vector<MonitorSeries> slice_decay_monitors(const FieldSampler& f, const std::vector<double>& t_grid,
                                                double t_fit_min);

struct BootstrapResult {
    std::vector<double> s, value, threshold;
    bool pass = true;
    double first_failure = 0.0;
};

BootstrapResult bootstrap_monitor(const std::vector<EnergyReport>& reports, double c1eps, double delta);

}  // namespace wkg

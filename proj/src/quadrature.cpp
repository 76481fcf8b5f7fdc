#include "wkg/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace wkg {

double simpson(const std::vector<double>& f, double h)
{
    const int n = static_cast<int>(f.size()) - 1;
    if (n <= 0)
        return 0.0;
    if (n == 1)
        return 0.5 * h * (f[0] + f[1]);
    int end = n;
    double tail = 0.0;
    if (n % 2) {
        end = n - 3;
        tail = 3.0 * h / 8.0 * (f[end] + 3.0 * f[end + 1] + 3.0 * f[end + 2] + f[end + 3]);
    }
    double acc = 0.0;
    for (int i = 0; i < end; i += 2)
        acc += f[i] + 4.0 * f[i + 1] + f[i + 2];
    return acc * h / 3.0 + tail;
}

double trapezoid(const std::vector<double>& f, double h)
{
    if (f.size() < 2)
        return 0.0;
    double acc = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i)
        acc += f[i];
    return acc * h;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& f)
{
    double acc = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        acc += 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
    return acc;
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& x, const std::vector<double>& f)
{
    std::vector<double> out(x.size(), 0.0);
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (!(x[i] > x[i - 1]))
            throw std::invalid_argument("cumulative_trapezoid: grid must increase");
        out[i] = out[i - 1] + 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
    }
    return out;
}

SlopeFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y, double x_min)
{
    std::vector<double> X, Y;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] >= x_min && y[i] > 0.0 && std::isfinite(y[i])) {
            X.push_back(std::log(x[i]));
            Y.push_back(std::log(y[i]));
        }
    SlopeFit f;
    f.n = static_cast<int>(X.size());
    if (f.n < 2)
        return f;
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < f.n; ++i) {
        mx += X[i];
        my += Y[i];
    }
    mx /= f.n;
    my /= f.n;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < f.n; ++i) {
        sxx += (X[i] - mx) * (X[i] - mx);
        sxy += (X[i] - mx) * (Y[i] - my);
    }
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (f.n > 2) {
        double ss = 0.0;
        for (int i = 0; i < f.n; ++i) {
            const double e = Y[i] - f.intercept - f.slope * X[i];
            ss += e * e;
        }
        f.width = 2.0 * std::sqrt(ss / (f.n - 2) / sxx);
    }
    return f;
}

}  // namespace wkg

#include "wkg/profile.hpp"

#include <cmath>
#include <stdexcept>

namespace wkg {

const char* to_string(ProfileKind k)
{
    switch (k) {
    case ProfileKind::Zero: return "zero";
    case ProfileKind::Bump: return "bump";
    case ProfileKind::DBump: return "dbump";
    }
    return "?";
}

ProfileKind profile_kind_from_string(const std::string& s)
{
    if (s == "zero") return ProfileKind::Zero;
    if (s == "bump") return ProfileKind::Bump;
    if (s == "dbump") return ProfileKind::DBump;
    throw std::invalid_argument("unknown profile kind '" + s + "'");
}

double poly_deriv(const std::vector<double>& c, double x, int m)
{
    const int n = static_cast<int>(c.size());
    if (m >= n)
        return 0.0;
    double acc = 0.0;
    for (int k = n - 1; k >= m; --k) {
        double f = 1.0;
        for (int j = 0; j < m; ++j)
            f *= static_cast<double>(k - j);
        acc = acc * x + f * c[k];
    }
    return acc;
}

static double binom(int n, int k)
{
    double b = 1.0;
    for (int i = 1; i <= k; ++i)
        b = b * (n - k + i) / i;
    return b;
}

RadialProfile::RadialProfile(const ProfileSpec& spec, double scale)
{
    R_ = spec.radius;
    const double a = spec.amp * scale;
    if (spec.kind == ProfileKind::Zero || a == 0.0)
        return;
    std::vector<double> cx(spec.power + 2, 0.0);
    const int shift = spec.kind == ProfileKind::DBump ? 1 : 0;
    for (int k = 0; k <= spec.power; ++k)
        cx[k + shift] = a * binom(spec.power, k) * ((k % 2) ? -1.0 : 1.0);
    std::vector<double> cr(2 * cx.size() - 1, 0.0);
    for (std::size_t k = 0; k < cx.size(); ++k)
        cr[2 * k] = cx[k] / std::pow(R_, 2.0 * k);
    build(cr);
}

RadialProfile RadialProfile::from_even_poly(const std::vector<double>& coeffs, double radius)
{
    RadialProfile p;
    p.R_ = radius;
    bool any = false;
    for (double c : coeffs)
        any = any || c != 0.0;
    if (!any)
        return p;
    std::vector<double> cr(2 * coeffs.size() - 1, 0.0);
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        cr[2 * k] = coeffs[k] / std::pow(radius, 2.0 * k);
    p.build(cr);
    return p;
}

void RadialProfile::build(const std::vector<double>& even_in_r)
{
    even_ = even_in_r;
    odd_.assign(even_.size() + 1, 0.0);
    for (std::size_t k = 0; k < even_.size(); ++k)
        odd_[k + 1] = even_[k];
    anti_.assign(odd_.size() + 1, 0.0);
    for (std::size_t k = 0; k < odd_.size(); ++k)
        anti_[k + 1] = odd_[k] / static_cast<double>(k + 1);
}

double RadialProfile::value(double r, int m) const
{
    if (even_.empty() || r >= R_)
        return 0.0;
    return poly_deriv(even_, r, m);
}

double RadialProfile::phi(double x, int m) const
{
    if (odd_.empty() || std::abs(x) >= R_)
        return 0.0;
    return poly_deriv(odd_, x, m);
}

double RadialProfile::antideriv(double x, int m) const
{
    if (anti_.empty())
        return 0.0;
    if (std::abs(x) >= R_)
        return m == 0 ? poly_deriv(anti_, R_, 0) : 0.0;
    return poly_deriv(anti_, x, m);
}

}  // namespace wkg

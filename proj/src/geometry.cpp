#include "wkg/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace wkg::geom {

const char* to_string(EntryTag tag)
{
    switch (tag) {
    case EntryTag::Boundary: return "boundary";
    case EntryTag::Hyperboloid: return "hyperboloid";
    case EntryTag::Exterior: return "exterior";
    }
    return "?";
}

bool in_cone(double t, double r) { return r >= 0.0 && r < t - 1.0; }

double to_hyperboloidal(double t, double r)
{
    if (!(t > r) || r < 0.0)
        throw std::domain_error("to_hyperboloidal: need t > r >= 0");
    return std::sqrt((t - r) * (t + r));
}

double from_hyperboloidal(double s, double r) { return std::sqrt(s * s + r * r); }

FramePair frame_pair(double t, const Vec3& x)
{
    if (!(t > 0.0))
        throw std::domain_error("frame_pair: need t > 0");
    FramePair f;
    for (int i = 0; i < 4; ++i) {
        f.phi[i][i] = 1.0;
        f.psi[i][i] = 1.0;
    }
    for (int a = 0; a < 3; ++a) {
        f.phi[a + 1][0] = x[a] / t;
        f.psi[a + 1][0] = -x[a] / t;
    }
    return f;
}

Mat4 matmul(const Mat4& a, const Mat4& b)
{
    Mat4 c{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double acc = 0.0;
            for (int k = 0; k < 4; ++k)
                acc += a[i][k] * b[k][j];
            c[i][j] = acc;
        }
    return c;
}

double curve_constant(double t, double r) { return (t - r) * (t + r) / r; }

HyperbolaCurve hyperbola_through(double t, double r, const Vec3& omega)
{
    if (!(r > 0.0) || !(r < t))
        throw std::domain_error("hyperbola_through: need 0 < r < t");
    return HyperbolaCurve{curve_constant(t, r), omega};
}

double curve_position(const HyperbolaCurve& curve, double tau)
{
    if (!(tau > 0.0))
        throw std::domain_error("curve_position: need tau > 0");
    const double h = 0.5 * curve.c0;
    // sqrt(tau^2 + h^2) - h, written without cancellation
    return tau * tau / (std::sqrt(tau * tau + h * h) + h);
}

double curve_speed(const HyperbolaCurve& curve, double tau)
{
    const double h = 0.5 * curve.c0;
    return tau / std::sqrt(tau * tau + h * h);
}

double asymptote_defect(const HyperbolaCurve& curve, double tau)
{
    const double h = 0.5 * curve.c0;
    return tau * h * h / (std::sqrt(tau * tau + h * h) + tau);
}

double entry_threshold(double s0) { return 2.0 * s0 * s0 / (s0 * s0 - 1.0); }

EntryPoint entry_point(const HyperbolaCurve& curve, double s0)
{
    const double c0 = curve.c0;
    EntryPoint e;
    e.point.omega = curve.omega;
    if (c0 <= 2.0) {
        e.tag = EntryTag::Exterior;
        e.point.t = std::numeric_limits<double>::infinity();
        e.point.r = std::numeric_limits<double>::infinity();
        return e;
    }
    if (c0 <= entry_threshold(s0)) {
        // t = r + 1 and t^2 - r^2 = c0 r
        e.tag = EntryTag::Boundary;
        e.point.r = 1.0 / (c0 - 2.0);
        e.point.t = e.point.r + 1.0;
    } else {
        // t^2 - r^2 = s0^2 and t^2 - r^2 = c0 r
        e.tag = EntryTag::Hyperboloid;
        e.point.r = s0 * s0 / c0;
        e.point.t = std::sqrt(s0 * s0 + e.point.r * e.point.r);
    }
    return e;
}

double friction_P(double t, double r)
{
    if (!(t > r) || r < 0.0)
        throw std::domain_error("friction_P: need t > r >= 0");
    return 2.0 * (t - r) * (t + r) / (t * (t * t + r * r));
}

double friction_along(const HyperbolaCurve& curve, double tau)
{
    const double r = curve_position(curve, tau);
    // t^2 - r^2 = c0 r on the curve
    return 2.0 * curve.c0 * r / (tau * (tau * tau + r * r));
}

double friction_integral(const HyperbolaCurve& curve, double tau0, double tau1)
{
    if (tau1 <= tau0)
        return 0.0;
    // on the curve P dtau = (1/r - 1/(r + c0)) dr
    const double c0 = curve.c0;
    const double r0 = curve_position(curve, tau0);
    const double tail1 = std::isinf(tau1) ? 0.0 : std::log1p(c0 / curve_position(curve, tau1));
    return std::log1p(c0 / r0) - tail1;
}

double lambda0(double t, double r, double s0)
{
    if (!in_cone(t, r))
        throw std::domain_error("lambda0: point outside the cone");
    if (r / t <= (s0 * s0 - 1.0) / (s0 * s0 + 1.0))
        return s0;
    return std::sqrt((t + r) / (t - r));
}

}  // namespace wkg::geom

#pragma once

#include <array>

namespace wkg::geom {

using Vec3 = std::array<double, 3>;
using Mat4 = std::array<std::array<double, 4>, 4>;

struct SpacetimePoint {
    double t = 0.0;
    double r = 0.0;
    Vec3 omega{1.0, 0.0, 0.0};
};

// semi-hyperboloidal frame: rows are the frame vectors in the natural basis
struct FramePair {
    Mat4 phi{};
    Mat4 psi{};
};

struct HyperbolaCurve {
    double c0 = 0.0;
    Vec3 omega{1.0, 0.0, 0.0};
};

// Exterior: the curve never reaches r < t - 1 (happens for c0 <= 2)
enum class EntryTag { Boundary, Hyperboloid, Exterior };

struct EntryPoint {
    SpacetimePoint point;
    EntryTag tag = EntryTag::Exterior;
};

const char* to_string(EntryTag tag);

bool in_cone(double t, double r);

double to_hyperboloidal(double t, double r);
double from_hyperboloidal(double s, double r);

FramePair frame_pair(double t, const Vec3& x);
Mat4 matmul(const Mat4& a, const Mat4& b);

HyperbolaCurve hyperbola_through(double t, double r, const Vec3& omega = {1.0, 0.0, 0.0});
double curve_constant(double t, double r);
double curve_position(const HyperbolaCurve& curve, double tau);
double curve_speed(const HyperbolaCurve& curve, double tau);
// tau (r(tau) - tau + c0/2), tends to c0^2/8
double asymptote_defect(const HyperbolaCurve& curve, double tau);

// threshold value of c0 separating the two entry regimes for a given s0
double entry_threshold(double s0);
EntryPoint entry_point(const HyperbolaCurve& curve, double s0 = 2.0);

double friction_P(double t, double r);
double friction_along(const HyperbolaCurve& curve, double tau);
// integral of P along the curve over [tau0, tau1]; tau1 may be +infinity
double friction_integral(const HyperbolaCurve& curve, double tau0, double tau1);

double lambda0(double t, double r, double s0 = 2.0);

}  // namespace wkg::geom

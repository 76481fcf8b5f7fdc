#pragma once

#include "wkg/history.hpp"
#include "wkg/oracles.hpp"
#include "wkg/profile.hpp"

#include <string>
#include <vector>

namespace wkg {

enum class RadiationMethod { NullRay, Hyperbola };
const char* to_string(RadiationMethod m);

struct RadiationEstimate {
    double mu = 0.0;
    geom::Vec3 omega{1.0, 0.0, 0.0};
    double value = 0.0;
    double error_bar = 0.0;
    RadiationMethod method = RadiationMethod::NullRay;
    bool flagged = false;
    // raw sequence fed to the extrapolation
    std::vector<double> x, raw;
    bool cauchy = true;
    // second-order extrapolation in dr against a coarser companion run, when one is given
    double resolution_correction = 0.0;
};

struct TransportState {
    geom::HyperbolaCurve curve;
    std::vector<double> tau, U, S_w, Delta_w, P, friction;  // friction = int_{tau0}^{tau} P
    bool truncated = false;
};

// S^w and Delta^w along the curve; the tau grid is cut where the sampler ends
TransportState transport_terms(const FieldSampler& f, const geom::HyperbolaCurve& curve,
                               const std::vector<double>& taus);
TransportState transport_terms(const FieldSampler& f, const geom::HyperbolaCurve& curve, double dtau);

struct TransportCheck {
    double max_residual = 0.0;
    double scale = 0.0;  // max |U'|
    bool truncated = false;
};

TransportCheck transport_check(const FieldSampler& f, const geom::HyperbolaCurve& curve, double dtau);

// polynomial extrapolation in x to x = 0; correction = difference of the last two orders
double richardson(const std::vector<double>& x, const std::vector<double>& y, double* correction = nullptr);

// coarse: same scenario at twice the grid spacing
RadiationEstimate radiation_null(const FieldSampler& f, double mu, const std::vector<double>& rs,
                                 const geom::Vec3& omega = {1.0, 0.0, 0.0}, const FieldSampler* coarse = nullptr);
// default r sequence fitting inside the sampler's time range
std::vector<double> default_null_radii(const FieldSampler& f, double mu, int count = 4);

struct HyperbolaOptions {
    double dtau = 0.005;
    std::vector<double> horizon_fractions{0.4, 0.55, 0.75, 1.0};
};

RadiationEstimate radiation_hyperbola(const FieldSampler& f, const geom::HyperbolaCurve& curve,
                                      const HyperbolaOptions& opt = {}, const FieldSampler* coarse = nullptr);
// max over tau of tau * int_tau^inf P / c0
double integrating_factor_constant(const geom::HyperbolaCurve& curve, double tau0, double tau1, int samples = 50);

// free wave through the closed-form oracle, any time range
AnalyticSampler dalembert_sampler(const RadialProfile& u0, const RadialProfile& u1, double t_max, double spacing = 0.01);

struct ExcessiveDecay {
    std::vector<double> s, sup_weak, sup_strong, e0, weighted_e0;
    double slope_weak = 0.0, slope_strong = 0.0, slope_weighted = 0.0;
    double sigma = 0.0;
    bool all_zero = false;
    bool strong_bounded = false;
    bool weighted_decays = false;
};

ExcessiveDecay excessive_decay_check(const FieldSampler& f, const std::vector<double>& s_grid, double eta,
                                     double delta, double sigma, double s_fit_min, double bound_tol = 0.1);

struct RigidityInput {
    std::string label;
    const FieldSampler* sampler = nullptr;
    double dr = 0.01;
    // free-wave members carry their data for the closed-form cross-check
    bool free_wave = false;
    RadialProfile u0, u1;
    const FieldSampler* coarse = nullptr;
};

struct RigidityRow {
    std::string label;
    double e0_initial = 0.0;
    double comparability_min = 1.0, comparability_max = 1.0;
    double comparability_C = 1.0;
    std::vector<RadiationEstimate> fan;
    double radiation_norm = 0.0;      // max |R| over the fan
    double oracle_l2 = -1.0;          // int R^2 dmu from the closed form (free wave only)
    double oracle_ratio = -1.0;       // oracle_l2 / E0(2)
    double floor = 0.0;
    bool below_floor = false;
    bool consistent = true;           // R below floor => E0(2) vanishes
    bool oracle_equivalence = true;   // closed-form R == 0 <=> zero data
};

struct RigidityOptions {
    std::vector<double> c0_fan{3.0, 4.0, 5.0};
    std::vector<double> mu_fan{1.25, 1.5, 2.0, 2.5};
    double s_max = 0.0;  // 0: use the sampler coverage
    double ds = 0.5;
};

std::vector<RigidityRow> rigidity_experiment(const std::vector<RigidityInput>& runs, const RigidityOptions& opt = {});

}  // namespace wkg

#pragma once

#include "wkg/history.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace wkg {

struct OscillatorProblem {
    double c = 1.0;
    std::function<double(double)> q = [](double) { return 0.0; };
    std::function<double(double)> qp = [](double) { return 0.0; };
    std::function<double(double)> f = [](double) { return 0.0; };
    double v0 = 1.0;
    double v0p = 0.0;
    double s0 = 0.0;
    double s1 = 10.0;
};

struct Trajectory {
    std::vector<double> s, v, vp;
};

// adaptive RK4 with step doubling; output on a uniform grid of n + 1 points
Trajectory integrate_oscillator(const OscillatorProblem& p, int n = 2000, double tol = 1e-12);

struct LemmaResult {
    // sqrt(v'^2/(1+q) + c^2 v^2) <= initial + int(|f|/sqrt(1+q) + |q'v'|/(2(1+q)^{3/2}))
    bool quadratic_ok = true;
    double quadratic_min_slack = 0.0;
    // minimal C in Q(s) <= Q(s0) + C int(|f| + |q'v'|)
    double C_quadratic = 0.0;
    // minimal C in |v'| + c|v| <= |v'(s0)| + c|v(s0)| + C c^{-1} int(|f| + |q'v'|); infinite if the integral vanishes
    double C_literal = 0.0;
    // max (|v'| + c|v|) / sqrt(v'^2 + c^2 v^2)
    double equivalence_factor = 1.0;
    // |P Q P^{-1} - companion| and the transformed-system residual along the trajectory
    double diagonalization_residual = 0.0;
    double system_residual = 0.0;
};

// smooth q with |q| <= 0.45, forcing f decaying like s^{-3/2}; explicit seed
OscillatorProblem random_oscillator(std::uint64_t seed);

LemmaResult check_ode_lemma(const OscillatorProblem& p, const Trajectory& tr);
double diagonalization_residual(double c, double q);

// ray through the origin with r/t = beta, parameterized by lambda = s
struct RayProfile {
    double beta = 0.0;
    std::vector<double> lambda, w, wp, residual;
    double max_residual = 0.0;
    double scale = 0.0;  // max |w''| for reference
};

double reduced_Hbar(const RadialJet& J, const Couplings& cp);
// the S2 source at one point (free of the oscillator shift, f = 0)
double S2_source(const RadialJet& J, const Couplings& cp, double c);
// L = d/dlambda along the ray: by chain rule and by frame composition
double L_chain(const RadialJet& J, int field_is_v = 1);
double L_frame(const RadialJet& J, int field_is_v = 1);

RayProfile reduction_residual(const FieldSampler& f, double beta, double dlambda, double lambda_max = 0.0);

struct SharpDecay {
    std::vector<double> beta;
    std::vector<std::vector<double>> s, value;  // per ray
    double sup = 0.0;
    double slope = 0.0;  // of the per-s maximum over rays
};

SharpDecay sharp_decay_check(const FieldSampler& f, const std::vector<double>& betas, double ds, double s_fit_min);

}  // namespace wkg

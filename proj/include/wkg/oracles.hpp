#pragma once

#include "wkg/history.hpp"
#include "wkg/profile.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace wkg {

// free wave from data (u0, u1) posed on t = 2
class DalembertOracle {
public:
    DalembertOracle() = default;
    DalembertOracle(RadialProfile u0, RadialProfile u1) : u0_(std::move(u0)), u1_(std::move(u1)) {}
    double value(double t, double r) const;
    // d[i][j] = dt^i dr^j u for i + j <= order (order <= 3)
    void jet(double t, double r, int order, double d[4][4]) const;
    // limit of r dt u along t = r + mu
    double radiation(double mu) const;
    bool is_zero() const { return u0_.is_zero() && u1_.is_zero(); }

private:
    RadialProfile u0_, u1_;
    // dt^i dr^n of r u
    double G(double tau, double r, int i, int n) const;
};

// free Klein-Gordon by sine transform of r v on [0, L]
class KgSpectralOracle {
public:
    KgSpectralOracle() = default;
    KgSpectralOracle(const RadialProfile& v0, const RadialProfile& v1, double c, double L, double h);
    void jet(double t, double r, int order, double d[4][4]) const;
    double value(double t, double r) const;
    // full slice on the oracle grid r_j = j L / M, j = 0..M
    std::vector<double> slice(double t) const;
    double grid_spacing() const { return L_ / M_; }
    double mode_energy(double t) const;
    bool resolution_warning() const { return warn_; }
    bool is_zero() const { return a_.empty(); }

private:
    double L_ = 1.0, c_ = 1.0;
    int M_ = 0;
    std::vector<double> k_, w_, a_, b_;
    bool warn_ = false;
};

// u from d'Alembert, v from the spectral oracle, no couplings
class FreeFieldSampler : public FieldSampler {
public:
    FreeFieldSampler(const Scenario& sc, double t_max, double spacing = 0.01);
    RadialJet jet(double t, double r, int order) const override;
    double t_min() const override { return 2.0; }
    double t_max() const override { return t_max_; }
    double spacing() const override { return h_; }
    const DalembertOracle& wave() const { return wave_; }
    const KgSpectralOracle& kg() const { return kg_; }

private:
    DalembertOracle wave_;
    KgSpectralOracle kg_;
    double t_max_, h_;
};

class AnalyticSampler : public FieldSampler {
public:
    using Fn = std::function<void(double t, double r, int order, RadialJet& out)>;
    AnalyticSampler(Fn fn, double t_min, double t_max, double spacing)
        : fn_(std::move(fn)), t0_(t_min), t1_(t_max), h_(spacing) {}
    RadialJet jet(double t, double r, int order) const override
    {
        RadialJet j;
        j.t = t;
        j.r = r;
        fn_(t, r, order, j);
        return j;
    }
    double t_min() const override { return t0_; }
    double t_max() const override { return t1_; }
    double spacing() const override { return h_; }

private:
    Fn fn_;
    double t0_, t1_, h_;
};

struct KirchhoffEnvelope {
    double cF = 1.0;
    double mu = 0.5;
    double nu = 0.5;
    void validate() const;
};

double kirchhoff_envelope(const KirchhoffEnvelope& env, double t, double r, double C = 1.0);
// log-log slope in t of the envelope sup over the cone
double kirchhoff_envelope_slope(const KirchhoffEnvelope& env);

// solution of box u = f with zero data on t = 2 for
// f = cF 1_{r <= t-1} t^{-2-nu} (t-r)^{-1+mu}
class DuhamelOracle {
public:
    explicit DuhamelOracle(KirchhoffEnvelope env) : env_(env) { env_.validate(); }
    double source(double t, double r) const;
    double value(double t, double r) const;
    double sup_r(double t, int samples = 200) const;

private:
    KirchhoffEnvelope env_;
    double H(double tp, double x) const;
};

// closed-form radiation field of the free wave with data on t = 2
double free_wave_radiation(const RadialProfile& u0, const RadialProfile& u1, double mu);

}  // namespace wkg

#pragma once

#include "wkg/geometry.hpp"
#include "wkg/solver.hpp"

#include <vector>

namespace wkg {

// d[i][j] = dt^i dr^j of the field, filled for i + j <= order
struct RadialJet {
    double t = 0.0;
    double r = 0.0;
    double u[4][4]{};
    double v[4][4]{};
};

class FieldSampler {
public:
    virtual ~FieldSampler() = default;
    virtual RadialJet jet(double t, double r, int order) const = 0;
    virtual double t_min() const = 0;
    virtual double t_max() const = 0;
    // natural radial spacing for quadrature on this source
    virtual double spacing() const = 0;

    Couplings couplings;
    double mass = 1.0;
};

// box u from the equation
double box_u(const RadialJet& j, const Couplings& c);
// dt of box u (needs order >= 2 jet)
double box_u_t(const RadialJet& j, const Couplings& c);

class HistorySampler : public FieldSampler {
public:
    explicit HistorySampler(const SliceHistory& h);
    RadialJet jet(double t, double r, int order) const override;
    double t_min() const override { return hist_.t0; }
    double t_max() const override { return hist_.t_end(); }
    double spacing() const override { return hist_.h; }
    const SliceHistory& history() const { return hist_; }

private:
    struct SliceJet {
        double u[4][4];
        double v[4][4];
    };
    const SliceHistory& hist_;
    void slice_jet(int k, int j, int q, SliceJet& out) const;
    void spatial_jet(int k, double r, int q, SliceJet& out) const;
};

// largest s with H_s fully inside the sampled time range, given support r <= t - 1
double covered_s_max(const FieldSampler& f);
// uniform nodes r = j h covering the support part of H_s
std::vector<double> hyperboloid_nodes(double s, double h);

std::vector<RadialJet> sample_on_hyperboloid(const FieldSampler& f, double s, const std::vector<double>& r_nodes,
                                             int order = 1);
std::vector<RadialJet> sample_along_curve(const FieldSampler& f, const geom::HyperbolaCurve& curve,
                                          const std::vector<double>& taus, int order = 1);

}  // namespace wkg

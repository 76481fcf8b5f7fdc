#pragma once

#include "wkg/history.hpp"
#include "wkg/jet.hpp"

#include <array>
#include <string>
#include <vector>

namespace wkg {

enum class Which { U, V };

struct HyperboloidSample {
    double s = 2.0;
    double h = 0.01;
    std::vector<double> r;
    std::vector<RadialJet> jets;
};

HyperboloidSample sample_hyperboloid(const FieldSampler& f, double s, int order = 1);

struct E0cForms {
    double natural = 0.0;
    double hyperboloidal = 0.0;
    double rotation = 0.0;
};

E0cForms e0c_density(double t, double r, double w, double wt, double wr, double c);

struct E0cResult {
    double value = 0.0;  // natural form
    E0cForms forms;
    double max_rel_disagreement = 0.0;
};

E0cResult energy_e0c(const HyperboloidSample& smp, Which which, double c);

struct E1Result {
    double value = 0.0;
    // Omega term (zero for radial fields), (t-r) frame term, K1 term, Hardy-controlled term
    std::array<double, 4> terms{};
    bool decomposition_ok = true;
    // the E1-controlled norms of the lemma, in order: t^{-1/2}(K1u+u), (s/t)t^{1/2} d_r-frame u,
    // (s/t)^3 t^{1/2} du, (s/t) t^{-1/2} u
    std::array<double, 4> controlled{};
};

double e1_density(double t, double r, double w, double wt, double wr);
E1Result energy_e1(const HyperboloidSample& smp, Which which = Which::U);

struct E0gcResult {
    double value = 0.0;
    double e0c = 0.0;
    double ratio = 1.0;
    bool kappa_ok = true;
    double max_abs_H = 0.0;
    double M = 0.0;  // metric-derivative coefficient of the curved estimate
};

E0gcResult energy_e0gc(const HyperboloidSample& smp, const Couplings& cp, double c, double kappa = 2.0);

// E1(s0)^{1/2} + E1(s)^{1/2} + int s'^{-1} E1^{1/2} ds', accumulated along the grid
std::vector<double> energy_f1(const std::vector<double>& s, const std::vector<double>& e1);

// flat slice t = const over r in [0, t - 1]; curved metric when cp is given
double energy_plane(const FieldSampler& f, double t, Which which, double c, const Couplings* cp = nullptr);

struct HighOrderRow {
    std::string word;
    double e0c_u = 0.0;  // c = 0
    double e1_u = 0.0;
    double e0c_v = 0.0;
    double l2_u = 0.0;  // family L^2(H_s) norm
    double l2_v = 0.0;
};

double e0c_density_cartesian(const jet::Jet& w, double t, const std::array<double, 3>& x, double c);
double e1_density_cartesian(const jet::Jet& w, double t, const std::array<double, 3>& x);

std::vector<HighOrderRow> high_order_energies(const FieldSampler& f, double s);
std::vector<HighOrderRow> high_order_energies(const HyperboloidSample& smp3, double c);

struct EnergyReport {
    double s = 2.0;
    double e0 = 0.0;
    double e0c = 0.0;
    double e0gc = 0.0;
    double kappa_ratio = 1.0;
    double M = 0.0;
    double e1 = 0.0;
    double f1 = 0.0;
    std::array<double, 4> e1_terms{};
    double triple_form_disagreement = 0.0;
    double e1_hi_u = 0.0;   // sum over words of order <= 2
    double e0c_hi_v = 0.0;
    std::vector<HighOrderRow> high_order;
};

std::vector<EnergyReport> energy_reports(const FieldSampler& f, const std::vector<double>& s_grid,
                                         bool with_high_order);

}  // namespace wkg

#include "wkg/energies.hpp"
#include "wkg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wkg {

namespace {

constexpr double kFourPi = 4.0 * M_PI;

const double (&field(const RadialJet& j, Which w))[4][4] { return w == Which::U ? j.u : j.v; }

double integrate(const HyperboloidSample& smp, const std::vector<double>& dens)
{
    std::vector<double> f(dens.size());
    for (std::size_t i = 0; i < dens.size(); ++i)
        f[i] = kFourPi * smp.r[i] * smp.r[i] * dens[i];
    return simpson(f, smp.h);
}

}  // namespace

HyperboloidSample sample_hyperboloid(const FieldSampler& f, double s, int order)
{
    if (s < 1.0 || s > covered_s_max(f) + 1e-12)
        throw std::out_of_range("hyperboloid s=" + std::to_string(s) + " not covered (max " +
                                std::to_string(covered_s_max(f)) + ")");
    HyperboloidSample smp;
    smp.s = s;
    smp.h = f.spacing();
    smp.r = hyperboloid_nodes(s, smp.h);
    smp.jets = sample_on_hyperboloid(f, s, smp.r, order);
    return smp;
}

E0cForms e0c_density(double t, double r, double w, double wt, double wr, double c)
{
    const double s2 = (t - r) * (t + r);
    const double q = r / t;
    const double m = c * c * w * w;
    E0cForms e;
    e.natural = wt * wt + wr * wr + 2.0 * q * wt * wr + m;
    const double a = wr + q * wt;
    e.hyperboloidal = s2 / (t * t) * wt * wt + a * a + m;
    const double b = wt + q * wr;
    e.rotation = b * b + s2 / (t * t) * wr * wr + m;
    return e;
}

E0cResult energy_e0c(const HyperboloidSample& smp, Which which, double c)
{
    const std::size_t n = smp.r.size();
    std::vector<double> a(n), b(n), d(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& F = field(smp.jets[i], which);
        const E0cForms e = e0c_density(smp.jets[i].t, smp.r[i], F[0][0], F[1][0], F[0][1], c);
        a[i] = e.natural;
        b[i] = e.hyperboloidal;
        d[i] = e.rotation;
    }
    E0cResult res;
    res.forms = {integrate(smp, a), integrate(smp, b), integrate(smp, d)};
    res.value = res.forms.natural;
    const double scale = std::max(std::abs(res.value), 1e-300);
    res.max_rel_disagreement = std::max(std::abs(res.forms.natural - res.forms.hyperboloidal),
                                        std::abs(res.forms.natural - res.forms.rotation)) /
                               scale;
    if (res.value == 0.0)
        res.max_rel_disagreement = 0.0;
    return res;
}

double e1_density(double t, double r, double w, double wt, double wr)
{
    const double K = t * wt + r * wr;
    const double dr = wr + (r / t) * wt;
    return K * K / (2.0 * t) + 0.5 * t * dr * dr + w * K / t;
}

E1Result energy_e1(const HyperboloidSample& smp, Which which)
{
    const std::size_t n = smp.r.size();
    std::vector<double> e(n), T1(n), T2(n), T3(n), q1(n), q2(n), q3(n), q4(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& F = field(smp.jets[i], which);
        const double t = smp.jets[i].t, r = smp.r[i];
        const double w = F[0][0], wt = F[1][0], wr = F[0][1];
        const double K = t * wt + r * wr;
        const double dr = wr + (r / t) * wt;
        const double st = smp.s / t;
        e[i] = e1_density(t, r, w, wt, wr);
        T1[i] = 0.5 * (t - r) * dr * dr;
        T2[i] = 0.5 / t * (K + w) * (K + w);
        // (t-r)/(r t) u^2 ; the r^2 weight is applied in integrate()
        T3[i] = r > 0.0 ? (t - r) / (r * t) * w * w : 0.0;
        q1[i] = (K + w) * (K + w) / t;
        q2[i] = st * st * t * dr * dr;
        q3[i] = std::pow(st, 6) * t * (wt * wt + wr * wr);
        q4[i] = st * st / t * w * w;
    }
    E1Result res;
    res.value = integrate(smp, e);
    res.terms = {0.0, integrate(smp, T1), integrate(smp, T2), integrate(smp, T3)};
    const double sum = res.terms[1] + res.terms[2] + res.terms[3];
    const double tol = 1e-6 * std::max(std::abs(res.value), 1e-300);
    res.decomposition_ok = res.terms[1] >= 0.0 && res.terms[2] >= 0.0 && res.terms[3] >= 0.0 && sum <= res.value + tol;
    res.controlled = {std::sqrt(integrate(smp, q1)), std::sqrt(integrate(smp, q2)), std::sqrt(integrate(smp, q3)),
                      std::sqrt(integrate(smp, q4))};
    if (res.value < -1e-12 * std::max(1.0, res.terms[2]))
        throw std::runtime_error("negative conformal energy at s=" + std::to_string(smp.s));
    return res;
}

E0gcResult energy_e0gc(const HyperboloidSample& smp, const Couplings& cp, double c, double kappa)
{
    const std::size_t n = smp.r.size();
    std::vector<double> dE(n), m(n);
    E0gcResult res;
    for (std::size_t i = 0; i < n; ++i) {
        const RadialJet& J = smp.jets[i];
        const double t = J.t, r = smp.r[i];
        const double u = J.u[0][0], ut = J.u[1][0], ur = J.u[0][1];
        const double vt = J.v[1][0], vr = J.v[0][1];
        dE[i] = -cp.p00 * u * vt * vt + cp.pd * u * vr * vr + 2.0 * (r / t) * cp.pd * u * vt * vr;
        m[i] = (smp.s / t) * (-0.5 * cp.p00 * ut * vt * vt - cp.pd * ur * vr * vt + 0.5 * cp.pd * ut * vr * vr);
        res.max_abs_H = std::max({res.max_abs_H, std::abs(cp.p00 * u), std::abs(cp.pd * u)});
    }
    res.e0c = energy_e0c(smp, Which::V, c).value;
    res.value = res.e0c + integrate(smp, dE);
    res.ratio = res.e0c > 0.0 ? res.value / res.e0c : 1.0;
    res.kappa_ok = res.ratio >= 1.0 / (kappa * kappa) && res.ratio <= kappa * kappa;
    res.M = res.e0c > 0.0 ? std::abs(integrate(smp, m)) / std::sqrt(res.e0c) : 0.0;
    return res;
}

std::vector<double> energy_f1(const std::vector<double>& s, const std::vector<double>& e1)
{
    if (s.size() != e1.size())
        throw std::invalid_argument("energy_f1: size mismatch");
    std::vector<double> out(s.size(), 0.0);
    if (s.empty())
        return out;
    const double r0 = std::sqrt(std::max(e1[0], 0.0));
    double acc = 0.0;
    out[0] = 2.0 * r0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (!(s[i] > s[i - 1]))
            throw std::invalid_argument("energy_f1: s grid must increase");
        // trapezoid in log s so that constant energies integrate exactly
        const double a = std::sqrt(std::max(e1[i - 1], 0.0)), b = std::sqrt(std::max(e1[i], 0.0));
        acc += 0.5 * (a + b) * std::log(s[i] / s[i - 1]);
        out[i] = r0 + b + acc;
    }
    return out;
}

double energy_plane(const FieldSampler& f, double t, Which which, double c, const Couplings* cp)
{
    const double h = f.spacing();
    const int J = static_cast<int>(std::ceil((t - 1.0) / h)) + 2;
    std::vector<double> g(J + 1);
    for (int j = 0; j <= J; ++j) {
        const double r = j * h;
        const RadialJet J1 = f.jet(t, r, 1);
        const auto& F = field(J1, which);
        double g00 = 1.0, gd = 1.0;
        if (cp) {
            g00 = 1.0 - cp->p00 * J1.u[0][0];
            gd = 1.0 + cp->pd * J1.u[0][0];
        }
        g[j] = kFourPi * r * r * (g00 * F[1][0] * F[1][0] + gd * F[0][1] * F[0][1] + c * c * F[0][0] * F[0][0]);
    }
    return simpson(g, h);
}

double e0c_density_cartesian(const jet::Jet& w, double t, const std::array<double, 3>& x, double c)
{
    const double wt = w.c[jet::index(1, 0, 0, 0)];
    double grad2 = 0.0, xg = 0.0;
    for (int a = 0; a < 3; ++a) {
        const double wa = w.c[jet::index(0, a == 0, a == 1, a == 2)];
        grad2 += wa * wa;
        xg += x[a] * wa;
    }
    const double w0 = w.c[0];
    return wt * wt + grad2 + 2.0 * xg / t * wt + c * c * w0 * w0;
}

double e1_density_cartesian(const jet::Jet& w, double t, const std::array<double, 3>& x)
{
    const double wt = w.c[jet::index(1, 0, 0, 0)];
    double grad2 = 0.0, xg = 0.0, r2 = 0.0;
    for (int a = 0; a < 3; ++a) {
        const double wa = w.c[jet::index(0, a == 0, a == 1, a == 2)];
        grad2 += wa * wa;
        xg += x[a] * wa;
        r2 += x[a] * x[a];
    }
    const double K = t * wt + xg;
    const double q = r2 / (t * t);
    const double two_e = t * (1.0 + q) * wt * wt + t * (1.0 - q) * grad2 + 2.0 / t * xg * xg + 4.0 * wt * xg +
                         2.0 / t * w.c[0] * K;
    return 0.5 * two_e;
}

std::vector<HighOrderRow> high_order_energies(const HyperboloidSample& smp, double c)
{
    const auto& words = jet::words_up_to_order2();
    const std::size_t nw = words.size(), n = smp.r.size();
    std::vector<std::vector<double>> eu(nw, std::vector<double>(n)), e1(nw, std::vector<double>(n)),
        ev(nw, std::vector<double>(n)), lu(nw, std::vector<double>(n)), lv(nw, std::vector<double>(n));
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
        const RadialJet& J = smp.jets[i];
        const double t = J.t, r = smp.r[i];
        const std::array<double, 3> x{r, 0.0, 0.0};
        const jet::Jet bu = jet::from_radial(J.u, r, 3);
        const jet::Jet bv = jet::from_radial(J.v, r, 3);
        for (std::size_t k = 0; k < nw; ++k) {
            double a = 0, b = 0, cc = 0, d = 0, e = 0;
            for (const jet::Jet& w : jet::family(words[k], bu, t, x)) {
                a += e0c_density_cartesian(w, t, x, 0.0);
                b += e1_density_cartesian(w, t, x);
                d += w.c[0] * w.c[0];
            }
            for (const jet::Jet& w : jet::family(words[k], bv, t, x)) {
                cc += e0c_density_cartesian(w, t, x, c);
                e += w.c[0] * w.c[0];
            }
            eu[k][i] = a;
            e1[k][i] = b;
            ev[k][i] = cc;
            lu[k][i] = d;
            lv[k][i] = e;
        }
    }
    std::vector<HighOrderRow> rows(nw);
    for (std::size_t k = 0; k < nw; ++k) {
        rows[k].word = words[k].label;
        rows[k].e0c_u = integrate(smp, eu[k]);
        rows[k].e1_u = integrate(smp, e1[k]);
        rows[k].e0c_v = integrate(smp, ev[k]);
        rows[k].l2_u = std::sqrt(std::max(integrate(smp, lu[k]), 0.0));
        rows[k].l2_v = std::sqrt(std::max(integrate(smp, lv[k]), 0.0));
    }
    return rows;
}

std::vector<HighOrderRow> high_order_energies(const FieldSampler& f, double s)
{
    return high_order_energies(sample_hyperboloid(f, s, 3), f.mass);
}

std::vector<EnergyReport> energy_reports(const FieldSampler& f, const std::vector<double>& s_grid,
                                         bool with_high_order)
{
    std::vector<EnergyReport> out(s_grid.size());
    for (std::size_t i = 0; i < s_grid.size(); ++i) {
        const HyperboloidSample smp = sample_hyperboloid(f, s_grid[i], with_high_order ? 3 : 1);
        EnergyReport& R = out[i];
        R.s = s_grid[i];
        const E0cResult e0 = energy_e0c(smp, Which::U, 0.0);
        R.e0 = e0.value;
        const E0cResult e0c = energy_e0c(smp, Which::V, f.mass);
        R.e0c = e0c.value;
        R.triple_form_disagreement = std::max(e0.max_rel_disagreement, e0c.max_rel_disagreement);
        const E0gcResult g = energy_e0gc(smp, f.couplings, f.mass);
        R.e0gc = g.value;
        R.kappa_ratio = g.ratio;
        R.M = g.M;
        const E1Result e1 = energy_e1(smp);
        R.e1 = e1.value;
        R.e1_terms = e1.terms;
        if (with_high_order) {
            R.high_order = high_order_energies(smp, f.mass);
            for (const auto& row : R.high_order) {
                R.e1_hi_u += row.e1_u;
                R.e0c_hi_v += row.e0c_v;
            }
        }
    }
    std::vector<double> s, e;
    for (const auto& R : out) {
        s.push_back(R.s);
        e.push_back(R.e1);
    }
    if (!s.empty()) {
        const auto f1 = energy_f1(s, e);
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i].f1 = f1[i];
    }
    return out;
}

}  // namespace wkg

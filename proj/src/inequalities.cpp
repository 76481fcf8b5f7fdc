#include "wkg/inequalities.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace wkg {

HardyResult check_hardy(const std::function<double(double)>& u, const std::function<double(double)>& ur, double R,
                        double alpha, int n)
{
    if (!(alpha < n))
        throw std::invalid_argument("check_hardy: need alpha < n");
    if (!(R > 0.0) || !std::isfinite(R))
        throw std::invalid_argument("check_hardy: support must be compact");
    boost::math::quadrature::tanh_sinh<double> q;
    const double e = n - 1.0;
    auto lhs = [&](double r) { const double x = u(r); return x * x * std::pow(r, e - alpha); };
    auto rhs = [&](double r) { const double x = ur(r); return x * x * std::pow(r, e + 2.0 - alpha); };
    const double a = q.integrate(lhs, 0.0, R);
    const double b = q.integrate(rhs, 0.0, R);
    HardyResult res;
    res.bound = 2.0 / (n - alpha);
    res.ratio = b > 0.0 ? std::sqrt(a / b) : 0.0;
    res.ok = res.ratio <= res.bound * (1.0 + 1e-3);
    return res;
}

HardyResult check_hardy(const RadialProfile& p, double alpha, int n)
{
    if (p.is_zero())
        return {0.0, 2.0 / (n - alpha), true};
    return check_hardy([&](double r) { return p.value(r); }, [&](double r) { return p.value(r, 1); }, p.radius(),
                       alpha, n);
}

RadialProfile random_profile(std::uint64_t seed)
{
    std::mt19937_64 g(seed);
    std::uniform_real_distribution<double> amp(-1.0, 1.0), rad(0.2, 1.0);
    std::uniform_int_distribution<int> pw(3, 8), cnt(1, 3);
    // sum of 1-3 bump/dbump shapes on a common radius
    const double R = rad(g);
    const int k = cnt(g);
    std::vector<double> c(16, 0.0);
    for (int i = 0; i < k; ++i) {
        const double A = amp(g);
        const int P = pw(g);
        const int D = static_cast<int>(g() % 2);
        double b = 1.0;
        for (int j = 0; j <= P; ++j) {
            c[j + D] += A * b * ((j % 2) ? -1.0 : 1.0);
            b = b * (P - j) / (j + 1.0);
        }
    }
    return RadialProfile::from_even_poly(c, R);
}

KSResult check_klainerman_sobolev(const FieldSampler& f, double s)
{
    const HyperboloidSample smp = sample_hyperboloid(f, s, 3);
    KSResult k;
    k.s = s;
    for (const RadialJet& J : smp.jets)
        k.sup_weighted = std::max(k.sup_weighted, std::pow(J.t, 1.5) * std::abs(J.u[0][0]));
    for (const auto& row : high_order_energies(smp, f.mass))
        k.norm_sum += row.l2_u;
    k.constant = k.norm_sum > 0.0 ? k.sup_weighted / k.norm_sum : 0.0;
    return k;
}

namespace {

void finish(SlackSeries& out, const std::vector<double>& base, const std::vector<double>& integral, double C)
{
    out.C = C;
    out.C_min = 0.0;
    out.min_slack = 0.0;
    for (std::size_t i = 0; i < out.s.size(); ++i) {
        out.rhs[i] = base[i] + C * integral[i];
        out.slack[i] = out.rhs[i] - out.lhs[i];
        if (i == 0)
            out.min_slack = out.slack[i];
        out.min_slack = std::min(out.min_slack, out.slack[i]);
        if (integral[i] > 0.0)
            out.C_min = std::max(out.C_min, (out.lhs[i] - base[i]) / integral[i]);
    }
}

}  // namespace

SlackSeries check_conformal_estimate(const FieldSampler& f, const std::vector<double>& s_grid, double C)
{
    const std::size_t n = s_grid.size();
    SlackSeries out;
    out.s = s_grid;
    out.lhs.resize(n);
    out.rhs.resize(n);
    out.slack.resize(n);
    std::vector<double> g(n), base(n);
    for (std::size_t i = 0; i < n; ++i) {
        const HyperboloidSample smp = sample_hyperboloid(f, s_grid[i], 1);
        out.lhs[i] = std::sqrt(std::max(energy_e1(smp).value, 0.0));
        std::vector<double> d(smp.r.size());
        for (std::size_t j = 0; j < d.size(); ++j) {
            const double b = box_u(smp.jets[j], f.couplings);
            d[j] = 4.0 * M_PI * smp.r[j] * smp.r[j] * (s_grid[i] / smp.jets[j].t) * b * b;
        }
        g[i] = std::sqrt(s_grid[i]) * std::sqrt(std::max(simpson(d, smp.h), 0.0));
    }
    const auto integral = cumulative_trapezoid(s_grid, g);
    for (std::size_t i = 0; i < n; ++i)
        base[i] = out.lhs[0];
    finish(out, base, integral, C);
    return out;
}

SlackSeries check_standard_estimate(const FieldSampler& f, const std::vector<double>& s_grid, Which which,
                                    double kappa)
{
    const std::size_t n = s_grid.size();
    SlackSeries out;
    out.s = s_grid;
    out.lhs.resize(n);
    out.rhs.resize(n);
    out.slack.resize(n);
    std::vector<double> g(n), base(n);
    for (std::size_t i = 0; i < n; ++i) {
        const HyperboloidSample smp = sample_hyperboloid(f, s_grid[i], 1);
        if (which == Which::U) {
            out.lhs[i] = std::sqrt(std::max(energy_e0c(smp, Which::U, 0.0).value, 0.0));
            std::vector<double> d(smp.r.size());
            for (std::size_t j = 0; j < d.size(); ++j) {
                const double b = box_u(smp.jets[j], f.couplings);
                d[j] = 4.0 * M_PI * smp.r[j] * smp.r[j] * b * b;
            }
            g[i] = std::sqrt(std::max(simpson(d, smp.h), 0.0));
        } else {
            const E0gcResult e = energy_e0gc(smp, f.couplings, f.mass, kappa);
            if (!e.kappa_ok)
                throw std::runtime_error("kappa equivalence fails at s=" + std::to_string(s_grid[i]));
            out.lhs[i] = std::sqrt(std::max(e.e0c, 0.0));
            g[i] = e.M;
        }
    }
    const auto integral = cumulative_trapezoid(s_grid, g);
    const double k2 = which == Which::U ? 1.0 : kappa * kappa;
    for (std::size_t i = 0; i < n; ++i)
        base[i] = k2 * out.lhs[0];
    finish(out, base, integral, k2);
    return out;
}

std::vector<MonitorSeries> decay_monitors(const FieldSampler& f, const std::vector<double>& s_grid, double delta,
                                          double s_fit_min)
{
    struct Def {
        const char* label;
        double expected;
        double (*fn)(const RadialJet&, double s);
    };
    static const Def defs[] = {
        {"wave_t_u", 0.0, [](const RadialJet& J, double) { return J.t * std::abs(J.u[0][0]); }},
        {"wave_du", -2.0, [](const RadialJet& J, double) { return std::hypot(J.u[1][0], J.u[0][1]); }},
        {"wave_u_weighted", -1.0,
         [](const RadialJet& J, double s) { return (J.t / s) * std::abs(J.u[0][0]); }},
        {"wave_frame_du", -2.0,
         [](const RadialJet& J, double s) {
             return (J.t / s) * std::abs(J.u[0][1] + (J.r / J.t) * J.u[1][0]);
         }},
        {"kg_t32_v", 0.0, [](const RadialJet& J, double) { return std::pow(J.t, 1.5) * std::abs(J.v[0][0]); }},
        {"kg_v_weighted", -1.5,
         [](const RadialJet& J, double s) { return std::pow(J.t / s, 1.5) * std::abs(J.v[0][0]); }},
        {"kg_dv_weighted", -1.5,
         [](const RadialJet& J, double s) { return std::pow(J.t / s, 0.5) * std::hypot(J.v[1][0], J.v[0][1]); }},
    };
    const std::size_t nd = std::size(defs);
    std::vector<MonitorSeries> out(nd);
    for (std::size_t k = 0; k < nd; ++k) {
        out[k].label = defs[k].label;
        out[k].axis = "s";
        out[k].expected = defs[k].expected + (defs[k].expected < 0.0 ? delta : 0.0);
    }
    for (double s : s_grid) {
        const HyperboloidSample smp = sample_hyperboloid(f, s, 1);
        for (std::size_t k = 0; k < nd; ++k) {
            double m = 0.0;
            for (const RadialJet& J : smp.jets)
                m = std::max(m, defs[k].fn(J, s));
            out[k].x.push_back(s);
            out[k].y.push_back(m);
        }
    }
    for (auto& m : out) {
        m.fit = loglog_fit(m.x, m.y, s_fit_min);
        m.flagged = m.fit.n >= 2 && m.fit.slope > m.expected + 0.15;
    }
    return out;
}

std::vector<MonitorSeries> slice_decay_monitors(const FieldSampler& f, const std::vector<double>& t_grid,
                                                double t_fit_min)
{
    MonitorSeries w{"wave_t_u_slice", "t", {}, {}, 0.0, {}, false};
    MonitorSeries v{"kg_v_slice", "t", {}, {}, -1.5, {}, false};
    const double h = f.spacing();
    for (double t : t_grid) {
        const int J = static_cast<int>(std::floor((t - 1.0) / h));
        double mu = 0.0, mv = 0.0;
        for (int j = 0; j <= J; ++j) {
            const RadialJet q = f.jet(t, j * h, 0);
            mu = std::max(mu, std::abs(q.u[0][0]));
            mv = std::max(mv, std::abs(q.v[0][0]));
        }
        w.x.push_back(t);
        w.y.push_back(t * mu);
        v.x.push_back(t);
        v.y.push_back(mv);
    }
    for (MonitorSeries* m : {&w, &v}) {
        m->fit = loglog_fit(m->x, m->y, t_fit_min);
        m->flagged = m->fit.n >= 2 && m->fit.slope > m->expected + 0.15;
    }
    return {w, v};
}

BootstrapResult bootstrap_monitor(const std::vector<EnergyReport>& reports, double c1eps, double delta)
{
    BootstrapResult b;
    for (const auto& R : reports) {
        const double val = std::sqrt(std::max(R.e1_hi_u, 0.0)) + 4.0 * std::sqrt(std::max(R.e0c_hi_v, 0.0));
        const double thr = c1eps * std::pow(R.s, delta);
        b.s.push_back(R.s);
        b.value.push_back(val);
        b.threshold.push_back(thr);
        if (val > thr && b.pass) {
            b.pass = false;
            b.first_failure = R.s;
        }
    }
    return b;
}

}  // namespace wkg

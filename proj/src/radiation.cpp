#include "wkg/radiation.hpp"
#include "wkg/energies.hpp"
#include "wkg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace wkg {

const char* to_string(RadiationMethod m)
{
    return m == RadiationMethod::NullRay ? "null-ray" : "hyperbola";
}

namespace {

struct TransportPoint {
    double U, S, D;
};

TransportPoint transport_point(const FieldSampler& f, double t, double r)
{
    const RadialJet J = f.jet(t, r, 2);
    const auto& u = J.u;
    const double box = box_u(J, f.couplings);
    const double q = r / t;
    const double s2 = (t - r) * (t + r);
    const double ut = u[1][0], ur = u[0][1], urr = u[0][2], utr = u[1][1];
    double lap, two_d1_over_r;
    if (r > 1e-8) {
        lap = urr + 2.0 * ur / r;
        two_d1_over_r = 2.0 * (ur + q * ut) / r;
    } else {
        lap = 3.0 * urr;
        two_d1_over_r = 2.0 * urr + 2.0 * ut / t;
    }
    const double utt = lap + box;
    const double d2 = urr + 2.0 * q * utr + q * q * utt + s2 / (t * t * t) * ut;
    const double w = t * t * t / (t * t + r * r);
    return {t * ut, w * box, w * (d2 + two_d1_over_r)};
}

// cumulative Simpson on a uniform grid; odd nodes close with a trapezoid-corrected step
std::vector<double> cumulative_simpson(const std::vector<double>& g, double h)
{
    std::vector<double> I(g.size(), 0.0);
    for (std::size_t i = 2; i < g.size(); i += 2)
        I[i] = I[i - 2] + h / 3.0 * (g[i - 2] + 4.0 * g[i - 1] + g[i]);
    for (std::size_t i = 1; i < g.size(); i += 2) {
        // quadratic through i-1, i, i+1 (or i-2, i-1, i at the end)
        if (i + 1 < g.size())
            I[i] = I[i - 1] + h / 12.0 * (5.0 * g[i - 1] + 8.0 * g[i] - g[i + 1]);
        else
            I[i] = I[i - 1] + h / 12.0 * (-g[i - 2] + 8.0 * g[i - 1] + 5.0 * g[i]);
    }
    return I;
}

}  // namespace

TransportState transport_terms(const FieldSampler& f, const geom::HyperbolaCurve& curve,
                               const std::vector<double>& taus)
{
    TransportState st;
    st.curve = curve;
    for (double tau : taus) {
        if (tau < f.t_min() - 1e-12 || tau > f.t_max() + 1e-12) {
            st.truncated = true;
            break;
        }
        const double r = geom::curve_position(curve, tau);
        const TransportPoint p = transport_point(f, tau, r);
        st.tau.push_back(tau);
        st.U.push_back(p.U);
        st.S_w.push_back(p.S);
        st.Delta_w.push_back(p.D);
        st.P.push_back(geom::friction_along(curve, tau));
    }
    st.friction.assign(st.tau.size(), 0.0);
    for (std::size_t i = 1; i < st.tau.size(); ++i)
        st.friction[i] = st.friction[i - 1] + geom::friction_integral(curve, st.tau[i - 1], st.tau[i]);
    return st;
}

TransportState transport_terms(const FieldSampler& f, const geom::HyperbolaCurve& curve, double dtau)
{
    const double t0 = f.t_min();
    const int n = static_cast<int>(std::floor((f.t_max() - t0) / dtau + 1e-9));
    std::vector<double> taus(n + 1);
    for (int i = 0; i <= n; ++i)
        taus[i] = t0 + i * dtau;
    return transport_terms(f, curve, taus);
}

TransportCheck transport_check(const FieldSampler& f, const geom::HyperbolaCurve& curve, double dtau)
{
    const TransportState st = transport_terms(f, curve, dtau);
    TransportCheck c;
    c.truncated = st.truncated;
    const std::size_t n = st.tau.size();
    if (n < 5)
        throw std::invalid_argument("transport_check: curve too short");
    const double i12 = 1.0 / (12.0 * dtau);
    for (std::size_t i = 2; i + 2 < n; ++i) {
        const double Up = (st.U[i - 2] - 8.0 * st.U[i - 1] + 8.0 * st.U[i + 1] - st.U[i + 2]) * i12;
        const double res = Up + st.P[i] * st.U[i] - st.S_w[i] - st.Delta_w[i];
        c.max_residual = std::max(c.max_residual, std::abs(res));
        c.scale = std::max(c.scale, std::abs(Up));
    }
    return c;
}

double richardson(const std::vector<double>& x, const std::vector<double>& y, double* correction)
{
    const std::size_t n = x.size();
    if (n == 0 || y.size() != n)
        throw std::invalid_argument("richardson: bad input");
    // Neville tableau at 0; keep the diagonal
    std::vector<double> p = y;
    double prev = y.back();
    double last = y.back();
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = 0; i + k < n; ++i)
            p[i] = (x[i + k] * p[i] - x[i] * p[i + 1]) / (x[i + k] - x[i]);
        prev = last;
        last = p[0];
    }
    if (correction)
        *correction = n > 1 ? std::abs(last - prev) : 0.0;
    return last;
}

std::vector<double> default_null_radii(const FieldSampler& f, double mu, int count)
{
    const double top = f.t_max() - mu - 1e-9;
    std::vector<double> rs;
    for (int k = count - 1; k >= 0; --k) {
        const double r = top / std::pow(2.0, k);
        if (r + mu >= f.t_min())
            rs.push_back(r);
    }
    return rs;
}

namespace {

void combine_resolution(RadiationEstimate& fine, const RadiationEstimate& coarse)
{
    const double d = (fine.value - coarse.value) / 3.0;
    fine.value += d;
    fine.resolution_correction = std::abs(d);
    fine.error_bar += std::abs(d);
    fine.flagged = fine.flagged || coarse.flagged;
}

}  // namespace

RadiationEstimate radiation_null(const FieldSampler& f, double mu, const std::vector<double>& rs,
                                 const geom::Vec3& omega, const FieldSampler* coarse)
{
    if (rs.empty())
        throw std::invalid_argument("radiation_null: empty r sequence");
    for (std::size_t i = 1; i < rs.size(); ++i)
        if (!(rs[i] > rs[i - 1]))
            throw std::invalid_argument("radiation_null: r sequence must be increasing");
    RadiationEstimate e;
    e.mu = mu;
    e.omega = omega;
    e.method = RadiationMethod::NullRay;
    for (double r : rs) {
        const RadialJet J = f.jet(r + mu, r, 1);
        e.x.push_back(1.0 / r);
        e.raw.push_back(r * J.u[1][0]);
    }
    e.value = richardson(e.x, e.raw, &e.error_bar);
    for (std::size_t i = 2; i < e.raw.size(); ++i)
        if (std::abs(e.raw[i] - e.raw[i - 1]) > std::abs(e.raw[i - 1] - e.raw[i - 2]) + 1e-15)
            e.cauchy = false;
    if (coarse)
        combine_resolution(e, radiation_null(*coarse, mu, rs, omega));
    return e;
}

double integrating_factor_constant(const geom::HyperbolaCurve& curve, double tau0, double tau1, int samples)
{
    double C = 0.0;
    for (int i = 0; i <= samples; ++i) {
        const double tau = tau0 * std::pow(tau1 / tau0, static_cast<double>(i) / samples);
        const double I = geom::friction_integral(curve, tau, std::numeric_limits<double>::infinity());
        C = std::max(C, tau * I / curve.c0);
    }
    return C;
}

RadiationEstimate radiation_hyperbola(const FieldSampler& f, const geom::HyperbolaCurve& curve,
                                      const HyperbolaOptions& opt, const FieldSampler* coarse)
{
    RadiationEstimate e;
    e.mu = 0.5 * curve.c0;
    e.omega = curve.omega;
    e.method = RadiationMethod::Hyperbola;
    const double t0 = f.t_min();
    int n = static_cast<int>(std::floor((f.t_max() - 1e-9 - t0) / opt.dtau));
    n -= n % 2;
    if (n < 8)
        throw std::invalid_argument("radiation_hyperbola: horizon too short");
    std::vector<double> taus(n + 1);
    for (int i = 0; i <= n; ++i)
        taus[i] = t0 + i * opt.dtau;
    const TransportState st = transport_terms(f, curve, taus);
    e.flagged = st.truncated;
    const std::size_t m = st.tau.size();

    // U(T) = e^{-F(T)} [U(t0) + int S e^{F}],  F = int_{t0} P
    std::vector<double> g(m);
    for (std::size_t i = 0; i < m; ++i)
        g[i] = (st.S_w[i] + st.Delta_w[i]) * std::exp(st.friction[i]);
    const std::vector<double> G = cumulative_simpson(g, opt.dtau);
    const double T = st.tau.back();
    for (double frac : opt.horizon_fractions) {
        std::size_t i = static_cast<std::size_t>(std::lround((frac * T - t0) / opt.dtau));
        i = std::min(i - i % 2, m - 1);
        const double Ui = std::exp(-st.friction[i]) * (st.U[0] + G[i]);
        const double tail = geom::friction_integral(curve, st.tau[i], std::numeric_limits<double>::infinity());
        e.x.push_back(1.0 / st.tau[i]);
        e.raw.push_back(Ui * std::exp(-tail));
    }
    e.value = richardson(e.x, e.raw, &e.error_bar);
    const double Uint = std::exp(-st.friction[m - 1]) * (st.U[0] + G[m - 1]);
    e.error_bar += std::abs(Uint - st.U[m - 1]);
    // the tail is only trusted once the curve sits well inside the wave zone
    if (T < 4.0 * curve.c0)
        e.flagged = true;
    for (std::size_t i = 2; i < e.raw.size(); ++i)
        if (std::abs(e.raw[i] - e.raw[i - 1]) > std::abs(e.raw[i - 1] - e.raw[i - 2]) + 1e-15)
            e.cauchy = false;
    if (coarse)
        combine_resolution(e, radiation_hyperbola(*coarse, curve, opt));
    return e;
}

AnalyticSampler dalembert_sampler(const RadialProfile& u0, const RadialProfile& u1, double t_max, double spacing)
{
    auto oracle = std::make_shared<DalembertOracle>(u0, u1);
    AnalyticSampler smp(
        [oracle](double t, double r, int order, RadialJet& J) { oracle->jet(t, r, order, J.u); }, 2.0, t_max,
        spacing);
    smp.mass = 1.0;
    return smp;
}

ExcessiveDecay excessive_decay_check(const FieldSampler& f, const std::vector<double>& s_grid, double eta,
                                     double delta, double sigma, double s_fit_min, double bound_tol)
{
    ExcessiveDecay out;
    out.sigma = sigma;
    out.all_zero = true;
    for (double s : s_grid) {
        const HyperboloidSample smp = sample_hyperboloid(f, s, 1);
        double a = 0.0, b = 0.0;
        for (std::size_t k = 0; k < smp.r.size(); ++k) {
            const double r = smp.r[k];
            const double t = std::sqrt(s * s + r * r);
            if (r < eta * t)
                continue;
            const double ut = std::abs(smp.jets[k].u[1][0]);
            a = std::max(a, ut * std::pow(t, 0.5 + delta) * s);
            b = std::max(b, ut * std::pow(t, 2.0 - delta));
        }
        const double e0 = energy_e0c(smp, Which::U, 0.0).value;
        out.s.push_back(s);
        out.sup_weak.push_back(a);
        out.sup_strong.push_back(b);
        out.e0.push_back(e0);
        out.weighted_e0.push_back(std::pow(s, 2.0 * sigma) * e0);
        if (a != 0.0 || b != 0.0 || e0 != 0.0)
            out.all_zero = false;
    }
    if (out.all_zero) {
        out.strong_bounded = true;
        out.weighted_decays = true;
        return out;
    }
    out.slope_weak = loglog_fit(out.s, out.sup_weak, s_fit_min).slope;
    out.slope_strong = loglog_fit(out.s, out.sup_strong, s_fit_min).slope;
    out.slope_weighted = loglog_fit(out.s, out.weighted_e0, s_fit_min).slope;
    out.strong_bounded = out.slope_strong <= bound_tol;
    out.weighted_decays = out.slope_weighted < 0.0;
    return out;
}

std::vector<RigidityRow> rigidity_experiment(const std::vector<RigidityInput>& runs, const RigidityOptions& opt)
{
    std::vector<RigidityRow> rows;
    for (const RigidityInput& in : runs) {
        if (!in.sampler)
            throw std::invalid_argument("rigidity_experiment: missing sampler for " + in.label);
        const FieldSampler& f = *in.sampler;
        RigidityRow row;
        row.label = in.label;
        row.e0_initial = energy_e0c(sample_hyperboloid(f, 2.0, 1), Which::U, 0.0).value;
        const double s_top = opt.s_max > 0.0 ? std::min(opt.s_max, covered_s_max(f)) : covered_s_max(f);
        if (row.e0_initial > 0.0) {
            row.comparability_min = std::numeric_limits<double>::infinity();
            row.comparability_max = 0.0;
            for (double s = 2.0 + opt.ds; s <= s_top + 1e-12; s += opt.ds) {
                const double q = energy_e0c(sample_hyperboloid(f, s, 1), Which::U, 0.0).value / row.e0_initial;
                row.comparability_min = std::min(row.comparability_min, q);
                row.comparability_max = std::max(row.comparability_max, q);
            }
            if (row.comparability_max == 0.0)
                row.comparability_min = row.comparability_max = 1.0;
            row.comparability_C = std::max(row.comparability_max, 1.0 / row.comparability_min);
        }
        for (double mu : opt.mu_fan) {
            row.fan.push_back(radiation_null(f, mu, default_null_radii(f, mu), {1.0, 0.0, 0.0}, in.coarse));
            row.radiation_norm = std::max(row.radiation_norm, std::abs(row.fan.back().value));
        }
        for (double c0 : opt.c0_fan) {
            row.fan.push_back(radiation_hyperbola(f, geom::HyperbolaCurve{c0, {1.0, 0.0, 0.0}}, {}, in.coarse));
            row.radiation_norm = std::max(row.radiation_norm, std::abs(row.fan.back().value));
        }
        row.floor = 10.0 * in.dr * in.dr * std::sqrt(row.e0_initial);
        row.below_floor = row.radiation_norm <= row.floor;
        row.consistent = !row.below_floor || row.e0_initial == 0.0;
        if (in.free_wave) {
            // radiation of data on t = 2 lives in mu in [2 - R, 2 + R]
            const int n = 4000;
            const double a = 0.0, b = 4.0;
            std::vector<double> vals(n + 1);
            bool nonzero = false;
            for (int i = 0; i <= n; ++i) {
                const double R = free_wave_radiation(in.u0, in.u1, a + (b - a) * i / n);
                vals[i] = R * R;
                nonzero = nonzero || R != 0.0;
            }
            row.oracle_l2 = simpson(vals, (b - a) / n);
            row.oracle_ratio = row.e0_initial > 0.0 ? row.oracle_l2 / row.e0_initial : 0.0;
            const bool zero_data = in.u0.is_zero() && in.u1.is_zero();
            row.oracle_equivalence = nonzero != zero_data;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace wkg

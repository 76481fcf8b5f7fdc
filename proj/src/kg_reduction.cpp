#include "wkg/kg_reduction.hpp"
#include "wkg/geometry.hpp"
#include "wkg/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>

namespace wkg {

namespace {

using State = std::array<double, 2>;

State osc_rhs(const OscillatorProblem& p, double s, const State& y)
{
    const double q = p.q(s);
    if (std::abs(q) > 0.5)
        throw std::invalid_argument("oscillator: |q| > 1/2 at s=" + std::to_string(s));
    return {y[1], p.f(s) - p.c * p.c * (1.0 + q) * y[0]};
}

State rk4(const OscillatorProblem& p, double s, const State& y, double h)
{
    const State k1 = osc_rhs(p, s, y);
    const State k2 = osc_rhs(p, s + 0.5 * h, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
    const State k3 = osc_rhs(p, s + 0.5 * h, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
    const State k4 = osc_rhs(p, s + h, {y[0] + h * k3[0], y[1] + h * k3[1]});
    return {y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
}

}  // namespace

Trajectory integrate_oscillator(const OscillatorProblem& p, int n, double tol)
{
    if (!(p.s1 > p.s0) || n < 1)
        throw std::invalid_argument("oscillator: empty span");
    Trajectory tr;
    State y{p.v0, p.v0p};
    double s = p.s0;
    double h = std::min(0.01, (p.s1 - p.s0) / n) / std::max(1.0, p.c);
    tr.s.push_back(s);
    tr.v.push_back(y[0]);
    tr.vp.push_back(y[1]);
    osc_rhs(p, s, y);
    for (int i = 1; i <= n; ++i) {
        const double target = p.s0 + (p.s1 - p.s0) * i / n;
        while (s < target) {
            const bool last = s + h >= target;
            const double hh = last ? target - s : h;
            const State full = rk4(p, s, y, hh);
            const State half = rk4(p, s + 0.5 * hh, rk4(p, s, y, 0.5 * hh), 0.5 * hh);
            const double err = std::max(std::abs(full[0] - half[0]), std::abs(full[1] - half[1])) / 15.0;
            const double scale = tol * (1.0 + std::max(std::abs(half[0]), std::abs(half[1])));
            if (err <= scale || hh < 1e-12) {
                s = last ? target : s + hh;
                // local extrapolation
                y = {half[0] + (half[0] - full[0]) / 15.0, half[1] + (half[1] - full[1]) / 15.0};
            }
            const double fac = err > 0.0 ? 0.9 * std::pow(scale / err, 0.2) : 2.0;
            if (!last || err > scale)
                h = hh * std::clamp(fac, 0.2, 2.0);
        }
        tr.s.push_back(target);
        tr.v.push_back(y[0]);
        tr.vp.push_back(y[1]);
    }
    return tr;
}

OscillatorProblem random_oscillator(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    OscillatorProblem p;
    p.c = 0.3 + 2.7 * U(rng);
    const double a = 0.45 * U(rng), w = 0.2 + 3.0 * U(rng), ph = 6.283185307179586 * U(rng);
    const double b = U(rng) < 0.25 ? 0.0 : 2.0 * U(rng) - 1.0;
    const double wf = 0.1 + 2.0 * U(rng);
    p.q = [a, w, ph](double s) { return a * std::sin(w * s + ph) / (1.0 + 0.1 * s); };
    p.qp = [a, w, ph](double s) {
        const double d = 1.0 + 0.1 * s;
        return a * (w * std::cos(w * s + ph) / d - 0.1 * std::sin(w * s + ph) / (d * d));
    };
    p.f = [b, wf](double s) { return b * std::cos(wf * s) * std::pow(s, -1.5); };
    p.v0 = 2.0 * U(rng) - 1.0;
    p.v0p = 2.0 * U(rng) - 1.0;
    p.s0 = 2.0;
    p.s1 = 2.0 + 20.0 + 20.0 * U(rng);
    return p;
}

double diagonalization_residual(double c, double q)
{
    using C = std::complex<double>;
    const C I(0.0, 1.0);
    const C a = c * I * std::sqrt(1.0 + q);
    Eigen::Matrix2cd P, Q, Pinv, A;
    P << -a, a, 1.0, 1.0;
    Q << a, 0.0, 0.0, -a;
    Pinv << -1.0 / (2.0 * a), 0.5, 1.0 / (2.0 * a), 0.5;
    A << 0.0, c * c * (1.0 + q), -1.0, 0.0;
    const double r1 = (P * Q * Pinv - A).cwiseAbs().maxCoeff();
    const double r2 = (P * Pinv - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    return std::max(r1, r2) / std::max(1.0, c * c);
}

LemmaResult check_ode_lemma(const OscillatorProblem& p, const Trajectory& tr)
{
    LemmaResult L;
    const std::size_t n = tr.s.size();
    const double c = p.c;
    std::vector<double> g1(n), g2(n), Q(n), lit(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = tr.s[i], v = tr.v[i], vp = tr.vp[i];
        const double q = p.q(s), qp = p.qp(s), f = p.f(s);
        g1[i] = std::abs(f) / std::sqrt(1.0 + q) + std::abs(qp * vp) / (2.0 * std::pow(1.0 + q, 1.5));
        g2[i] = std::abs(f) + std::abs(qp * vp);
        Q[i] = std::sqrt(vp * vp / (1.0 + q) + c * c * v * v);
        lit[i] = std::abs(vp) + c * std::abs(v);
        const double nrm = std::sqrt(vp * vp + c * c * v * v);
        if (nrm > 0.0)
            L.equivalence_factor = std::max(L.equivalence_factor, lit[i] / nrm);
        L.diagonalization_residual = std::max(L.diagonalization_residual, diagonalization_residual(c, q));

        using C = std::complex<double>;
        const C a = c * C(0.0, 1.0) * std::sqrt(1.0 + q);
        Eigen::Matrix2cd P, Qm, Pinv;
        P << -a, a, 1.0, 1.0;
        Qm << a, 0.0, 0.0, -a;
        Pinv << -1.0 / (2.0 * a), 0.5, 1.0 / (2.0 * a), 0.5;
        Eigen::Vector2cd V(vp, v), dV(f - c * c * (1.0 + q) * v, vp), F(f, 0.0);
        const double res = (dV + P * Qm * Pinv * V - F).cwiseAbs().maxCoeff();
        L.system_residual = std::max(L.system_residual, res / std::max(1.0, V.cwiseAbs().maxCoeff() * c * c));
    }
    const auto I1 = cumulative_trapezoid(tr.s, g1);
    const auto I2 = cumulative_trapezoid(tr.s, g2);
    L.quadratic_min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double slack = Q[0] + I1[i] - Q[i];
        L.quadratic_min_slack = std::min(L.quadratic_min_slack, slack);
        if (I2[i] > 0.0)
            L.C_quadratic = std::max(L.C_quadratic, (Q[i] - Q[0]) / I2[i]);
        const double excess = lit[i] - lit[0];
        if (excess > 1e-12 * std::max(1.0, lit[0])) {
            if (I2[i] > 0.0)
                L.C_literal = std::max(L.C_literal, excess * c / I2[i]);
            else
                L.C_literal = std::numeric_limits<double>::infinity();
        }
    }
    L.quadratic_ok = L.quadratic_min_slack >= -1e-9 * std::max(1.0, Q[0]);
    return L;
}

double reduced_Hbar(const RadialJet& J, const Couplings& cp)
{
    const double t = J.t, r = J.r;
    const double s2 = (t - r) * (t + r);
    const double H00 = -J.u[0][0] * (cp.p00 + cp.pd * r * r / (t * t));
    return t * t / s2 * H00;
}

double L_chain(const RadialJet& J, int is_v)
{
    const auto& F = is_v ? J.v : J.u;
    const double s = std::sqrt((J.t - J.r) * (J.t + J.r));
    return (J.t / s) * F[1][0] + (J.r / s) * F[0][1];
}

double L_frame(const RadialJet& J, int is_v)
{
    const auto& F = is_v ? J.v : J.u;
    const double t = J.t, r = J.r;
    const double s = std::sqrt((t - r) * (t + r));
    return (s / t) * F[1][0] + (r / s) * (F[0][1] + (r / t) * F[1][0]);
}

double S2_source(const RadialJet& J, const Couplings& cp, double c)
{
    const double t = J.t, r = J.r;
    const double s2 = (t - r) * (t + r);
    const double q = r / t;
    const double v = J.v[0][0], vt = J.v[1][0], vr = J.v[0][1];
    const double vtt = J.v[2][0], vtr = J.v[1][1], vrr = J.v[0][2];
    const double dr = vr + q * vt;
    const double drr = vrr + 2.0 * q * vtr + q * q * vtt + s2 / (t * t * t) * vt;
    const double lap_bar = r > 0.0 ? drr + 2.0 / r * dr : 3.0 * (vrr + vt / t);
    const double lap = r > 0.0 ? vrr + 2.0 / r * vr : 3.0 * vrr;
    const double H00 = -J.u[0][0] * (cp.p00 + cp.pd * q * q);
    const double Hb = reduced_Hbar(J, cp);
    const double Hrest = -cp.pd * J.u[0][0] * (lap - q * q * vtt);
    const double Z = 2.0 * q * (vtr + q * vtt - r / (t * t) * vt) + 3.0 / t * vt;
    const double inv = 1.0 / (1.0 + Hb);
    return (r * r * drr + 3.0 * r * dr + 0.75 * v) / s2 + (c * c * (1.0 - Hb) - c * c * inv) * v + (1.0 - inv) * Z +
           inv * (H00 * r * r / (s2 * t) * vt - Hrest + lap_bar);
}

RayProfile reduction_residual(const FieldSampler& f, double beta, double dlambda, double lambda_max)
{
    if (!(beta >= 0.0) || !(beta < 1.0))
        throw std::invalid_argument("reduction_residual: need 0 <= beta < 1");
    RayProfile R;
    R.beta = beta;
    const double g = 1.0 / std::sqrt(1.0 - beta * beta);  // t = g lambda
    const double lmax_cov = (f.t_max() - 1e-9) / g;
    const double lmax = lambda_max > 0.0 ? std::min(lambda_max, lmax_cov) : lmax_cov;
    // start where the ray meets H_2 or the cone boundary
    const double t_probe = 10.0;
    double l0 = 2.0;
    if (geom::in_cone(t_probe, beta * t_probe))
        l0 = geom::lambda0(t_probe, beta * t_probe, 2.0);
    else
        l0 = std::sqrt((1.0 + beta) / (1.0 - beta));
    const int n = static_cast<int>(std::floor((lmax - l0) / dlambda));
    if (n < 8)
        throw std::invalid_argument("reduction_residual: insufficient lambda resolution");
    const Couplings& cp = f.couplings;
    std::vector<double> src(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double l = l0 + i * dlambda;
        const double t = g * l, r = beta * g * l;
        const RadialJet J = f.jet(t, r, 2);
        R.lambda.push_back(l);
        R.w.push_back(std::pow(l, 1.5) * J.v[0][0]);
        R.wp.push_back(1.5 * std::sqrt(l) * J.v[0][0] + std::pow(l, 1.5) * L_chain(J));
        const double Hb = reduced_Hbar(J, cp);
        src[i] = f.mass * f.mass * (1.0 - Hb) * R.w.back() - std::pow(l, 1.5) * S2_source(J, cp, f.mass);
    }
    R.residual.assign(n + 1, 0.0);
    const double ih2 = 1.0 / (12.0 * dlambda * dlambda);
    for (int i = 2; i + 2 <= n; ++i) {
        const double wpp =
            (-R.w[i - 2] + 16.0 * R.w[i - 1] - 30.0 * R.w[i] + 16.0 * R.w[i + 1] - R.w[i + 2]) * ih2;
        R.residual[i] = wpp + src[i];
        R.max_residual = std::max(R.max_residual, std::abs(R.residual[i]));
        R.scale = std::max(R.scale, std::abs(wpp));
    }
    return R;
}

SharpDecay sharp_decay_check(const FieldSampler& f, const std::vector<double>& betas, double ds, double s_fit_min)
{
    SharpDecay out;
    out.beta = betas;
    std::vector<double> grid_s, grid_max;
    const double smax_all = f.t_max();
    for (double s = 2.0; s <= smax_all; s += ds) {
        grid_s.push_back(s);
        grid_max.push_back(0.0);
    }
    for (double b : betas) {
        const double g = 1.0 / std::sqrt(1.0 - b * b);
        std::vector<double> ss, vals;
        for (std::size_t k = 0; k < grid_s.size(); ++k) {
            const double s = grid_s[k];
            const double t = g * s, r = b * t;
            if (t > f.t_max())
                break;
            const RadialJet J = f.jet(t, r, 1);
            const double val = std::pow(s, 1.5) * ((s / t) * std::abs(L_chain(J)) + std::abs(J.v[0][0]));
            ss.push_back(s);
            vals.push_back(val);
            grid_max[k] = std::max(grid_max[k], val);
            out.sup = std::max(out.sup, val);
        }
        out.s.push_back(ss);
        out.value.push_back(vals);
    }
    // running envelope removes the oscillation before fitting
    std::vector<double> env(grid_max.size());
    double m = 0.0;
    for (std::size_t k = grid_max.size(); k-- > 0;) {
        m = std::max(m, grid_max[k]);
        env[k] = m;
    }
    out.slope = loglog_fit(grid_s, env, s_fit_min).slope;
    return out;
}

}  // namespace wkg

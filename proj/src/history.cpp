#include "wkg/history.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wkg {

double box_u(const RadialJet& j, const Couplings& c) { return c.b00 * j.u[1][0] * j.v[1][0] + c.bd * j.u[0][1] * j.v[0][1]; }

double box_u_t(const RadialJet& j, const Couplings& c)
{
    return c.b00 * (j.u[2][0] * j.v[1][0] + j.u[1][0] * j.v[2][0]) +
           c.bd * (j.u[1][1] * j.v[0][1] + j.u[0][1] * j.v[1][1]);
}

HistorySampler::HistorySampler(const SliceHistory& h) : hist_(h)
{
    couplings = h.scenario.couplings;
    mass = h.scenario.c;
    if (h.size() < 4)
        throw std::invalid_argument("HistorySampler: need at least 4 slices");
}

void HistorySampler::slice_jet(int k, int j, int q, SliceJet& o) const
{
    if (j < 0) {
        slice_jet(k, -j, q, o);
        for (int a = 0; a < 4; ++a)
            for (int b = 1; b < 4; b += 2) {
                o.u[a][b] = -o.u[a][b];
                o.v[a][b] = -o.v[a][b];
            }
        return;
    }
    const double h = hist_.h;
    const double r = j * h;
    auto F = [&](Field f, int i) { return hist_.at(k, f, i < 0 ? -i : i); };
    auto D1 = [&](Field f) { return (F(f, j + 1) - F(f, j - 1)) / (2.0 * h); };
    auto D2 = [&](Field f) { return (F(f, j + 1) - 2.0 * F(f, j) + F(f, j - 1)) / (h * h); };
    auto D3 = [&](Field f) {
        return (F(f, j + 2) - 2.0 * F(f, j + 1) + 2.0 * F(f, j - 1) - F(f, j - 2)) / (2.0 * h * h * h);
    };
    auto lap = [&](Field f) { return j == 0 ? 3.0 * D2(f) : D2(f) + 2.0 * D1(f) / r; };

    for (auto* d : {&o.u, &o.v})
        for (auto& row : *d)
            for (double& x : row)
                x = 0.0;
    o.u[0][0] = F(Field::U, j);
    o.v[0][0] = F(Field::V, j);
    o.u[1][0] = F(Field::UT, j);
    o.v[1][0] = F(Field::VT, j);
    if (q >= 1) {
        o.u[0][1] = D1(Field::U);
        o.v[0][1] = D1(Field::V);
    }
    if (q >= 2) {
        o.u[0][2] = D2(Field::U);
        o.v[0][2] = D2(Field::V);
        o.u[1][1] = D1(Field::UT);
        o.v[1][1] = D1(Field::VT);
        o.u[2][0] = F(Field::UTT, j);
        o.v[2][0] = F(Field::VTT, j);
    }
    if (q >= 3) {
        o.u[0][3] = D3(Field::U);
        o.v[0][3] = D3(Field::V);
        o.u[1][2] = D2(Field::UT);
        o.v[1][2] = D2(Field::VT);
        o.u[2][1] = D1(Field::UTT);
        o.v[2][1] = D1(Field::VTT);
        const Couplings& c = couplings;
        const double u = o.u[0][0], ut = o.u[1][0], ur = o.u[0][1], utt = o.u[2][0], utr = o.u[1][1];
        const double v = o.v[0][0], vt = o.v[1][0], vr = o.v[0][1], vtt = o.v[2][0], vtr = o.v[1][1];
        o.u[3][0] = lap(Field::UT) + c.b00 * (utt * vt + ut * vtt) + c.bd * (utr * vr + ur * vtr);
        const double c2 = mass * mass;
        const double den = 1.0 - c.p00 * u;
        const double lv = lap(Field::V), lvt = lap(Field::VT);
        o.v[3][0] = (c.pd * ut * lv + (1.0 + c.pd * u) * lvt - c2 * vt) / den +
                    ((1.0 + c.pd * u) * lv - c2 * v) * c.p00 * ut / (den * den);
    }
}

void HistorySampler::spatial_jet(int k, double r, int q, SliceJet& o) const
{
    const double x = r / hist_.h;
    const int j0 = static_cast<int>(std::floor(x));
    const double f = x - j0;
    if (f < 1e-12 || f > 1.0 - 1e-12) {
        slice_jet(k, f < 0.5 ? j0 : j0 + 1, q, o);
        return;
    }
    // cubic Lagrange through j0-1 .. j0+2
    const double w[4] = {-f * (f - 1.0) * (f - 2.0) / 6.0, (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0,
                         -(f + 1.0) * f * (f - 2.0) / 2.0, (f + 1.0) * f * (f - 1.0) / 6.0};
    for (auto* d : {&o.u, &o.v})
        for (auto& row : *d)
            for (double& y : row)
                y = 0.0;
    SliceJet s;
    for (int i = 0; i < 4; ++i) {
        slice_jet(k, j0 - 1 + i, q, s);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b + a <= 3; ++b) {
                o.u[a][b] += w[i] * s.u[a][b];
                o.v[a][b] += w[i] * s.v[a][b];
            }
    }
}

RadialJet HistorySampler::jet(double t, double r, int order) const
{
    const int K = hist_.size();
    const double dt = hist_.dt;
    const double tol = 1e-9 * dt;
    if (t < hist_.t0 - tol || t > hist_.t_end() + tol)
        throw std::out_of_range("HistorySampler: t=" + std::to_string(t) + " outside stored range");
    if (r < 0.0 || r > (hist_.n_nodes - 3) * hist_.h)
        throw std::out_of_range("HistorySampler: r outside grid");
    double x = (t - hist_.t0) / dt;
    int k = static_cast<int>(std::floor(x));
    if (k < 0)
        k = 0;
    if (k > K - 2)
        k = K - 2;
    double th = x - k;
    if (th < 0.0)
        th = 0.0;
    if (th > 1.0)
        th = 1.0;

    RadialJet out;
    out.t = t;
    out.r = r;
    const int q = std::min(order + 1, 3);

    SliceJet a, b;
    spatial_jet(k, r, q, a);
    const bool exact = th == 0.0;
    if (!exact)
        spatial_jet(k + 1, r, q, b);
    const double h00 = (1.0 + 2.0 * th) * (1.0 - th) * (1.0 - th);
    const double h10 = th * (1.0 - th) * (1.0 - th);
    const double h01 = th * th * (3.0 - 2.0 * th);
    const double h11 = th * th * (th - 1.0);
    for (int i = 0; i <= std::min(order, 2); ++i)
        for (int j = 0; i + j <= std::min(order, 2); ++j) {
            if (exact) {
                out.u[i][j] = a.u[i][j];
                out.v[i][j] = a.v[i][j];
                continue;
            }
            out.u[i][j] = h00 * a.u[i][j] + h10 * dt * a.u[i + 1][j] + h01 * b.u[i][j] + h11 * dt * b.u[i + 1][j];
            out.v[i][j] = h00 * a.v[i][j] + h10 * dt * a.v[i + 1][j] + h01 * b.v[i][j] + h11 * dt * b.v[i + 1][j];
        }
    if (order >= 3) {
        if (exact) {
            for (int i = 0; i <= 3; ++i) {
                out.u[i][3 - i] = a.u[i][3 - i];
                out.v[i][3 - i] = a.v[i][3 - i];
            }
        } else {
            int k0 = std::clamp(k - 1, 0, K - 4);
            const double y = x - k0;
            double w[4];
            for (int i = 0; i < 4; ++i) {
                w[i] = 1.0;
                for (int l = 0; l < 4; ++l)
                    if (l != i)
                        w[i] *= (y - l) / static_cast<double>(i - l);
            }
            SliceJet s;
            for (int n = 0; n < 4; ++n) {
                spatial_jet(k0 + n, r, 3, s);
                for (int i = 0; i <= 3; ++i) {
                    out.u[i][3 - i] += w[n] * s.u[i][3 - i];
                    out.v[i][3 - i] += w[n] * s.v[i][3 - i];
                }
            }
        }
    }
    return out;
}

double covered_s_max(const FieldSampler& f)
{
    // H_s meets the support cone at t = (s^2 + 1)/2
    const double tm = f.t_max() - 2.0 * f.spacing();
    return std::sqrt(std::max(2.0 * tm - 1.0, 0.0));
}

std::vector<double> hyperboloid_nodes(double s, double h)
{
    const double rmax = 0.5 * (s * s - 1.0);
    const int J = static_cast<int>(std::ceil(rmax / h)) + 1;
    std::vector<double> r(J + 1);
    for (int j = 0; j <= J; ++j)
        r[j] = j * h;
    return r;
}

std::vector<RadialJet> sample_on_hyperboloid(const FieldSampler& f, double s, const std::vector<double>& r_nodes,
                                             int order)
{
    std::vector<RadialJet> out(r_nodes.size());
    for (std::size_t i = 0; i < r_nodes.size(); ++i) {
        const double r = r_nodes[i];
        const double t = std::sqrt(s * s + r * r);
        if (t > f.t_max() && r > t - 1.0) {
            // outside the support cone the field vanishes
            out[i].t = t;
            out[i].r = r;
            continue;
        }
        out[i] = f.jet(t, r, order);
    }
    return out;
}

std::vector<RadialJet> sample_along_curve(const FieldSampler& f, const geom::HyperbolaCurve& curve,
                                          const std::vector<double>& taus, int order)
{
    std::vector<RadialJet> out(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i)
        out[i] = f.jet(taus[i], geom::curve_position(curve, taus[i]), order);
    return out;
}

}  // namespace wkg

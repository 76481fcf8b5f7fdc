#include "wkg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wkg {

RhsParams rhs_params(const Scenario& sc)
{
    RhsParams p;
    p.h = sc.grid.dr;
    p.b00 = sc.couplings.b00;
    p.bd = sc.couplings.bd;
    p.p00 = sc.couplings.p00;
    p.pd = sc.couplings.pd;
    p.c2 = sc.c * sc.c;
    return p;
}

DegeneracyError::DegeneracyError(double t_, long node_, double value)
    : std::runtime_error("quasilinear degeneracy at t=" + std::to_string(t_) + " node " + std::to_string(node_) +
                         ": 1 - p00*u = " + std::to_string(value)),
      t(t_), node(node_) {}

NonFiniteError::NonFiniteError(long slice_, double t_)
    : std::runtime_error("non-finite field at slice " + std::to_string(slice_) + " (t=" + std::to_string(t_) + ")"),
      slice(slice_) {}

namespace {

struct Node {
    double du, dut, dv, dvt;
    bool bad;
};

// interior node 0 < j, neighbours given explicitly
inline Node node_rhs(const RhsParams& p, double ih2, double ih, double j, double um, double u0, double up, double ut0,
                     double vm, double v0, double vp, double vt0)
{
    const double lu = (up - 2.0 * u0 + um) * ih2 + (up - um) * ih2 / j;
    const double lv = (vp - 2.0 * v0 + vm) * ih2 + (vp - vm) * ih2 / j;
    const double ur = 0.5 * (up - um) * ih;
    const double vr = 0.5 * (vp - vm) * ih;
    const double den = 1.0 - p.p00 * u0;
    Node n;
    n.du = ut0;
    n.dut = lu + p.b00 * ut0 * vt0 + p.bd * ur * vr;
    n.dv = vt0;
    n.dvt = ((1.0 + p.pd * u0) * lv - p.c2 * v0) / den;
    n.bad = std::abs(den) < 0.5;
    return n;
}

inline Node axis_rhs(const RhsParams& p, double ih2, double u0, double u1, double ut0, double v0, double v1, double vt0)
{
    const double lu = 6.0 * (u1 - u0) * ih2;
    const double lv = 6.0 * (v1 - v0) * ih2;
    const double den = 1.0 - p.p00 * u0;
    Node n;
    n.du = ut0;
    n.dut = lu + p.b00 * ut0 * vt0;
    n.dv = vt0;
    n.dvt = ((1.0 + p.pd * u0) * lv - p.c2 * v0) / den;
    n.bad = std::abs(den) < 0.5;
    return n;
}

template <bool Parallel>
long rhs_impl(const RhsParams& p, int m, const double* u, const double* ut, const double* v, const double* vt,
              double* du, double* dut, double* dv, double* dvt)
{
    if (m <= 0)
        return -1;
    const double ih = 1.0 / p.h;
    const double ih2 = ih * ih;
    long bad = -1;
    auto store = [&](int j, const Node& n) {
        du[j] = n.du;
        dut[j] = n.dut;
        dv[j] = n.dv;
        dvt[j] = n.dvt;
    };
    {
        const double u1 = m > 1 ? u[1] : 0.0;
        const double v1 = m > 1 ? v[1] : 0.0;
        Node n = axis_rhs(p, ih2, u[0], u1, ut[0], v[0], v1, vt[0]);
        store(0, n);
        if (n.bad)
            bad = 0;
    }
    long first_bad = m + 1L;
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static) reduction(min : first_bad)
        for (int j = 1; j < m - 1; ++j) {
            Node n = node_rhs(p, ih2, ih, static_cast<double>(j), u[j - 1], u[j], u[j + 1], ut[j], v[j - 1], v[j],
                              v[j + 1], vt[j]);
            du[j] = n.du;
            dut[j] = n.dut;
            dv[j] = n.dv;
            dvt[j] = n.dvt;
            if (n.bad && j < first_bad)
                first_bad = j;
        }
    } else {
        for (int j = 1; j < m - 1; ++j) {
            Node n = node_rhs(p, ih2, ih, static_cast<double>(j), u[j - 1], u[j], u[j + 1], ut[j], v[j - 1], v[j],
                              v[j + 1], vt[j]);
            du[j] = n.du;
            dut[j] = n.dut;
            dv[j] = n.dv;
            dvt[j] = n.dvt;
            if (n.bad && j < first_bad)
                first_bad = j;
        }
    }
    if (m > 1) {
        const int j = m - 1;
        Node n = node_rhs(p, ih2, ih, static_cast<double>(j), u[j - 1], u[j], 0.0, ut[j], v[j - 1], v[j], 0.0,
                          vt[j]);
        store(j, n);
        if (n.bad && j < first_bad)
            first_bad = j;
    }
    if (bad < 0 && first_bad <= m)
        bad = first_bad;
    return bad;
}

}  // namespace

long rhs_serial(const RhsParams& p, int m, const double* u, const double* ut, const double* v, const double* vt,
                double* du, double* dut, double* dv, double* dvt)
{
    return rhs_impl<false>(p, m, u, ut, v, vt, du, dut, dv, dvt);
}

long rhs_parallel(const RhsParams& p, int m, const double* u, const double* ut, const double* v, const double* vt,
                  double* du, double* dut, double* dv, double* dvt)
{
    return rhs_impl<true>(p, m, u, ut, v, vt, du, dut, dv, dvt);
}

void SliceHistory::reserve(std::size_t slices, std::size_t doubles)
{
    len_.reserve(slices);
    off_.reserve(slices);
    data_.reserve(doubles);
}

void SliceHistory::push(int m, const double* u, const double* ut, const double* utt, const double* v,
                        const double* vt, const double* vtt)
{
    off_.push_back(data_.size());
    len_.push_back(m);
    for (const double* f : {u, ut, utt, v, vt, vtt})
        data_.insert(data_.end(), f, f + m);
}

int grid_nodes(const Scenario& sc) { return static_cast<int>(std::lround(sc.grid.r_max / sc.grid.dr)); }

FieldState initial_state(const Scenario& sc)
{
    sc.validate();
    const int n = grid_nodes(sc);
    FieldState s;
    s.t = 2.0;
    s.u.assign(n, 0.0);
    s.ut.assign(n, 0.0);
    s.v.assign(n, 0.0);
    s.vt.assign(n, 0.0);
    const RadialProfile pu0 = sc.profile_u0(), pu1 = sc.profile_u1(), pv0 = sc.profile_v0(), pv1 = sc.profile_v1();
    for (int j = 0; j < n; ++j) {
        const double r = j * sc.grid.dr;
        if (r >= 1.0)
            break;
        s.u[j] = pu0.value(r);
        s.ut[j] = pu1.value(r);
        s.v[j] = pv0.value(r);
        s.vt[j] = pv1.value(r);
    }
    return s;
}

void accelerations(const Scenario& sc, int m, const double* u, const double* ut, const double* v, const double* vt,
                   double* utt, double* vtt)
{
    std::vector<double> du(m), dv(m);
    rhs_serial(rhs_params(sc), m, u, ut, v, vt, du.data(), utt, dv.data(), vtt);
}

SliceHistory evolve(const Scenario& sc, const EvolveOptions& opt)
{
    return evolve_from(sc, initial_state(sc), sc.grid.t_end, opt);
}

SliceHistory evolve_from(const Scenario& sc, const FieldState& st, double t_end, const EvolveOptions& opt)
{
    sc.validate();
    const int n = grid_nodes(sc);
    const double h = sc.grid.dr;
    const int every = sc.grid.store_every;
    long nsteps = static_cast<long>(std::ceil((t_end - st.t) / (sc.grid.cfl * h) - 1e-9));
    nsteps = ((nsteps + every - 1) / every) * every;
    const double dt = (t_end - st.t) / static_cast<double>(nsteps);
    const RhsParams p = rhs_params(sc);
    auto rhs = opt.kernel == Kernel::Parallel ? rhs_parallel : rhs_serial;

    int last_nz = -1;
    for (int j = 0; j < n; ++j)
        if (st.u[j] != 0.0 || st.ut[j] != 0.0 || st.v[j] != 0.0 || st.vt[j] != 0.0)
            last_nz = j;
    const double margin = std::max(40.0 * h, 0.5);
    auto active = [&](double t) {
        if (!opt.trim)
            return n;
        const double reach = (last_nz + 1) * h + (t - st.t) + margin;
        return std::min(n, static_cast<int>(std::ceil(reach / h)) + 1);
    };

    std::vector<double> y[4], k[4][4], tmp[4];
    for (int f = 0; f < 4; ++f) {
        tmp[f].assign(n, 0.0);
        for (int s = 0; s < 4; ++s)
            k[s][f].assign(n, 0.0);
    }
    y[0] = st.u;
    y[1] = st.ut;
    y[2] = st.v;
    y[3] = st.vt;

    SliceHistory hist;
    hist.scenario = sc;
    hist.h = h;
    hist.t0 = st.t;
    hist.dt = dt * every;
    hist.n_nodes = n;
    {
        const std::size_t slices = static_cast<std::size_t>(nsteps / every + 1);
        const double avg = std::min<double>(n, active(0.5 * (st.t + t_end)));
        hist.reserve(slices, static_cast<std::size_t>(6.0 * avg * slices * 1.05));
    }

    auto eval = [&](int stage, int m, const std::vector<double>* in, double t) {
        long bad = rhs(p, m, in[0].data(), in[1].data(), in[2].data(), in[3].data(), k[stage][0].data(),
                       k[stage][1].data(), k[stage][2].data(), k[stage][3].data());
        if (bad >= 0)
            throw DegeneracyError(t, bad, 1.0 - p.p00 * in[0][bad]);
    };
    auto track = [&](int m) {
        double mx = 0.0;
        for (int j = 0; j < m; ++j)
            mx = std::max(mx, std::abs(p.p00 * y[0][j]));
        hist.max_abs_p00u = std::max(hist.max_abs_p00u, mx);
    };
    auto check_finite = [&](int m, long step, double t) {
        for (int f = 0; f < 4; ++f)
            for (int j = 0; j < m; ++j)
                if (!std::isfinite(y[f][j]))
                    throw NonFiniteError(step / every, t);
    };

    double next_progress = st.t;
    auto report = [&](double t, int m) {
        if (!opt.progress || t < next_progress)
            return;
        next_progress += opt.progress_every;
        double su = 0.0, sv = 0.0;
        for (int j = 0; j < m; ++j) {
            su = std::max(su, std::abs(y[0][j]));
            sv = std::max(sv, std::abs(y[2][j]));
        }
        opt.progress({t, su, sv, m});
    };

    for (long step = 0; step <= nsteps; ++step) {
        const double t = st.t + step * dt;
        const int m_now = active(t);
        eval(0, m_now, y, t);
        if (step % every == 0) {
            check_finite(m_now, step, t);
            hist.push(m_now, y[0].data(), y[1].data(), k[0][1].data(), y[2].data(), y[3].data(), k[0][3].data());
            track(m_now);
            report(t, m_now);
        }
        if (step == nsteps)
            break;
        const int m = active(t + dt);
        if (m > m_now)
            for (int f = 0; f < 4; ++f)
                std::fill(k[0][f].begin() + m_now, k[0][f].begin() + m, 0.0);
        const double hs[3] = {0.5 * dt, 0.5 * dt, dt};
        for (int s = 1; s < 4; ++s) {
            for (int f = 0; f < 4; ++f) {
                const double* yf = y[f].data();
                const double* kf = k[s - 1][f].data();
                double* tf = tmp[f].data();
                for (int j = 0; j < m; ++j)
                    tf[j] = yf[j] + hs[s - 1] * kf[j];
            }
            eval(s, m, tmp, t + hs[s - 1]);
        }
        const double w = dt / 6.0;
        for (int f = 0; f < 4; ++f) {
            double* yf = y[f].data();
            for (int j = 0; j < m; ++j)
                yf[j] += w * (k[0][f][j] + 2.0 * k[1][f][j] + 2.0 * k[2][f][j] + k[3][f][j]);
        }
        if (!std::isfinite(y[0][0]) || !std::isfinite(y[2][0]))
            throw NonFiniteError(step / every, t + dt);
    }
    return hist;
}

}  // namespace wkg

#include "wkg/oracles.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wkg {

namespace {

double factorial(int n)
{
    double f = 1.0;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

double binom(int n, int k) { return factorial(n) / (factorial(k) * factorial(n - k)); }

// derivatives of sin(kr)/r / k^{j+1} in terms of spherical Bessel functions
void sinc_derivs(double x, double out[4])
{
    double j0, j1, j2, j3;
    if (x < 5.0) {
        j0 = std::sph_bessel(0, x);
        j1 = std::sph_bessel(1, x);
        j2 = std::sph_bessel(2, x);
        j3 = std::sph_bessel(3, x);
    } else {
        const double s = std::sin(x), c = std::cos(x);
        const double ix = 1.0 / x;
        j0 = s * ix;
        j1 = s * ix * ix - c * ix;
        j2 = (3.0 * ix * ix - 1.0) * s * ix - 3.0 * c * ix * ix;
        j3 = (15.0 * ix * ix * ix - 6.0 * ix) * s * ix - (15.0 * ix * ix - 1.0) * c * ix;
    }
    out[0] = j0;
    out[1] = -j1;
    out[2] = (2.0 * j2 - j0) / 3.0;
    out[3] = (3.0 * j1 - 2.0 * j3) / 5.0;
}

}  // namespace

double DalembertOracle::G(double tau, double r, int i, int n) const
{
    const int m = i + n;
    const double sgn = (i % 2) ? -1.0 : 1.0;
    return 0.5 * (sgn * u0_.phi(r - tau, m) + u0_.phi(r + tau, m)) +
           0.5 * (u1_.antideriv(r + tau, m) - sgn * u1_.antideriv(r - tau, m));
}

void DalembertOracle::jet(double t, double r, int order, double d[4][4]) const
{
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            d[i][j] = 0.0;
    if (is_zero())
        return;
    const double tau = t - 2.0;
    const double R = std::max(u0_.is_zero() ? 0.0 : u0_.radius(), u1_.is_zero() ? 0.0 : u1_.radius());
    if (tau - r >= R)
        return;
    const double r_cut = 0.05;
    if (r < r_cut && (tau + r < R || tau - r > R)) {
        // G is a single odd polynomial in r here: divide term by term
        const int mmax = 24;
        for (int i = 0; i <= order; ++i) {
            for (int m = 1; m <= mmax; m += 2) {
                const double g = u0_.phi(tau, m + i) + u1_.antideriv(tau, m + i);
                if (g == 0.0)
                    continue;
                for (int j = 0; i + j <= order; ++j) {
                    if (m - 1 < j)
                        continue;
                    const int p = m - 1 - j;
                    d[i][j] += g * factorial(m - 1) / (factorial(p) * factorial(m)) * std::pow(r, p);
                }
            }
        }
        return;
    }
    for (int i = 0; i <= order; ++i)
        for (int j = 0; i + j <= order; ++j) {
            double acc = 0.0;
            for (int k = 0; k <= j; ++k) {
                const double sk = (k % 2) ? -1.0 : 1.0;
                acc += binom(j, k) * G(tau, r, i, j - k) * sk * factorial(k) / std::pow(r, k + 1);
            }
            d[i][j] = acc;
        }
}

double DalembertOracle::value(double t, double r) const
{
    double d[4][4];
    jet(t, r, 0, d);
    return d[0][0];
}

double DalembertOracle::radiation(double mu) const { return free_wave_radiation(u0_, u1_, mu); }

double free_wave_radiation(const RadialProfile& u0, const RadialProfile& u1, double mu)
{
    const double x = mu - 2.0;
    return -0.5 * (u0.phi(x, 1) + u1.phi(x, 0));
}

KgSpectralOracle::KgSpectralOracle(const RadialProfile& v0, const RadialProfile& v1, double c, double L, double h)
    : L_(L), c_(c)
{
    if (v0.is_zero() && v1.is_zero())
        return;
    M_ = static_cast<int>(std::ceil(L / h));
    const int n = M_ - 1;
    std::vector<double> x0(n), x1(n);
    for (int j = 0; j < n; ++j) {
        const double r = (j + 1) * L / M_;
        x0[j] = r * v0.value(r);
        x1[j] = r * v1.value(r);
    }
    a_.assign(n, 0.0);
    b_.assign(n, 0.0);
    for (auto [in, out] : {std::pair{&x0, &a_}, std::pair{&x1, &b_}}) {
        fftw_plan plan = fftw_plan_r2r_1d(n, in->data(), out->data(), FFTW_RODFT00, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }
    k_.resize(n);
    w_.resize(n);
    double amax = 0.0;
    for (int q = 0; q < n; ++q) {
        a_[q] /= M_;
        b_[q] /= M_;
        k_[q] = (q + 1) * M_PI / L;
        w_[q] = std::sqrt(k_[q] * k_[q] + c * c);
        amax = std::max({amax, std::abs(a_[q]), std::abs(b_[q]) / w_[q]});
    }
    const double tail = std::max(std::abs(a_[n - 1]), std::abs(b_[n - 1]) / w_[n - 1]);
    warn_ = tail > 1e-10 * amax;
}

void KgSpectralOracle::jet(double t, double r, int order, double d[4][4]) const
{
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            d[i][j] = 0.0;
    if (a_.empty())
        return;
    const double tau = t - 2.0;
    const int n = static_cast<int>(a_.size());
    for (int q = 0; q < n; ++q) {
        const double w = w_[q], k = k_[q];
        const double cs = std::cos(w * tau), sn = std::sin(w * tau);
        // time derivatives of a cos + b sin / w
        double A[4];
        A[0] = a_[q] * cs + b_[q] * sn / w;
        A[1] = -a_[q] * w * sn + b_[q] * cs;
        A[2] = -w * w * A[0];
        A[3] = -w * w * A[1];
        double S[4];
        sinc_derivs(k * r, S);
        double kp = k;
        for (int j = 0; j <= order; ++j) {
            for (int i = 0; i + j <= order; ++i)
                d[i][j] += A[i] * kp * S[j];
            kp *= k;
        }
    }
}

double KgSpectralOracle::value(double t, double r) const
{
    double d[4][4];
    jet(t, r, 0, d);
    return d[0][0];
}

std::vector<double> KgSpectralOracle::slice(double t) const
{
    std::vector<double> out(M_ + 1, 0.0);
    if (a_.empty())
        return out;
    const int n = M_ - 1;
    const double tau = t - 2.0;
    std::vector<double> W(n), w(n);
    for (int q = 0; q < n; ++q)
        W[q] = a_[q] * std::cos(w_[q] * tau) + b_[q] * std::sin(w_[q] * tau) / w_[q];
    fftw_plan plan = fftw_plan_r2r_1d(n, W.data(), w.data(), FFTW_RODFT00, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    for (int j = 1; j < M_; ++j)
        out[j] = 0.5 * w[j - 1] / (j * L_ / M_);
    out[0] = value(t, 0.0);
    return out;
}

double KgSpectralOracle::mode_energy(double t) const
{
    const double tau = t - 2.0;
    double e = 0.0;
    for (std::size_t q = 0; q < a_.size(); ++q) {
        const double w = w_[q];
        const double x = a_[q] * std::cos(w * tau) + b_[q] * std::sin(w * tau) / w;
        const double xd = -a_[q] * w * std::sin(w * tau) + b_[q] * std::cos(w * tau);
        e += xd * xd + w * w * x * x;
    }
    return e;
}

FreeFieldSampler::FreeFieldSampler(const Scenario& sc, double t_max, double spacing)
    : wave_(sc.profile_u0(), sc.profile_u1()),
      kg_(sc.profile_v0(), sc.profile_v1(), sc.c, t_max + 4.0, 0.01),
      t_max_(t_max),
      h_(spacing)
{
    mass = sc.c;
}

RadialJet FreeFieldSampler::jet(double t, double r, int order) const
{
    RadialJet j;
    j.t = t;
    j.r = r;
    wave_.jet(t, r, order, j.u);
    kg_.jet(t, r, order, j.v);
    return j;
}

void KirchhoffEnvelope::validate() const
{
    if (!(mu > 0.0) || mu > 0.5)
        throw std::invalid_argument("kirchhoff: mu must be in (0, 1/2]");
    if (nu == 0.0 || std::abs(nu) > 0.5)
        throw std::invalid_argument("kirchhoff: need 0 < |nu| <= 1/2");
}

double kirchhoff_envelope(const KirchhoffEnvelope& env, double t, double r, double C)
{
    env.validate();
    const double pre = C * env.cF / (env.mu * std::abs(env.nu));
    if (env.nu > 0.0)
        return pre * std::pow(t - r, env.mu - env.nu) / t;
    return pre * std::pow(t - r, -env.mu) * std::pow(t, -1.0 - env.nu);
}

double kirchhoff_envelope_slope(const KirchhoffEnvelope& env)
{
    // sup over r in [0, t-1]: attained at r = 0 when the (t-r) exponent is >= 0, else at t - r = 1
    if (env.nu > 0.0)
        return env.mu - env.nu >= 0.0 ? env.mu - env.nu - 1.0 : -1.0;
    return -1.0 - env.nu;
}

double DuhamelOracle::source(double t, double r) const
{
    if (r > t - 1.0)
        return 0.0;
    return env_.cF * std::pow(t, -2.0 - env_.nu) * std::pow(t - r, -1.0 + env_.mu);
}

// int_0^x y f(tp, |y|) dy, even in x
double DuhamelOracle::H(double tp, double x) const
{
    const double m = std::min(std::abs(x), tp - 1.0);
    if (m <= 0.0)
        return 0.0;
    const double mu = env_.mu;
    auto Z = [&](double z) { return tp * std::pow(z, mu) / mu - std::pow(z, mu + 1.0) / (mu + 1.0); };
    return env_.cF * std::pow(tp, -2.0 - env_.nu) * (Z(tp) - Z(tp - m));
}

double DuhamelOracle::value(double t, double r) const
{
    using boost::math::quadrature::gauss_kronrod;
    if (t <= 2.0 || r >= t - 1.0)
        return 0.0;
    double err = 0.0;
    if (r < 1e-6) {
        auto g = [&](double tp) {
            const double d = t - tp;
            return d * source(tp, d);
        };
        return gauss_kronrod<double, 31>::integrate(g, 2.0, t, 20, 1e-11, &err);
    }
    auto g = [&](double tp) {
        const double d = t - tp;
        return 0.5 * (H(tp, r + d) - H(tp, r - d));
    };
    // split at the kinks where r +- (t - tp) meets tp - 1
    std::vector<double> cuts{2.0, t};
    for (double c : {0.5 * (t + r + 1.0), 0.5 * (t - r + 1.0), 0.5 * (t + 1.0 - r) , 0.5 * (r + 1.0 + t)})
        if (c > 2.0 && c < t)
            cuts.push_back(c);
    if (t - r > 2.0 && t - r < t)
        cuts.push_back(t - r);
    std::sort(cuts.begin(), cuts.end());
    double w = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        if (cuts[i + 1] > cuts[i])
            w += gauss_kronrod<double, 31>::integrate(g, cuts[i], cuts[i + 1], 10, 1e-10, &err);
    return w / r;
}

double DuhamelOracle::sup_r(double t, int samples) const
{
    double best = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double r = (t - 1.0) * i / (samples - 1.0);
        best = std::max(best, std::abs(value(t, r)));
    }
    return best;
}

}  // namespace wkg

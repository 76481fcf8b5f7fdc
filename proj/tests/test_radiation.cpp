#include "wkg/radiation.hpp"
#include "wkg/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace wkg;

namespace {

const Scenario& fw()
{
    static const Scenario sc = free_wave_scenario(1e-3);
    return sc;
}

AnalyticSampler zero_sampler(double t_max)
{
    return AnalyticSampler([](double, double, int, RadialJet&) {}, 2.0, t_max, 0.01);
}

// u = 1/t, v = -2 log t solves box u = b00 u_t v_t with b00 = 1
AnalyticSampler manufactured(double t_max)
{
    AnalyticSampler m(
        [](double t, double, int, RadialJet& J) {
            J.u[0][0] = 1.0 / t;
            J.u[1][0] = -1.0 / (t * t);
            J.u[2][0] = 2.0 / (t * t * t);
            J.u[3][0] = -6.0 / (t * t * t * t);
            J.v[0][0] = -2.0 * std::log(t);
            J.v[1][0] = -2.0 / t;
            J.v[2][0] = 2.0 / (t * t);
        },
        2.0, t_max, 0.01);
    m.couplings.b00 = 1.0;
    return m;
}

}  // namespace

TEST(Richardson, ExactForPolynomials)
{
    const std::vector<double> x{0.4, 0.2, 0.1};
    std::vector<double> y;
    for (double v : x)
        y.push_back(3.0 + 2.0 * v - 5.0 * v * v);
    double corr = 0.0;
    EXPECT_NEAR(richardson(x, y, &corr), 3.0, 1e-13);
    EXPECT_GT(corr, 0.0);
    EXPECT_THROW(richardson({}, {}), std::invalid_argument);
}

TEST(Transport, IdentityHoldsOnOracle)
{
    const AnalyticSampler f = dalembert_sampler(fw().profile_u0(), fw().profile_u1(), 60.0);
    const TransportCheck T = transport_check(f, geom::HyperbolaCurve{3.0}, 0.01);
    EXPECT_LT(T.max_residual, 1e-6 * T.scale);
    EXPECT_FALSE(T.truncated);
    // c0 = 5 starts inside the data support and crosses the C^3 edges of the bump
    const TransportCheck a = transport_check(f, geom::HyperbolaCurve{5.0}, 0.01),
                         b = transport_check(f, geom::HyperbolaCurve{5.0}, 0.005);
    EXPECT_GE(std::log2(a.max_residual / b.max_residual), 2.5);
    EXPECT_LT(b.max_residual, 1e-4 * b.scale);
}

TEST(Transport, ManufacturedSolutionFourthOrder)
{
    const AnalyticSampler m = manufactured(40.0);
    EXPECT_NEAR(box_u(m.jet(5.0, 1.0, 1), m.couplings), 2.0 / 125.0, 1e-16);
    const geom::HyperbolaCurve c{3.0};
    const TransportCheck a = transport_check(m, c, 0.04), b = transport_check(m, c, 0.02);
    EXPECT_GT(a.scale, 0.0);
    EXPECT_LT(b.max_residual, 1e-6 * b.scale);
    EXPECT_GE(std::log2(a.max_residual / b.max_residual), 3.5);
}

TEST(Transport, FrictionColumnIsCumulative)
{
    const AnalyticSampler f = dalembert_sampler(fw().profile_u0(), fw().profile_u1(), 30.0);
    const geom::HyperbolaCurve c{4.0};
    const TransportState st = transport_terms(f, c, 0.5);
    ASSERT_GT(st.tau.size(), 10u);
    EXPECT_EQ(st.friction[0], 0.0);
    EXPECT_NEAR(st.friction.back(), geom::friction_integral(c, st.tau.front(), st.tau.back()), 1e-13);
    const TransportState cut = transport_terms(f, c, std::vector<double>{3.0, 20.0, 35.0});
    EXPECT_TRUE(cut.truncated);
    EXPECT_EQ(cut.tau.size(), 2u);
}

TEST(NullRay, ExactOnOracle)
{
    const AnalyticSampler f = dalembert_sampler(fw().profile_u0(), fw().profile_u1(), 52.0);
    for (double mu : {0.5, 1.25, 1.5, 2.0, 2.5}) {
        const RadiationEstimate e = radiation_null(f, mu, default_null_radii(f, mu));
        EXPECT_NEAR(e.value, free_wave_radiation(fw().profile_u0(), fw().profile_u1(), mu), 1e-6 * 1e-3) << mu;
        EXPECT_TRUE(e.cauchy);
    }
    EXPECT_THROW(radiation_null(f, 1.0, {}), std::invalid_argument);
    EXPECT_THROW(radiation_null(f, 1.0, {10.0, 5.0}), std::invalid_argument);
}

TEST(Hyperbola, AgreesWithNullOnOracle)
{
    const AnalyticSampler f = dalembert_sampler(fw().profile_u0(), fw().profile_u1(), 52.0);
    for (double c0 : {1.0, 2.0, 3.0, 4.0, 5.0}) {
        const RadiationEstimate a = radiation_null(f, 0.5 * c0, default_null_radii(f, 0.5 * c0));
        const RadiationEstimate b = radiation_hyperbola(f, geom::HyperbolaCurve{c0});
        EXPECT_LE(std::abs(a.value - b.value), a.error_bar + b.error_bar + 1e-15) << c0;
        EXPECT_EQ(b.method, RadiationMethod::Hyperbola);
    }
}

TEST(Radiation, ZeroDataPropagatesZero)
{
    const AnalyticSampler z = zero_sampler(52.0);
    const RadiationEstimate a = radiation_null(z, 1.5, default_null_radii(z, 1.5));
    const RadiationEstimate b = radiation_hyperbola(z, geom::HyperbolaCurve{3.0});
    EXPECT_EQ(a.value, 0.0);
    EXPECT_EQ(a.error_bar, 0.0);
    EXPECT_EQ(b.value, 0.0);
    EXPECT_EQ(b.error_bar, 0.0);
}

TEST(Radiation, IntegratingFactorConstant)
{
    for (double c0 : {1.0, 3.0, 5.0}) {
        const double C = integrating_factor_constant(geom::HyperbolaCurve{c0}, 2.0, 1e4);
        EXPECT_GT(C, 0.5);
        EXPECT_LT(C, 1.0 + 1e-9);
    }
}

TEST(Radiation, SolverNullRayWithCompanion)
{
    Scenario sc = fw();
    sc.grid.t_end = 30.0;
    sc.grid.r_max = 32.0;
    sc.grid.store_every = 2;
    const SliceHistory h = evolve(sc);
    Scenario c = sc;
    c.grid.dr *= 2.0;
    const SliceHistory hc = evolve(c);
    const HistorySampler H(h), Hc(hc);
    const double exact = free_wave_radiation(sc.profile_u0(), sc.profile_u1(), 1.5);
    const RadiationEstimate e = radiation_null(H, 1.5, default_null_radii(H, 1.5), {1, 0, 0}, &Hc);
    EXPECT_GT(e.resolution_correction, 0.0);
    EXPECT_LE(std::abs(e.value - exact), 3.0 * e.error_bar);
}

TEST(ExcessiveDecay, NegativeControlAndManufactured)
{
    std::vector<double> g;
    for (double s = 2.0; s <= 30.0; s += 1.0)
        g.push_back(s);
    const AnalyticSampler f = dalembert_sampler(fw().profile_u0(), fw().profile_u1(), 460.0);
    const ExcessiveDecay free = excessive_decay_check(f, g, 0.6, 0.05, 0.025, 5.0);
    EXPECT_FALSE(free.strong_bounded);
    EXPECT_GT(free.slope_strong, 1.0);
    EXPECT_FALSE(free.all_zero);

    const AnalyticSampler m = manufactured(460.0);
    const ExcessiveDecay man = excessive_decay_check(m, g, 0.6, 0.05, 0.25, 5.0);
    EXPECT_TRUE(man.strong_bounded);
    EXPECT_TRUE(man.weighted_decays);

    const ExcessiveDecay z = excessive_decay_check(zero_sampler(460.0), g, 0.6, 0.05, 0.025, 5.0);
    EXPECT_TRUE(z.all_zero);
}

TEST(Rigidity, ZeroAndFreeWaveRows)
{
    const AnalyticSampler z = zero_sampler(52.0);
    const AnalyticSampler w = dalembert_sampler(fw().profile_u0(), fw().profile_u1(), 52.0);
    std::vector<RigidityInput> runs(2);
    runs[0] = {"zero", &z, 0.01, true, RadialProfile(), RadialProfile(), nullptr};
    runs[1] = {"free", &w, 0.01, true, fw().profile_u0(), fw().profile_u1(), nullptr};
    const auto rows = rigidity_experiment(runs);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].radiation_norm, 0.0);
    EXPECT_EQ(rows[0].e0_initial, 0.0);
    EXPECT_TRUE(rows[0].below_floor);
    EXPECT_TRUE(rows[0].consistent);
    EXPECT_TRUE(rows[0].oracle_equivalence);
    EXPECT_GT(rows[1].radiation_norm, rows[1].floor);
    EXPECT_TRUE(rows[1].consistent);
    EXPECT_TRUE(rows[1].oracle_equivalence);
    // energy flux through null infinity: int R^2 dmu = E0(2) / (8 pi)
    EXPECT_NEAR(rows[1].oracle_ratio * 8.0 * M_PI, 1.0, 1e-4);
    EXPECT_NEAR(rows[1].comparability_min, 1.0, 1e-6);
    EXPECT_NEAR(rows[1].comparability_max, 1.0, 1e-6);
}

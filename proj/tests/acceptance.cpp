#include "wkg/energies.hpp"
#include "wkg/geometry.hpp"
#include "wkg/inequalities.hpp"
#include "wkg/io.hpp"
#include "wkg/kg_reduction.hpp"
#include "wkg/oracles.hpp"
#include "wkg/pipeline.hpp"
#include "wkg/radiation.hpp"
#include "wkg/solver.hpp"

#include <omp.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

using namespace wkg;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void verdict(int id, const char* name, bool ok, const std::string& detail)
{
    std::printf("%s  %2d %-22s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

void note(const std::string& s)
{
    std::printf("      %s\n", s.c_str());
    std::fflush(stdout);
}

std::string num(double x)
{
    char b[32];
    std::snprintf(b, sizeof b, "%.4g", x);
    return b;
}

struct Run {
    std::unique_ptr<SliceHistory> hist;
    std::unique_ptr<HistorySampler> smp;
};

Run run(const Scenario& sc)
{
    Run r;
    r.hist = std::make_unique<SliceHistory>(evolve(sc));
    r.smp = std::make_unique<HistorySampler>(*r.hist);
    return r;
}

Scenario coarse_of(Scenario sc)
{
    sc.grid.dr *= 2.0;
    return sc;
}

std::vector<double> s_grid(const FieldSampler& f, double ds)
{
    std::vector<double> g;
    const double top = covered_s_max(f);
    for (int k = 0; 2.0 + k * ds <= top + 1e-12; ++k)
        g.push_back(2.0 + k * ds);
    return g;
}

// sup over slices at t = 2, 2.1, ..., which every resolution stores
double sup_error(const SliceHistory& h, const FieldSampler& exact, Field f)
{
    double err = 0.0;
    const int stride = static_cast<int>(std::lround(0.1 / h.dt));
    for (int k = 0; k < h.size(); k += stride) {
        const double t = h.time(k);
        for (int j = 0; j < h.n_nodes - 3; ++j) {
            const RadialJet J = exact.jet(t, j * h.h, 0);
            const double ex = f == Field::U ? J.u[0][0] : J.v[0][0];
            err = std::max(err, std::abs(h.at(k, f, j) - ex));
        }
    }
    return err;
}

void criterion1()
{
    bool ok = true;
    std::string detail, coarse;
    for (int which = 0; which < 2; ++which) {
        double err[3];
        for (int i = 0; i < 3; ++i) {
            Scenario sc = which == 0 ? free_wave_scenario(1e-3) : free_kg_scenario(1e-3);
            sc.grid.dr = 0.02 / (1 << i);
            sc.grid.t_end = 22.0;
            sc.grid.r_max = 24.0;
            sc.grid.store_every = 10 << i;
            const SliceHistory h = evolve(sc);
            const FreeFieldSampler F(sc, 24.0);
            err[i] = sup_error(h, F, which == 0 ? Field::U : Field::V);
        }
        const double order = std::log2(err[1] / err[2]);
        ok = ok && err[1] <= 1e-4 && order >= 1.9;
        const std::string name = which == 0 ? "wave" : "kg";
        detail += name + " err(dr=0.01)=" + num(err[1]) + " order(0.01->0.005)=" + num(order) + (which == 0 ? "; " : "");
        coarse += name + " " + num(std::log2(err[0] / err[1])) + (which == 0 ? ", " : "");
    }
    verdict(1, "oracle-equivalence", ok, detail);
    note("order(0.02->0.01): " + coarse);
}

void criterion2()
{
    const Scenario fw = free_wave_scenario(1e-3);
    const AnalyticSampler f = dalembert_sampler(fw.profile_u0(), fw.profile_u1(), 205.0);
    double e0_ref = 0.0, e1_ref = 0.0, d0 = 0.0, d1 = 0.0, triple = 0.0;
    for (double s = 2.0; s <= 20.0 + 1e-12; s += 1.0) {
        const HyperboloidSample smp = sample_hyperboloid(f, s);
        const E0cResult e0 = energy_e0c(smp, Which::U, 0.0);
        const double e1 = energy_e1(smp).value;
        triple = std::max(triple, e0.max_rel_disagreement);
        if (s == 2.0) {
            e0_ref = e0.value;
            e1_ref = e1;
            continue;
        }
        d0 = std::max(d0, std::abs(e0.value / e0_ref - 1.0));
        d1 = std::max(d1, std::abs(e1 / e1_ref - 1.0));
    }

    // solver field over the hyperboloids the run covers; the drift is O(dr^2)
    double sd0[2], sd1[2], top = 0.0;
    for (int i = 0; i < 2; ++i) {
        Scenario sc = fw;
        sc.grid.dr = 0.01 / (1 << i);
        sc.grid.store_every = 2 << (2 * i);
        const Run R = run(sc);
        const auto grid = s_grid(*R.smp, 0.5);
        top = grid.back();
        double ref0 = 0.0, ref1 = 0.0;
        sd0[i] = sd1[i] = 0.0;
        for (double s : grid) {
            const HyperboloidSample smp = sample_hyperboloid(*R.smp, s);
            const E0cResult e0 = energy_e0c(smp, Which::U, 0.0);
            const double e1 = energy_e1(smp).value;
            triple = std::max(triple, e0.max_rel_disagreement);
            if (s == 2.0) {
                ref0 = e0.value;
                ref1 = e1;
                continue;
            }
            sd0[i] = std::max(sd0[i], std::abs(e0.value / ref0 - 1.0));
            sd1[i] = std::max(sd1[i], std::abs(e1 / ref1 - 1.0));
        }
    }
    const bool ok = d0 < 1e-3 && d1 < 1e-3 && sd0[1] < 1e-3 && sd1[1] < 1e-3 && triple < 1e-8;
    verdict(2, "conservation", ok,
            "oracle s in [2,20]: E0 drift " + num(d0) + ", E1 drift " + num(d1) + "; solver dr=0.005 s in [2," +
                num(top) + "]: E0 drift " + num(sd0[1]) + ", E1 drift " + num(sd1[1]) + "; triple form " +
                num(triple));
    note("solver dr=0.01: E0 drift " + num(sd0[0]) + ", E1 drift " + num(sd1[0]) + " (order " +
         num(std::log2(sd0[0] / sd0[1])) + ")");
}

void criterion3()
{
    bool ok = true;
    std::string detail;
    for (auto [n, alpha] : {std::pair{3, 1.0}, {3, 2.0}, {2, 1.0}}) {
        double worst = 0.0;
        const double bound = 2.0 / (n - alpha);
        for (std::uint64_t seed = 1; seed <= 100; ++seed) {
            const HardyResult h = check_hardy(random_profile(seed), alpha, n);
            worst = std::max(worst, h.ratio / bound);
        }
        ok = ok && worst <= 1.0 + 1e-3;
        detail += "(" + std::to_string(n) + "," + num(alpha) + ") max ratio/bound " + num(worst) + "; ";
    }
    verdict(3, "hardy", ok, detail + "100 seeds each");
}

void criterion4(const HistorySampler& f)
{
    const auto grid = s_grid(f, 0.25);
    const SlackSeries conf = check_conformal_estimate(f, grid, 1.0);
    const SlackSeries stdu = check_standard_estimate(f, grid, Which::U);
    const SlackSeries stdv = check_standard_estimate(f, grid, Which::V, 2.0);
    const bool ok = conf.min_slack >= -1e-6 && stdu.min_slack >= -1e-6 && stdv.min_slack >= -1e-6;
    verdict(4, "energy-estimates", ok,
            "s in [2," + num(grid.back()) + "], min slack: conformal(C=1) " + num(conf.min_slack) + ", standard u " +
                num(stdu.min_slack) + ", standard v(kappa=2) " + num(stdv.min_slack));
}

void criterion5()
{
    bool ok = true;
    std::string detail;
    std::vector<double> betas{0.0, 0.3, 0.5};
    std::vector<std::vector<double>> res(betas.size());
    double scale = 0.0;
    for (double dr : {0.02, 0.01, 0.005}) {
        Scenario sc = free_kg_scenario(1e-3);
        sc.v0.power = 8;
        sc.grid.dr = dr;
        sc.grid.t_end = 30.0;
        sc.grid.r_max = 32.0;
        sc.grid.store_every = 2;
        const Run R = run(sc);
        for (std::size_t b = 0; b < betas.size(); ++b) {
            const RayProfile p = reduction_residual(*R.smp, betas[b], 5.0 * dr);
            res[b].push_back(p.max_residual);
            scale = std::max(scale, p.scale);
        }
    }
    double worst_order = 1e9;
    for (const auto& r : res)
        for (std::size_t i = 1; i < r.size(); ++i)
            worst_order = std::min(worst_order, std::log2(r[i - 1] / r[i]));
    ok = worst_order >= 1.9;
    detail += "reduction residual min order " + num(worst_order) + " (rays 0, 0.3, 0.5; dr 0.02/0.01/0.005)";

    double diag = 0.0;
    for (double c : {0.25, 0.5, 1.0, 2.0, 4.0})
        for (double q = -0.45; q <= 0.45 + 1e-12; q += 0.05)
            diag = std::max(diag, diagonalization_residual(c, q));
    bool lemma = true;
    double worst_C = 0.0, sys = 0.0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const OscillatorProblem p = random_oscillator(seed);
        const LemmaResult L = check_ode_lemma(p, integrate_oscillator(p));
        lemma = lemma && L.quadratic_ok;
        worst_C = std::max(worst_C, L.C_quadratic);
        diag = std::max(diag, L.diagonalization_residual);
        sys = std::max(sys, L.system_residual);
    }
    ok = ok && diag < 1e-12 && lemma;
    verdict(5, "kg-reduction", ok,
            detail + "; diagonalization " + num(diag) + ", system " + num(sys) + "; lemma C=1 holds in 100/100: " +
                (lemma ? "yes" : "no") + " (smallest valid C " + num(worst_C) + ")");
}

void criterion6(const HistorySampler& ref, const std::vector<EnergyReport>& reps)
{
    std::vector<double> tg;
    for (double t = 10.0; t <= 400.0 + 1e-12; t += 2.0)
        tg.push_back(t);
    Scenario ext = reference_scenario();
    ext.grid.t_end = 402.0;
    ext.grid.r_max = 404.0;
    ext.grid.store_every = 200;
    double kg = 0.0, wave = 0.0;
    {
        const Run R = run(ext);
        for (const auto& m : slice_decay_monitors(*R.smp, tg, 100.0))
            (m.label == "kg_v_slice" ? kg : wave) = m.fit.slope;
    }
    std::vector<double> tr;
    for (double t = 10.0; t <= ref.t_max() - 1e-12; t += 0.5)
        tr.push_back(t);
    double kg_ref = 0.0, wave_ref = 0.0;
    for (const auto& m : slice_decay_monitors(ref, tr, 10.0))
        (m.label == "kg_v_slice" ? kg_ref : wave_ref) = m.fit.slope;

    const double init =
        std::sqrt(std::max(reps[0].e1_hi_u, 0.0)) + 4.0 * std::sqrt(std::max(reps[0].e0c_hi_v, 0.0));
    const BootstrapResult boot = bootstrap_monitor(reps, 10.0 * init, 0.05);
    double last = 0.0, thr = 0.0;
    if (!boot.value.empty()) {
        last = boot.value.back();
        thr = boot.threshold.back();
    }
    const bool ok = std::abs(kg + 1.5) <= 0.05 && std::abs(wave) <= 0.05 && boot.pass;
    verdict(6, "decay-exponents", ok,
            "t in [100,400]: kg slope " + num(kg) + ", wave t|u| slope " + num(wave) + "; bootstrap " +
                (boot.pass ? "pass" : "fail at s=" + num(boot.first_failure)) + " (s=" + num(boot.s.back()) +
                " value " + num(last) + " vs threshold " + num(thr) + ")");
    note("reference horizon t in [10,52]: kg slope " + num(kg_ref) + ", wave t|u| slope " + num(wave_ref));
}

struct RadiationTally {
    bool ok = true;
    std::string detail;
};

void compare_methods(const std::string& label, const FieldSampler& f, const FieldSampler* coarse,
                     RadiationTally& tally, const RadialProfile* u0 = nullptr, const RadialProfile* u1 = nullptr)
{
    double worst = 0.0, worst_exact = 0.0;
    for (double c0 : {1.0, 2.0, 3.0, 4.0, 5.0}) {
        const double mu = 0.5 * c0;
        const RadiationEstimate a = radiation_null(f, mu, default_null_radii(f, mu), {1, 0, 0}, coarse);
        const RadiationEstimate b = radiation_hyperbola(f, geom::HyperbolaCurve{c0}, HyperbolaOptions{}, coarse);
        const double bars = a.error_bar + b.error_bar;
        const double diff = std::abs(a.value - b.value);
        const double q = diff == 0.0 ? 0.0 : diff / bars;
        if (c0 <= 3.0) {
            worst = std::max(worst, q);
            tally.ok = tally.ok && q <= 1.0;
        }
        if (u0) {
            const double exact = free_wave_radiation(*u0, *u1, mu);
            const double qe = std::abs(a.value - exact) / (3.0 * a.error_bar);
            worst_exact = std::max(worst_exact, qe);
            tally.ok = tally.ok && qe <= 1.0;
        }
    }
    tally.detail += label + ": max |null-hyp|/bars " + num(worst);
    if (u0)
        tally.detail += ", max |null-exact|/(3 bar) " + num(worst_exact);
    tally.detail += "; ";
}

void criterion7(const HistorySampler& ref, const HistorySampler& ref_coarse)
{
    RadiationTally tally;
    const Scenario fw = free_wave_scenario(1e-3);
    const RadialProfile u0 = fw.profile_u0(), u1 = fw.profile_u1();
    const AnalyticSampler oracle = dalembert_sampler(u0, u1, 52.0);
    double worst_oracle = 0.0, peak = 0.0;
    for (double c0 : {1.0, 2.0, 3.0, 4.0, 5.0}) {
        const double mu = 0.5 * c0;
        const double exact = free_wave_radiation(u0, u1, mu);
        const RadiationEstimate e = radiation_null(oracle, mu, default_null_radii(oracle, mu));
        worst_oracle = std::max(worst_oracle, std::abs(e.value - exact));
        peak = std::max(peak, std::abs(exact));
    }
    tally.ok = worst_oracle <= 1e-6 * peak;
    tally.detail += "oracle mode max |R-exact|/max|R| " + num(worst_oracle / peak) + "; ";
    {
        Scenario sc = fw;
        sc.grid.store_every = 2;
        const Run R = run(sc), C = run(coarse_of(sc));
        compare_methods("free solver", *R.smp, C.smp.get(), tally, &u0, &u1);
    }
    compare_methods("coupled solver", ref, &ref_coarse, tally);
    verdict(7, "radiation-field", tally.ok, tally.detail + "c0 in {1,2,3} gated, 4 and 5 also checked");
}

void criterion8()
{
    double drift = 0.0, asym = 0.0;
    for (double c0 : {0.5, 1.0, 2.0, 8.0 / 3.0, 3.0, 5.0, 10.0}) {
        const geom::HyperbolaCurve curve{c0};
        for (double tau = 2.0; tau < 1e3; tau *= 1.07) {
            const long double t = tau, r = geom::curve_position(curve, tau);
            const long double c = (t * t - r * r) / r;
            drift = std::max(drift, static_cast<double>(std::abs(c / c0 - 1.0L)));
        }
        asym = std::max(asym, std::abs(geom::asymptote_defect(curve, 1e6) / (c0 * c0 / 8.0) - 1.0));
    }
    const double th = geom::entry_threshold(2.0);
    const auto below = geom::entry_point(geom::HyperbolaCurve{std::nextafter(th, 0.0)}).tag;
    const auto at = geom::entry_point(geom::HyperbolaCurve{th}).tag;
    const auto above = geom::entry_point(geom::HyperbolaCurve{std::nextafter(th, 10.0)}).tag;
    const bool flip = th == 8.0 / 3.0 && below == geom::EntryTag::Boundary && at == geom::EntryTag::Boundary &&
                      above == geom::EntryTag::Hyperboloid;
    const bool ok = drift < 1e-12 && asym < 1e-4 && flip;
    verdict(8, "curve-geometry", ok,
            "c0 drift " + num(drift) + ", asymptote rel err at tau=1e6 " + num(asym) + ", threshold " + num(th) +
                " tags " + geom::to_string(below) + "/" + geom::to_string(at) + "/" + geom::to_string(above));
}

void criterion9(const HistorySampler& ref, const HistorySampler& ref_coarse)
{
    const Scenario fw = free_wave_scenario(1e-3);
    const AnalyticSampler zero([](double, double, int, RadialJet&) {}, ref.t_min(), ref.t_max(), ref.spacing());
    const AnalyticSampler wave = dalembert_sampler(fw.profile_u0(), fw.profile_u1(), ref.t_max(), ref.spacing());
    std::vector<RigidityInput> runs(3);
    runs[0] = {"reference", &ref, 0.01, false, {}, {}, &ref_coarse};
    runs[1] = {"zero-data", &zero, 0.01, true, RadialProfile(), RadialProfile(), nullptr};
    runs[2] = {"free-wave", &wave, 0.01, true, fw.profile_u0(), fw.profile_u1(), nullptr};
    const auto rows = rigidity_experiment(runs);

    bool zero_exact = rows[1].radiation_norm == 0.0 && rows[1].e0_initial == 0.0;
    for (const auto& e : rows[1].fan)
        zero_exact = zero_exact && e.value == 0.0;
    const bool free_ok = rows[2].radiation_norm > 0.0 && rows[2].oracle_ratio > 0.0;
    const bool comp = rows[0].comparability_min >= 1.0 / 1.1 && rows[0].comparability_max <= 1.1;

    std::vector<double> g;
    for (double s = 2.0; s <= 30.0; s += 1.0)
        g.push_back(s);
    const AnalyticSampler control =
        dalembert_sampler(fw.profile_u0(), fw.profile_u1(), 460.0, ref.spacing());
    const ExcessiveDecay ex = excessive_decay_check(control, g, 0.6, 0.05, 0.025, 5.0);
    const bool negative = !ex.all_zero && !ex.strong_bounded;

    verdict(9, "rigidity", zero_exact && free_ok && comp && negative,
            std::string("zero data R=0,E0=0 exact: ") + (zero_exact ? "yes" : "no") + "; free wave |R|=" +
                num(rows[2].radiation_norm) + ", int R^2/E0(2)=" + num(rows[2].oracle_ratio) +
                "; reference E0(s)/E0(2) in [" + num(rows[0].comparability_min) + "," +
                num(rows[0].comparability_max) + "]; control t^(2-delta)|u_t| slope " + num(ex.slope_strong));
}

std::map<std::string, std::string> output_hashes(const fs::path& dir)
{
    std::map<std::string, std::string> h;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().filename() != "manifest.json")
            h[e.path().filename().string()] = io::sha256_file(e.path());
    return h;
}

void criterion10()
{
    Scenario sc = reference_scenario();
    sc.grid.dr = 0.02;
    sc.grid.t_end = 12.0;
    sc.grid.r_max = 14.0;
    sc.grid.store_every = 2;
    sc.monitors.s_fit_min = 3.0;
    const fs::path base = fs::temp_directory_path() / ("wkg_accept_" + std::to_string(::getpid()));
    const int n = std::max(4, omp_get_num_procs());
    std::map<std::string, std::string> hashes[2];
    for (int i = 0; i < 2; ++i) {
        PipelineOptions opt;
        opt.threads = i == 0 ? 1 : n;
        opt.out = base / std::to_string(opt.threads);
        omp_set_num_threads(opt.threads);
        run_pipeline("all", sc, opt);
        hashes[i] = output_hashes(opt.out);
    }
    omp_set_num_threads(omp_get_num_procs());
    int csv = 0;
    for (const auto& [name, sha] : hashes[0])
        csv += name.size() > 4 && name.substr(name.size() - 4) == ".csv";
    const bool ok = hashes[0] == hashes[1] && csv > 0;
    fs::remove_all(base);
    verdict(10, "determinism", ok,
            std::to_string(hashes[0].size()) + " outputs (" + std::to_string(csv) + " csv) identical at 1 and " +
                std::to_string(n) + " threads: " + (hashes[0] == hashes[1] ? "yes" : "no"));
}

}  // namespace

int main()
{
    const auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion8();
    criterion5();
    {
        Scenario ref = reference_scenario();
        ref.grid.store_every = 2;
        const Run R = run(ref), C = run(coarse_of(ref));
        criterion4(*R.smp);
        const auto reps = energy_reports(*R.smp, s_grid(*R.smp, ref.monitors.ds), true);
        criterion6(*R.smp, reps);
        criterion7(*R.smp, *C.smp);
        criterion9(*R.smp, *C.smp);
    }
    criterion10();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d of 10 criteria failed (%.0f s)\n", failures, secs);
    return failures == 0 ? 0 : 1;
}

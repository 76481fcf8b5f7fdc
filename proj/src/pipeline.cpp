#include "wkg/pipeline.hpp"
#include "wkg/energies.hpp"
#include "wkg/inequalities.hpp"
#include "wkg/io.hpp"
#include "wkg/kg_reduction.hpp"
#include "wkg/oracles.hpp"
#include "wkg/radiation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace wkg {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

const std::vector<std::string>& pipeline_subcommands()
{
    static const std::vector<std::string> v{"simulate", "energies", "inequalities", "kg-lab",
                                            "radiation", "rigidity", "all"};
    return v;
}

const char* code_version() { return "wkglab 1.0.0 (slice format 1)"; }

namespace {

class Context {
public:
    Context(const Scenario& sc, const PipelineOptions& opt) : sc_(sc), opt_(opt) {}

    const SliceHistory& history()
    {
        if (!hist_) {
            if (opt_.history) {
                hist_ = std::make_unique<SliceHistory>(io::slice_load(*opt_.history));
            } else {
                EvolveOptions eo;
                if (opt_.verbose)
                    eo.progress = [](const Progress& p) {
                        std::fprintf(stderr, "t=%.2f sup|u|=%.3e sup|v|=%.3e active=%d\n", p.t, p.sup_u, p.sup_v,
                                     p.active);
                    };
                hist_ = std::make_unique<SliceHistory>(evolve(sc_, eo));
            }
            smp_ = std::make_unique<HistorySampler>(*hist_);
        }
        return *hist_;
    }
    const HistorySampler& sampler()
    {
        history();
        return *smp_;
    }
    const Scenario& scenario() const { return opt_.history ? hist_->scenario : sc_; }

    // same data on a grid twice as coarse; absent when replaying a dump
    const FieldSampler* coarse()
    {
        if (opt_.history)
            return nullptr;
        if (!coarse_smp_) {
            Scenario c = sc_;
            c.grid.dr = 2.0 * sc_.grid.dr;
            coarse_hist_ = std::make_unique<SliceHistory>(evolve(c, EvolveOptions{}));
            coarse_smp_ = std::make_unique<HistorySampler>(*coarse_hist_);
        }
        return coarse_smp_.get();
    }

    std::vector<double> s_grid()
    {
        const double top = covered_s_max(sampler());
        std::vector<double> g;
        const double ds = sc_.monitors.ds;
        for (int k = 0;; ++k) {
            const double s = 2.0 + k * ds;
            if (s > top + 1e-12)
                break;
            g.push_back(s);
        }
        return g;
    }

    const std::vector<EnergyReport>& reports()
    {
        if (reports_.empty())
            reports_ = energy_reports(sampler(), s_grid(), true);
        return reports_;
    }

    fs::path file(const std::string& name)
    {
        const fs::path p = opt_.out / name;
        written_.push_back(name);
        return p;
    }
    const std::vector<std::string>& written() const { return written_; }
    const PipelineOptions& opt() const { return opt_; }

private:
    Scenario sc_;
    PipelineOptions opt_;
    std::unique_ptr<SliceHistory> hist_;
    std::unique_ptr<HistorySampler> smp_;
    std::unique_ptr<SliceHistory> coarse_hist_;
    std::unique_ptr<HistorySampler> coarse_smp_;
    std::vector<EnergyReport> reports_;
    std::vector<std::string> written_;
};

void write_json(const fs::path& p, const ordered_json& j)
{
    std::ofstream out(p, std::ios::trunc);
    out << j.dump(2) << "\n";
}

void stage_simulate(Context& ctx)
{
    const SliceHistory& h = ctx.history();
    if (!ctx.opt().history)
        io::slice_dump(h, ctx.file("slices.bin"));
    io::CsvWriter csv(ctx.file("simulate.csv"), {"t", "sup_u", "sup_v", "active_nodes"});
    std::vector<double> t, su, sv;
    for (int k = 0; k < h.size(); ++k) {
        double a = 0.0, b = 0.0;
        const int len = h.length(k);
        const double* u = h.field(k, Field::U);
        const double* v = h.field(k, Field::V);
        for (int j = 0; j < len; ++j) {
            a = std::max(a, std::abs(u[j]));
            b = std::max(b, std::abs(v[j]));
        }
        csv.row({h.time(k), a, b, static_cast<double>(len)});
        t.push_back(h.time(k));
        su.push_back(a);
        sv.push_back(b);
    }
    io::write_series(ctx.file("plot_sup_u.dat"), "t", "sup_u", t, su);
    io::write_series(ctx.file("plot_sup_v.dat"), "t", "sup_v", t, sv);
}

void stage_energies(Context& ctx)
{
    const auto& reps = ctx.reports();
    io::CsvWriter csv(ctx.file("energies.csv"),
                      {"s", "e0", "e0c", "e0gc", "kappa_ratio", "M", "e1", "f1", "e1_T0", "e1_T1", "e1_T2", "e1_T3",
                       "triple_form_disagreement", "e1_hi_u", "e0c_hi_v"});
    std::vector<double> s, e0, e0c, e1, f1;
    for (const auto& R : reps) {
        csv.row({R.s, R.e0, R.e0c, R.e0gc, R.kappa_ratio, R.M, R.e1, R.f1, R.e1_terms[0], R.e1_terms[1],
                 R.e1_terms[2], R.e1_terms[3], R.triple_form_disagreement, R.e1_hi_u, R.e0c_hi_v});
        s.push_back(R.s);
        e0.push_back(R.e0);
        e0c.push_back(R.e0c);
        e1.push_back(R.e1);
        f1.push_back(R.f1);
    }
    io::write_series(ctx.file("plot_e0.dat"), "s", "E0_u", s, e0);
    io::write_series(ctx.file("plot_e0c.dat"), "s", "E0c_v", s, e0c);
    io::write_series(ctx.file("plot_e1.dat"), "s", "E1_u", s, e1);
    io::write_series(ctx.file("plot_f1.dat"), "s", "F1", s, f1);
    io::CsvWriter hi(ctx.file("high_order.csv"), {"s", "word", "e0c_u", "e1_u", "e0c_v", "l2_u", "l2_v"});
    for (const auto& R : reps)
        for (const auto& w : R.high_order)
            hi.row({io::fmt(R.s), w.word.empty() ? "id" : w.word, io::fmt(w.e0c_u), io::fmt(w.e1_u),
                    io::fmt(w.e0c_v), io::fmt(w.l2_u), io::fmt(w.l2_v)});
}

void write_slack(Context& ctx, const std::string& name, const SlackSeries& S)
{
    io::CsvWriter csv(ctx.file(name + ".csv"), {"s", "lhs", "rhs", "slack"});
    for (std::size_t i = 0; i < S.s.size(); ++i)
        csv.row({S.s[i], S.lhs[i], S.rhs[i], S.slack[i]});
    io::write_series(ctx.file("plot_" + name + ".dat"), "s", "slack", S.s, S.slack);
}

ordered_json slack_json(const SlackSeries& S)
{
    return {{"C", S.C}, {"C_min", S.C_min}, {"min_slack", S.min_slack}, {"ok", S.min_slack >= -1e-6}};
}

void stage_inequalities(Context& ctx)
{
    const auto& f = ctx.sampler();
    const Scenario& sc = ctx.scenario();
    const auto grid = ctx.s_grid();
    ordered_json j;

    const SlackSeries conf = check_conformal_estimate(f, grid, 1.0);
    const SlackSeries stdu = check_standard_estimate(f, grid, Which::U);
    const SlackSeries stdv = check_standard_estimate(f, grid, Which::V, 2.0);
    write_slack(ctx, "slack_conformal", conf);
    write_slack(ctx, "slack_standard_u", stdu);
    write_slack(ctx, "slack_standard_v", stdv);
    j["conformal"] = slack_json(conf);
    j["standard_u"] = slack_json(stdu);
    j["standard_v"] = slack_json(stdv);

    auto mons = decay_monitors(f, grid, sc.monitors.delta, sc.monitors.s_fit_min);
    std::vector<double> tg;
    for (double t = 2.0; t <= f.t_max() + 1e-12; t += 0.5)
        tg.push_back(t);
    const auto sl = slice_decay_monitors(f, tg, std::min(10.0, 0.5 * f.t_max()));
    mons.insert(mons.end(), sl.begin(), sl.end());
    j["monitors"] = ordered_json::array();
    for (const auto& m : mons) {
        io::write_series(ctx.file("plot_monitor_" + m.label + ".dat"), m.axis, m.label, m.x, m.y);
        j["monitors"].push_back({{"label", m.label},
                                 {"axis", m.axis},
                                 {"expected", m.expected},
                                 {"slope", m.fit.slope},
                                 {"slope_2se", m.fit.width},
                                 {"flagged", m.flagged}});
    }

    const auto& reps = ctx.reports();
    const double init = reps.empty() ? 0.0
                                     : std::sqrt(std::max(reps[0].e1_hi_u, 0.0)) +
                                           4.0 * std::sqrt(std::max(reps[0].e0c_hi_v, 0.0));
    const BootstrapResult boot = bootstrap_monitor(reps, sc.monitors.c1eps_factor * init, sc.monitors.delta);
    {
        io::CsvWriter csv(ctx.file("bootstrap.csv"), {"s", "value", "threshold"});
        for (std::size_t i = 0; i < boot.s.size(); ++i)
            csv.row({boot.s[i], boot.value[i], boot.threshold[i]});
    }
    j["bootstrap"] = {{"pass", boot.pass}, {"first_failure_s", boot.first_failure}};

    ordered_json ks = ordered_json::array();
    for (double s : {2.0, grid.back()}) {
        const KSResult k = check_klainerman_sobolev(f, s);
        ks.push_back({{"s", k.s}, {"sup_weighted", k.sup_weighted}, {"norm_sum", k.norm_sum}, {"constant", k.constant}});
    }
    j["klainerman_sobolev"] = ks;

    io::CsvWriter hardy(ctx.file("hardy.csv"), {"seed", "n", "alpha", "ratio", "bound", "ok"});
    bool hardy_ok = true;
    for (int i = 0; i < ctx.opt().property_cases; ++i) {
        const std::uint64_t seed = ctx.opt().seed * 1000003ull + static_cast<std::uint64_t>(i);
        const RadialProfile p = random_profile(seed);
        for (auto [n, a] : {std::pair{3, 1.0}, std::pair{3, 2.0}, std::pair{2, 1.0}}) {
            const HardyResult h = check_hardy(p, a, n);
            hardy_ok = hardy_ok && h.ok;
            hardy.row({static_cast<double>(seed), static_cast<double>(n), a, h.ratio, h.bound, h.ok ? 1.0 : 0.0});
        }
    }
    j["hardy"] = {{"cases", ctx.opt().property_cases}, {"seed", ctx.opt().seed}, {"ok", hardy_ok}};
    write_json(ctx.file("inequalities.json"), j);
}

void stage_kg_lab(Context& ctx)
{
    const auto& f = ctx.sampler();
    const Scenario& sc = ctx.scenario();
    ordered_json j;
    io::CsvWriter csv(ctx.file("kg_reduction.csv"), {"beta", "lambda", "w", "wp", "residual"});
    j["rays"] = ordered_json::array();
    for (double beta : {0.0, 0.3, 0.5}) {
        const RayProfile R = reduction_residual(f, beta, 0.05);
        for (std::size_t i = 0; i < R.lambda.size(); ++i)
            csv.row({beta, R.lambda[i], R.w[i], R.wp[i], R.residual[i]});
        j["rays"].push_back({{"beta", beta}, {"max_residual", R.max_residual}, {"scale", R.scale}});
    }
    const SharpDecay sd = sharp_decay_check(f, {0.0, 0.3, 0.5, 0.6, 0.7}, sc.monitors.ds, sc.monitors.s_fit_min);
    j["sharp_decay"] = {{"sup", sd.sup}, {"slope", sd.slope}, {"per_eps", sc.eps > 0 ? sd.sup / sc.eps : 0.0}};
    for (std::size_t k = 0; k < sd.beta.size(); ++k) {
        char name[64];
        std::snprintf(name, sizeof name, "plot_sharp_decay_beta%.2f.dat", sd.beta[k]);
        io::write_series(ctx.file(name), "s", "weighted_v", sd.s[k], sd.value[k]);
    }

    io::CsvWriter osc(ctx.file("oscillator_lemma.csv"),
                      {"seed", "c", "min_slack", "C_quadratic", "C_literal", "equivalence", "diag_residual"});
    bool all_ok = true;
    double worst_diag = 0.0, worst_C = 0.0;
    for (int i = 0; i < ctx.opt().property_cases; ++i) {
        const std::uint64_t seed = ctx.opt().seed * 7919ull + static_cast<std::uint64_t>(i);
        const OscillatorProblem p = random_oscillator(seed);
        const LemmaResult L = check_ode_lemma(p, integrate_oscillator(p));
        all_ok = all_ok && L.quadratic_ok;
        worst_diag = std::max(worst_diag, L.diagonalization_residual);
        worst_C = std::max(worst_C, L.C_quadratic);
        osc.row({static_cast<double>(seed), p.c, L.quadratic_min_slack, L.C_quadratic, L.C_literal,
                 L.equivalence_factor, L.diagonalization_residual});
    }
    j["oscillator_lemma"] = {{"cases", ctx.opt().property_cases},
                             {"quadratic_C1_ok", all_ok},
                             {"max_C_quadratic", worst_C},
                             {"max_diagonalization_residual", worst_diag}};
    write_json(ctx.file("kg_lab.json"), j);
}

void stage_radiation(Context& ctx)
{
    const auto& f = ctx.sampler();
    const FieldSampler* coarse = ctx.coarse();
    io::CsvWriter csv(ctx.file("radiation.csv"),
                      {"mu", "c0", "omega_x", "omega_y", "omega_z", "value", "error_bar", "method", "flagged"});
    io::CsvWriter tc(ctx.file("transport.csv"), {"c0", "max_residual", "scale", "truncated"});
    for (double c0 : {1.0, 2.0, 3.0, 4.0, 5.0}) {
        const geom::HyperbolaCurve curve{c0, {1.0, 0.0, 0.0}};
        const RadiationEstimate a = radiation_null(f, 0.5 * c0, default_null_radii(f, 0.5 * c0), {1.0, 0.0, 0.0}, coarse);
        const RadiationEstimate b = radiation_hyperbola(f, curve, HyperbolaOptions{}, coarse);
        for (const auto* e : {&a, &b})
            csv.row({io::fmt(e->mu), io::fmt(c0), io::fmt(e->omega[0]), io::fmt(e->omega[1]), io::fmt(e->omega[2]),
                     io::fmt(e->value), io::fmt(e->error_bar), to_string(e->method), e->flagged ? "1" : "0"});
        const TransportCheck T = transport_check(f, curve, 0.01);
        tc.row({c0, T.max_residual, T.scale, T.truncated ? 1.0 : 0.0});
    }
}

void stage_rigidity(Context& ctx)
{
    const auto& f = ctx.sampler();
    const Scenario& sc = ctx.scenario();
    AnalyticSampler zero([](double, double, int, RadialJet&) {}, f.t_min(), f.t_max(), f.spacing());
    const AnalyticSampler wave = dalembert_sampler(sc.profile_u0(), sc.profile_u1(), f.t_max(), f.spacing());
    std::vector<RigidityInput> runs(3);
    runs[0] = {"scenario", &f, sc.grid.dr, false, {}, {}, ctx.coarse()};
    runs[1] = {"zero-data", &zero, sc.grid.dr, true, RadialProfile(), RadialProfile()};
    runs[2] = {"free-wave", &wave, sc.grid.dr, true, sc.profile_u0(), sc.profile_u1()};
    const auto rows = rigidity_experiment(runs);
    ordered_json j;
    j["runs"] = ordered_json::array();
    io::CsvWriter csv(ctx.file("rigidity_fan.csv"), {"run", "mu", "value", "error_bar", "method"});
    for (const auto& r : rows) {
        j["runs"].push_back({{"label", r.label},
                             {"e0_initial", r.e0_initial},
                             {"comparability_min", r.comparability_min},
                             {"comparability_max", r.comparability_max},
                             {"comparability_C", r.comparability_C},
                             {"radiation_norm", r.radiation_norm},
                             {"floor", r.floor},
                             {"below_floor", r.below_floor},
                             {"consistent", r.consistent},
                             {"oracle_l2", r.oracle_l2},
                             {"oracle_ratio", r.oracle_ratio},
                             {"oracle_equivalence", r.oracle_equivalence}});
        for (const auto& e : r.fan)
            csv.row({r.label, io::fmt(e.mu), io::fmt(e.value), io::fmt(e.error_bar), to_string(e.method)});
    }
    // excessive decay on the run itself and on the free-wave control
    const auto grid = ctx.s_grid();
    const double sigma = 0.5 * sc.monitors.delta;
    auto ex_json = [&](const ExcessiveDecay& e) {
        return ordered_json{{"slope_weak", e.slope_weak},         {"slope_strong", e.slope_strong},
                            {"slope_weighted_e0", e.slope_weighted}, {"sigma", e.sigma},
                            {"all_zero", e.all_zero},               {"strong_bounded", e.strong_bounded},
                            {"weighted_decays", e.weighted_decays}};
    };
    j["excessive_decay"]["scenario"] =
        ex_json(excessive_decay_check(f, grid, sc.monitors.eta, sc.monitors.delta, sigma, sc.monitors.s_fit_min));
    j["excessive_decay"]["free_wave"] =
        ex_json(excessive_decay_check(wave, grid, sc.monitors.eta, sc.monitors.delta, sigma, sc.monitors.s_fit_min));
    bool consistent = true;
    for (const auto& r : rows)
        consistent = consistent && r.consistent && r.oracle_equivalence;
    j["verdict"] = {{"rigidity_correlation", consistent}};
    write_json(ctx.file("rigidity.json"), j);
}

}  // namespace

void run_pipeline(const std::string& sub, const Scenario& sc, const PipelineOptions& opt)
{
    const auto& subs = pipeline_subcommands();
    if (std::find(subs.begin(), subs.end(), sub) == subs.end())
        throw std::invalid_argument("unknown subcommand '" + sub + "'");
    sc.validate();
    fs::create_directories(opt.out);
    const auto t0 = std::chrono::steady_clock::now();
    Context ctx(sc, opt);
    const bool all = sub == "all";
    if (all || sub == "simulate")
        stage_simulate(ctx);
    if (all || sub == "energies")
        stage_energies(ctx);
    if (all || sub == "inequalities")
        stage_inequalities(ctx);
    if (all || sub == "kg-lab")
        stage_kg_lab(ctx);
    if (all || sub == "radiation")
        stage_radiation(ctx);
    if (all || sub == "rigidity")
        stage_rigidity(ctx);

    io::RunManifest m;
    m.subcommand = sub;
    m.scenario_text = io::serialize(ctx.scenario());
    m.version = code_version();
    m.seed = opt.seed;
    m.threads = opt.threads;
    m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& name : ctx.written())
        m.outputs.push_back({name, io::sha256_file(opt.out / name)});
    m.write(opt.out / "manifest.json");
}

std::string error_json(const std::string& subcommand, const std::exception& e)
{
    ordered_json j;
    j["status"] = "error";
    j["subcommand"] = subcommand;
    std::string type = "error";
    if (dynamic_cast<const ScenarioError*>(&e))
        type = "scenario";
    else if (dynamic_cast<const io::SliceFormatError*>(&e))
        type = "slice_format";
    else if (dynamic_cast<const DegeneracyError*>(&e))
        type = "degeneracy";
    else if (dynamic_cast<const NonFiniteError*>(&e))
        type = "non_finite";
    else if (dynamic_cast<const std::invalid_argument*>(&e))
        type = "invalid_argument";
    else if (dynamic_cast<const std::out_of_range*>(&e))
        type = "out_of_range";
    j["type"] = type;
    j["message"] = e.what();
    return j.dump();
}

}  // namespace wkg

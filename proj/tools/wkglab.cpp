#include "wkg/io.hpp"
#include "wkg/pipeline.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"wave / Klein-Gordon hyperboloidal laboratory"};
    std::string sub;
    std::string scenario_path;
    std::string history_path;
    wkg::PipelineOptions opt;
    std::string out = "out";
    app.add_option("subcommand", sub, "simulate | energies | inequalities | kg-lab | radiation | rigidity | all")
        ->required();
    app.add_option("--scenario", scenario_path, "scenario file (key = value)");
    app.add_option("--out", out, "output directory");
    app.add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "seed for property sweeps");
    app.add_option("--history", history_path, "slice dump to analyse instead of simulating");
    app.add_option("--cases", opt.property_cases, "property cases per sweep")->check(CLI::PositiveNumber);
    app.add_flag("-v,--verbose", opt.verbose, "progress on stderr");
    CLI11_PARSE(app, argc, argv);

    const auto& subs = wkg::pipeline_subcommands();
    if (std::find(subs.begin(), subs.end(), sub) == subs.end()) {
        std::cerr << "unknown subcommand '" << sub << "'\n" << app.help();
        return 64;
    }
    opt.out = out;
    if (!history_path.empty())
        opt.history = history_path;
    omp_set_num_threads(opt.threads);
    try {
        const wkg::Scenario sc = scenario_path.empty() ? wkg::reference_scenario() : wkg::io::load_scenario(scenario_path);
        wkg::run_pipeline(sub, sc, opt);
    } catch (const std::exception& e) {
        const std::string j = wkg::error_json(sub, e);
        std::cerr << j << "\n";
        std::error_code ec;
        std::filesystem::create_directories(opt.out, ec);
        std::ofstream(opt.out / "error.json") << j << "\n";
        return 2;
    }
    return 0;
}

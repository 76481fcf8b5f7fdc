#pragma once

#include "wkg/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace wkg {

struct PipelineOptions {
    std::filesystem::path out = "out";
    std::optional<std::filesystem::path> history;  // reuse a slice dump instead of simulating
    std::uint64_t seed = 1;
    int threads = 1;
    bool verbose = false;
    int property_cases = 100;
};

const std::vector<std::string>& pipeline_subcommands();
const char* code_version();

// runs one subcommand; throws on module errors, std::invalid_argument on an unknown subcommand
void run_pipeline(const std::string& subcommand, const Scenario& sc, const PipelineOptions& opt);

// machine-readable error record
std::string error_json(const std::string& subcommand, const std::exception& e);

}  // namespace wkg

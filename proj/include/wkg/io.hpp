#pragma once

#include "wkg/history.hpp"
#include "wkg/scenario.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace wkg::io {

// flat "section.key = value" document, '#' comments; data.eps is required
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);
std::string serialize(const Scenario& sc);

// format double so that it reparses to the same value
std::string fmt(double x);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

class SliceFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint32_t kSliceVersion = 1;

// header: magic "WKGSLICE", u32 version, u32 0x01020304, u64 n + scenario text, f64 h t0 dt max|p00 u|,
// i32 n_nodes, i64 slices; body per slice: i32 len, f64 t, len f64 each of u ut v vt; trailer: SHA-256 of all before
void slice_dump(const SliceHistory& h, const std::filesystem::path& path);
SliceHistory slice_load(const std::filesystem::path& path);

// history sampled from any field source on the solver grid (second derivatives from the equations)
SliceHistory synthesize_history(const FieldSampler& f, const Scenario& sc, double dt, double t_end);

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;
    void row(const std::vector<double>& values);
    void row(const std::vector<std::string>& cells);

private:
    std::filesystem::path path_;
    std::string buf_;
    std::size_t cols_;
};

// two-column plot data
void write_series(const std::filesystem::path& path, const std::string& xlabel, const std::string& ylabel,
                  const std::vector<double>& x, const std::vector<double>& y);

struct ManifestEntry {
    std::string path;
    std::string sha256;
};

struct RunManifest {
    std::string subcommand;
    std::string scenario_text;
    std::string version;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
    int threads = 1;
    std::vector<ManifestEntry> outputs;
    void write(const std::filesystem::path& path) const;
};

}  // namespace wkg::io

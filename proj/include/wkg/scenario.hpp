#pragma once

#include "wkg/profile.hpp"

#include <stdexcept>
#include <string>

namespace wkg {

struct Couplings {
    double b00 = 0.0;
    double bd = 0.0;
    double p00 = 0.0;
    double pd = 0.0;
    bool operator==(const Couplings&) const = default;
};

struct GridSpec {
    double dr = 0.01;
    double r_max = 60.0;
    double t_end = 52.0;
    double cfl = 0.5;
    int store_every = 1;
    bool operator==(const GridSpec&) const = default;
};

struct MonitorSpec {
    double delta = 0.05;
    double eta = 0.6;
    double c1eps_factor = 10.0;
    double s_fit_min = 5.0;
    double ds = 0.25;
    bool operator==(const MonitorSpec&) const = default;
};

struct Scenario {
    Couplings couplings;
    double c = 1.0;
    double eps = 1e-3;
    ProfileSpec u0, u1, v0, v1;
    GridSpec grid;
    MonitorSpec monitors;

    bool operator==(const Scenario&) const = default;
    // throws ScenarioError naming the offending key
    void validate() const;

    RadialProfile profile_u0() const { return RadialProfile(u0, eps); }
    RadialProfile profile_u1() const { return RadialProfile(u1, eps); }
    RadialProfile profile_v0() const { return RadialProfile(v0, eps); }
    RadialProfile profile_v1() const { return RadialProfile(v1, eps); }
};

class ScenarioError : public std::runtime_error {
public:
    ScenarioError(const std::string& key, const std::string& msg, int line = 0)
        : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + key + ": " + msg),
          key_(key), line_(line) {}
    const std::string& key() const { return key_; }
    int line() const { return line_; }

private:
    std::string key_;
    int line_;
};

// eps = 1e-3, c = 1, all couplings 1, dr = 0.01, r_max = 60, t in [2, 52]
Scenario reference_scenario();
Scenario free_wave_scenario(double eps = 1e-3);
Scenario free_kg_scenario(double eps = 1e-3);

}  // namespace wkg

#pragma once

#include "wkg/scenario.hpp"

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace wkg {

struct FieldState {
    double t = 2.0;
    std::vector<double> u, ut, v, vt;
};

struct RhsParams {
    double h = 0.01;
    double b00 = 0.0, bd = 0.0, p00 = 0.0, pd = 0.0;
    double c2 = 1.0;
};

RhsParams rhs_params(const Scenario& sc);

// Time derivative of (u, ut, v, vt) on nodes [0, m); nodes >= m are taken as zero.
// Returns the first node where |1 - p00 u| < 1/2, or -1.
long rhs_serial(const RhsParams& p, int m, const double* u, const double* ut, const double* v, const double* vt,
                double* du, double* dut, double* dv, double* dvt);
long rhs_parallel(const RhsParams& p, int m, const double* u, const double* ut, const double* v, const double* vt,
                  double* du, double* dut, double* dv, double* dvt);

class DegeneracyError : public std::runtime_error {
public:
    DegeneracyError(double t, long node, double value);
    double t;
    long node;
};

class NonFiniteError : public std::runtime_error {
public:
    NonFiniteError(long slice, double t);
    long slice;
};

enum class Field { U = 0, UT, UTT, V, VT, VTT };

// Slices at uniform spacing, each trimmed to its active length; nodes past len are zero.
class SliceHistory {
public:
    Scenario scenario;
    double h = 0.01;
    double t0 = 2.0;
    double dt = 0.0;
    int n_nodes = 0;  // evolved nodes (r_max excluded)
    double max_abs_p00u = 0.0;

    int size() const { return static_cast<int>(len_.size()); }
    double time(int k) const { return t0 + k * dt; }
    double t_end() const { return time(size() - 1); }
    int length(int k) const { return len_[k]; }
    const double* field(int k, Field f) const { return data_.data() + off_[k] + static_cast<std::size_t>(f) * len_[k]; }
    double at(int k, Field f, int j) const { return j < len_[k] ? field(k, f)[j] : 0.0; }

    void reserve(std::size_t slices, std::size_t doubles);
    void push(int m, const double* u, const double* ut, const double* utt, const double* v, const double* vt,
              const double* vtt);
    std::size_t bytes() const { return data_.size() * sizeof(double); }

private:
    std::vector<int> len_;
    std::vector<std::size_t> off_;
    std::vector<double> data_;
};

struct Progress {
    double t;
    double sup_u;
    double sup_v;
    int active;
};

enum class Kernel { Serial, Parallel };

struct EvolveOptions {
    bool trim = true;
    Kernel kernel = Kernel::Parallel;
    std::function<void(const Progress&)> progress;
    double progress_every = 5.0;
};

FieldState initial_state(const Scenario& sc);
int grid_nodes(const Scenario& sc);

SliceHistory evolve(const Scenario& sc, const EvolveOptions& opt = {});
// evolve an arbitrary state over [state.t, t_end]
SliceHistory evolve_from(const Scenario& sc, const FieldState& state, double t_end, const EvolveOptions& opt = {});

// second time derivatives from the equations
void accelerations(const Scenario& sc, int m, const double* u, const double* ut, const double* v, const double* vt,
                   double* utt, double* vtt);

}  // namespace wkg

#include "wkg/scenario.hpp"

#include <cmath>

namespace wkg {

static void check_profile(const ProfileSpec& p, const std::string& name)
{
    if (p.kind == ProfileKind::Zero)
        return;
    if (!(p.radius > 0.0) || p.radius > 1.0)
        throw ScenarioError("data." + name + ".radius", "support must lie in the unit ball (0 < radius <= 1)");
    if (p.power < 3 || p.power > 12)
        throw ScenarioError("data." + name + ".power", "power must be in [3, 12]");
    if (!std::isfinite(p.amp))
        throw ScenarioError("data." + name + ".amp", "not finite");
}

void Scenario::validate() const
{
    if (!(c > 0.0) || !std::isfinite(c))
        throw ScenarioError("mass.c", "must be > 0");
    if (!(eps >= 0.0) || !std::isfinite(eps))
        throw ScenarioError("data.eps", "must be >= 0");
    for (double x : {couplings.b00, couplings.bd, couplings.p00, couplings.pd})
        if (!std::isfinite(x))
            throw ScenarioError("couplings", "not finite");
    check_profile(u0, "u0");
    check_profile(u1, "u1");
    check_profile(v0, "v0");
    check_profile(v1, "v1");
    if (!(grid.dr > 0.0))
        throw ScenarioError("grid.dr", "must be > 0");
    if (!(grid.cfl > 0.0) || grid.cfl > 0.5)
        throw ScenarioError("grid.cfl", "must be in (0, 0.5]");
    if (!(grid.t_end > 2.0))
        throw ScenarioError("grid.t_end", "must be > 2");
    if (grid.r_max < grid.t_end)
        throw ScenarioError("grid.r_max", "must be >= grid.t_end");
    if (grid.r_max / grid.dr > 5e7)
        throw ScenarioError("grid.dr", "grid too large");
    if (grid.store_every < 1)
        throw ScenarioError("grid.store_every", "must be >= 1");
    if (!(monitors.delta > 0.0) || monitors.delta >= 0.5)
        throw ScenarioError("monitors.delta", "must be in (0, 1/2)");
    if (!(monitors.eta > 0.0) || monitors.eta >= 1.0)
        throw ScenarioError("monitors.eta", "must be in (0, 1)");
    if (!(monitors.c1eps_factor > 0.0))
        throw ScenarioError("monitors.c1eps_factor", "must be > 0");
    if (!(monitors.s_fit_min >= 2.0))
        throw ScenarioError("monitors.s_fit_min", "must be >= 2");
    if (!(monitors.ds > 0.0))
        throw ScenarioError("monitors.ds", "must be > 0");
}

Scenario reference_scenario()
{
    Scenario s;
    s.couplings = {1.0, 1.0, 1.0, 1.0};
    s.c = 1.0;
    s.eps = 1e-3;
    s.u0 = {ProfileKind::Bump, 1.0, 1.0, 4};
    s.u1 = {ProfileKind::Bump, 1.0, 1.0, 4};
    s.v0 = {ProfileKind::Bump, 1.0, 1.0, 4};
    s.v1 = {ProfileKind::DBump, 1.0, 1.0, 4};
    return s;
}

Scenario free_wave_scenario(double eps)
{
    Scenario s;
    s.eps = eps;
    s.u1 = {ProfileKind::Bump, 1.0, 1.0, 4};
    return s;
}

Scenario free_kg_scenario(double eps)
{
    Scenario s;
    s.eps = eps;
    s.v0 = {ProfileKind::Bump, 1.0, 1.0, 4};
    return s;
}

}  // namespace wkg

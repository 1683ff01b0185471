#include "latspec/report_io.hpp"

#include <cstdio>

namespace latspec {

using nlohmann::json;

json to_json(const TorusPoint& x) {
    json out = json::array();
    for (double c : x) out.push_back(c);
    return out;
}

json to_json(const Interval& iv) { return {{"lo", iv.lo}, {"hi", iv.hi}}; }

json to_json(const FiberSpectrum& s) {
    json out;
    out["band"] = {{"e_min", s.band.e_min}, {"e_max", s.band.e_max}, {"degenerate", s.band.degenerate}};
    out["below"] = s.below ? json(*s.below) : json(nullptr);
    out["above"] = s.above ? json(*s.above) : json(nullptr);
    return out;
}

json to_json(const ChannelSpectrum& s) {
    json branches = json::array();
    if (s.two_particle_below) {
        branches.push_back({{"side", "below"},
                            {"lo", s.two_particle_below->lo},
                            {"hi", s.two_particle_below->hi},
                            {"uniform", s.existence_uniform_below}});
    }
    if (s.two_particle_above) {
        branches.push_back({{"side", "above"},
                            {"lo", s.two_particle_above->lo},
                            {"hi", s.two_particle_above->hi},
                            {"uniform", s.existence_uniform_above}});
    }
    json merged = json::array();
    for (const auto& iv : s.merged()) merged.push_back(to_json(iv));
    return {{"K", to_json(s.K)},
            {"three_particle", to_json(s.three_particle)},
            {"branches", branches},
            {"merged", merged},
            {"k_samples", s.k_samples}};
}

json to_json(const DiscreteSpectrumReport& r) {
    json eig = json::array();
    for (const auto& e : r.eigenvalues) {
        eig.push_back({{"z", e.z}, {"residual", e.residual}, {"multiplicity", e.multiplicity}});
    }
    return {{"eigenvalues", eig}, {"search_window", to_json(r.search_window)}, {"sigma_K", to_json(r.sigma_K_used)}};
}

json to_json(const SpectrumComparison& c) {
    json essential = json::array();
    for (const auto& iv : c.essential) essential.push_back(to_json(iv));
    return {{"passed", c.passed()},
            {"ess_tol", c.ess_tol},
            {"disc_tol", c.disc_tol},
            {"essential", essential},
            {"discrete", c.discrete},
            {"oracle_eigenvalue_count", c.oracle_eigenvalues.size()},
            {"oracle_min", c.oracle_eigenvalues.size() ? json(c.oracle_eigenvalues.minCoeff()) : json(nullptr)},
            {"oracle_max", c.oracle_eigenvalues.size() ? json(c.oracle_eigenvalues.maxCoeff()) : json(nullptr)},
            {"coverage_violations", c.coverage_violations},
            {"missing_discrete", c.missing_discrete}};
}

json to_json(const ValidationReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return {{"ok", r.ok()}, {"checks", checks}};
}

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace latspec

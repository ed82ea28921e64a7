#include "obmstop/report_json.hpp"

#include <cmath>

namespace obmstop {

using nlohmann::json;

json json_number(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

json to_json(const Interval& i) {
    return {{"lo", json_number(i.lo)}, {"hi", json_number(i.hi)}, {"lo_closed", i.lo_closed}, {"hi_closed", i.hi_closed}};
}

json to_json(const Region& r) {
    json arr = json::array();
    for (const auto& c : r.components()) arr.push_back(to_json(c));
    return arr;
}

json to_json(const BubbleSolution& b) {
    return {{"c1", b.c1}, {"c2", b.c2}, {"c3", b.c3}, {"k", b.k}, {"a", b.a}, {"b", b.b},
            {"residuals", b.residuals}, {"max_residual", b.max_residual()}, {"method", b.method},
            {"iterations", b.iterations}};
}

json to_json(const Regime& r) {
    json j{{"tag", to_string(r.tag)}, {"stopping_region", to_json(r.stopping_region())},
           {"continuation_region", to_json(r.continuation_region())}};
    if (r.tag == RegimeTag::Bubble) {
        j["boundaries"] = {{"c1", r.thresholds[0]}, {"c2", r.thresholds[1]}, {"c3", r.thresholds[2]}};
        j["bubble"] = to_json(*r.bubble);
    } else {
        j["boundaries"] = {{"c", r.thresholds.front()}};
    }
    return j;
}

json to_json(const ExcessivityReport& r) {
    return {{"passed", r.passed},
            {"lower_nondecreasing", r.lower_nondecreasing},
            {"worst_lower_drop", r.worst_lower_drop},
            {"worst_lower_drop_at", r.worst_lower_drop_at},
            {"upper_nonincreasing", r.upper_nonincreasing},
            {"worst_upper_rise", r.worst_upper_rise},
            {"worst_upper_rise_at", r.worst_upper_rise_at},
            {"lower_zero_left", r.lower_zero_left},
            {"upper_nonnegative", r.upper_nonnegative},
            {"kink_gap", r.kink_gap},
            {"kink_ok", r.kink_ok}};
}

json to_json(const MajorantReport& r) {
    return {{"passed", r.passed}, {"worst_gap", r.worst_gap}, {"worst_at", r.worst_at}};
}

json to_json(const SmoothFitReport& r) {
    return {{"passed", r.passed},
            {"boundaries", r.boundaries},
            {"value_residuals", r.value_residuals},
            {"derivative_residuals", r.derivative_residuals},
            {"max_residual", r.max_residual}};
}

json to_json(const HarmonicityReport& r) {
    return {{"passed", r.passed},
            {"worst_relative", r.worst_relative},
            {"worst_at", r.worst_at},
            {"points_checked", r.points_checked}};
}

json to_json(const VerificationSummary& s) {
    return {{"passed", s.passed},
            {"grid_points", s.grid_points},
            {"excessivity", to_json(s.excessivity)},
            {"majorant", to_json(s.majorant)},
            {"smooth_fit", to_json(s.smooth_fit)},
            {"harmonicity", to_json(s.harmonicity)}};
}

json to_json(const McEstimate& e) {
    return {{"mean", e.mean},
            {"std_error", e.std_error},
            {"n_paths", e.n_paths},
            {"censored_fraction", e.censored_fraction},
            {"overshoot_scale", e.overshoot_scale},
            {"steps", e.steps}};
}

json to_json(const ZeroFitReport& z) {
    return {{"lambda", z.lambda},
            {"A", z.a},
            {"B", z.b},
            {"probe", z.probe},
            {"drift_at_probe", z.drift_at_probe},
            {"representing_at_zero", z.representing_at_zero},
            {"representing_at_probe", z.representing_at_probe},
            {"decreasing_right_of_zero", z.decreasing_right_of_zero},
            {"negative_coefficient", z.negative_coefficient},
            {"unbounded_below", z.unbounded_below},
            {"not_excessive", z.not_excessive}};
}

}  // namespace obmstop

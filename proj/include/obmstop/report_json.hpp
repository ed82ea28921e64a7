#pragma once

#include "json.hpp"

#include "obmstop/mc.hpp"
#include "obmstop/region.hpp"
#include "obmstop/solver.hpp"
#include "obmstop/verification.hpp"

namespace obmstop {

/// Finite numbers as numbers, infinities as the strings "inf" / "-inf".
nlohmann::json json_number(double v);

nlohmann::json to_json(const Interval& i);
nlohmann::json to_json(const Region& r);
nlohmann::json to_json(const BubbleSolution& b);
nlohmann::json to_json(const Regime& r);
nlohmann::json to_json(const ExcessivityReport& r);
nlohmann::json to_json(const MajorantReport& r);
nlohmann::json to_json(const SmoothFitReport& r);
nlohmann::json to_json(const HarmonicityReport& r);
nlohmann::json to_json(const VerificationSummary& s);
nlohmann::json to_json(const McEstimate& e);
nlohmann::json to_json(const ZeroFitReport& z);

}  // namespace obmstop

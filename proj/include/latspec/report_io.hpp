#pragma once

#include "latspec/channel.hpp"
#include "latspec/faddeev.hpp"
#include "latspec/friedrichs.hpp"
#include "latspec/model.hpp"
#include "latspec/oracle.hpp"

#include <json.hpp>

#include <string>

namespace latspec {

nlohmann::json to_json(const TorusPoint& x);
nlohmann::json to_json(const Interval& iv);
nlohmann::json to_json(const FiberSpectrum& s);
/// {K, three_particle:{lo,hi}, branches:[{side, lo, hi, uniform}], merged, k_samples}
nlohmann::json to_json(const ChannelSpectrum& s);
nlohmann::json to_json(const DiscreteSpectrumReport& r);
nlohmann::json to_json(const SpectrumComparison& c);
nlohmann::json to_json(const ValidationReport& r);

/// %.17g, the CSV float format.
std::string format_real(double x);

}  // namespace latspec

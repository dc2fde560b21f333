#pragma once

#include "hmfa/discrepancy.hpp"
#include "hmfa/generators.hpp"
#include "hmfa/graph.hpp"
#include "hmfa/meanfield.hpp"
#include "hmfa/ode.hpp"
#include "hmfa/spectral.hpp"

#include <json.hpp>

namespace hmfa::detail {

using json = nlohmann::ordered_json;

json to_json_value(const GraphStats& s);
json to_json_value(const GenerationInfo& info);
json to_json_value(const Measure& m);
json to_json_value(const DiscrepancyReport& r);
json to_json_value(const SpectralReport& r);
json to_json_value(const CoreResult& r);
json to_json_value(const MixingCheck& c);
json to_json_value(const OdeStats& s);
json to_json_value(const ErrorBudget& b);

/// Finite doubles as numbers; NaN and infinities as strings.
json number(double v);

} // namespace hmfa::detail

#pragma once

#include "hmfa/discrepancy.hpp"
#include "hmfa/generators.hpp"
#include "hmfa/graph.hpp"
#include "hmfa/meanfield.hpp"
#include "hmfa/spectral.hpp"

#include <string>

namespace hmfa {

/// JSON documents; doubles are written in shortest round-trip form, absent
/// optional fields are omitted, vertex sets are sorted index arrays.
std::string to_json(const GraphStats& s, int indent = 2);
std::string to_json(const DiscrepancyReport& r, int indent = 2);
std::string to_json(const SpectralReport& r, int indent = 2);
std::string to_json(const CoreResult& r, int indent = 2);
std::string to_json(const MixingCheck& c, int indent = 2);
std::string to_json(const ErrorBudget& b, int indent = 2);

} // namespace hmfa

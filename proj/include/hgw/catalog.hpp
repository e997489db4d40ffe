#pragma once

#include "hgw/hypercore.hpp"

#include <string>
#include <vector>

namespace hgw::catalog {

/// Names of the built-in hypergroups, in a fixed order.
const std::vector<std::string>& names();

/// Throws ArgumentError for unknown names.
Hypergroup make(const std::string& name);

std::vector<Hypergroup> all();

}  // namespace hgw::catalog

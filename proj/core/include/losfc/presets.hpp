#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "losfc/scenario.hpp"

namespace losfc {

/// Two spacecraft tracking time-varying absolute and relative attitude and
/// position profiles (20 s).
Scenario two_spacecraft_tracking();

/// Four spacecraft synchronizing to a common attitude with constant
/// formation offsets (60 s).
Scenario four_spacecraft_sync();

/// Looks up a preset by name ("two_spacecraft_tracking" or
/// "four_spacecraft_sync"). Throws std::invalid_argument for other names.
Scenario preset(std::string_view name);

std::vector<std::string> preset_names();

}  // namespace losfc

#pragma once

#include <string_view>

namespace tmac::bundled {

/// Text of the shipped reference files, compiled into the library.
std::string_view smart_home_model();
std::string_view smart_home_catalog();
std::string_view masking_e2ee_scenario();

}  // namespace tmac::bundled

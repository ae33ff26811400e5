#pragma once

#include <string_view>

namespace selmerlab {

std::string_view version();

}  // namespace selmerlab

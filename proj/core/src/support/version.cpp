#include "selmerlab/support/version.hpp"

#ifndef SELMERLAB_VERSION_STRING
#define SELMERLAB_VERSION_STRING "0.0.0"
#endif

namespace selmerlab {

std::string_view version() { return SELMERLAB_VERSION_STRING; }

}  // namespace selmerlab

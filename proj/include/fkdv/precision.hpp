#pragma once

#include <boost/multiprecision/float128.hpp>

namespace fkdv {

// IEEE binary128, used only where double sampling noise would swamp the
// quantity being checked (the Fourier-coefficient oracle).
using quad = boost::multiprecision::float128;

}  // namespace fkdv

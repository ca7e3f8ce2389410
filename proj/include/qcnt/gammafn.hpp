#pragma once

#include "qcnt/numeric.hpp"

namespace qcnt {

/// Complex gamma function, Lanczos approximation (g = 7) with reflection for
/// Re(z) < 0.5.  Relative accuracy ~1e-13 on moderate arguments.
Complex gamma_complex(Complex z);

}  // namespace qcnt

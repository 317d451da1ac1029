#include "lwfr/br1.hpp"

namespace lwfr {

// br1 is header-only (templates over the equation set); this TU checks that
// the header stands alone.

} // namespace lwfr

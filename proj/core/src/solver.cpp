#include "lwfr/solver.hpp"

namespace lwfr {

// The solver is a class template; keep the common instantiations here so
// downstream targets do not rebuild them.
template class Solver<AdvDiff>;
template class Solver<NavierStokes>;

} // namespace lwfr

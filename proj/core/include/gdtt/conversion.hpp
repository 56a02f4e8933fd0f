// Free-function façade over the kernel's conversion operations.
#pragma once

#include "gdtt/typecheck.hpp"

namespace gdtt {

ExprPtr whnf(Kernel& k, const ClockSet& D, const Telescope& G, ExprPtr e,
             Fuel& fuel);
bool conv_term(Kernel& k, const ClockSet& D, const Telescope& G,
               const ExprPtr& classifier, ExprPtr t, ExprPtr u, Fuel& fuel);
bool conv_type(Kernel& k, const ClockSet& D, const Telescope& G, ExprPtr a,
               ExprPtr b, Fuel& fuel);

}  // namespace gdtt

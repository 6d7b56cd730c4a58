#pragma once

#include "ncrot/bimodule.hpp"

namespace ncrot::bimodule::detail {

void require_theta(double theta);
void require_convergent(const GaussAtom& a);
/// exp(2 pi i x)
cplx e(double x);

}  // namespace ncrot::bimodule::detail

#pragma once

#include <vector>

#include "gmmds/multipoly.hpp"
#include "gmmds/structures.hpp"

namespace gmmds {

/// P_1..P_m of a family, each padded to `m` coefficients (default F.m()).
std::vector<UniPolyOverRing> root_polys(const RootFamily& F, int m = 0);

/// W(P_1, ..., P_m) of a family.
MultiPoly w_polynomial(const RootFamily& F);

/// W of an arbitrary list of root sets over n variables with m coefficients
/// each; used for reduced families whose size differs from their degree bound.
MultiPoly w_polynomial(const std::vector<RootSet>& sets, int m, int nvars);

}  // namespace gmmds

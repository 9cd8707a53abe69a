#include "gmmds/wpoly.hpp"

namespace gmmds {

std::vector<UniPolyOverRing> root_polys(const RootFamily& F, int m) {
    if (m == 0) m = F.m();
    std::vector<UniPolyOverRing> out;
    out.reserve(F.sets().size());
    for (auto s : F.sets()) {
        const auto roots = s.elements();
        out.push_back(build_P(roots, m, F.n()));
    }
    return out;
}

MultiPoly w_polynomial(const RootFamily& F) { return wdet(root_polys(F)); }

MultiPoly w_polynomial(const std::vector<RootSet>& sets, int m, int nvars) {
    std::vector<UniPolyOverRing> polys;
    polys.reserve(sets.size());
    for (auto s : sets) {
        const auto roots = s.elements();
        polys.push_back(build_P(roots, m, nvars));
    }
    return wdet(polys);
}

}  // namespace gmmds

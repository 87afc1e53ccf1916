#pragma once

#include "fillvol/group.hpp"
#include "fillvol/ring.hpp"

#include <map>

namespace fillvol {

// An element of the group ring R[Gamma]: a finitely supported map
// Gamma -> R with no stored zero coefficients. Carriers (ring, group) live
// in the surrounding context; operations take them as parameters.
struct GroupRingElement {
    std::map<GroupElem, RElem> coeffs;

    bool is_zero() const { return coeffs.empty(); }
};

GroupRingElement gr_unit(const GroupModel& group, const Ring& ring);  // 1 * e
GroupRingElement gr_single(const GroupElem& g, const RElem& coeff, const Ring& ring);

GroupRingElement gr_add(const Ring& ring, const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement gr_neg(const Ring& ring, const GroupRingElement& a);
GroupRingElement gr_scale(const Ring& ring, const RElem& r, const GroupRingElement& a);
GroupRingElement gr_convolve(const Ring& ring, const GroupModel& group, const GroupRingElement& a,
                             const GroupRingElement& b);
// gamma * a
GroupRingElement gr_translate(const GroupModel& group, const GroupElem& gamma,
                              const GroupRingElement& a);

Rat l1_norm(const Ring& ring, const Norm& norm, const GroupRingElement& a);
// sum |a_gamma| (1 + l(gamma))
Rat weighted_norm(const Ring& ring, const Norm& norm, const GroupModel& group,
                  const GroupRingElement& a);

// A valid constant C with ||f(x)||^Gamma <= C ||x||^Gamma for the
// R[Gamma]-linear map sending basis element j to images[j]; C >= 1.
Rat operator_weighted_bound(const Ring& ring, const Norm& norm, const GroupModel& group,
                            const std::vector<std::vector<GroupRingElement>>& images);

}  // namespace fillvol

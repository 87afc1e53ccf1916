#include "fillvol/group_algebra.hpp"

namespace fillvol {

GroupRingElement gr_unit(const GroupModel& group, const Ring& ring) {
    return gr_single(group.identity(), ring.one(), ring);
}

GroupRingElement gr_single(const GroupElem& g, const RElem& coeff, const Ring& ring) {
    GroupRingElement out;
    if (!ring.is_zero(coeff)) out.coeffs[g] = coeff;
    return out;
}

GroupRingElement gr_add(const Ring& ring, const GroupRingElement& a, const GroupRingElement& b) {
    GroupRingElement out = a;
    for (const auto& [g, c] : b.coeffs) {
        auto it = out.coeffs.find(g);
        if (it == out.coeffs.end()) {
            out.coeffs[g] = c;
        } else {
            it->second = ring.add(it->second, c);
            if (ring.is_zero(it->second)) out.coeffs.erase(it);
        }
    }
    return out;
}

GroupRingElement gr_neg(const Ring& ring, const GroupRingElement& a) {
    GroupRingElement out;
    for (const auto& [g, c] : a.coeffs) out.coeffs[g] = ring.neg(c);
    return out;
}

GroupRingElement gr_scale(const Ring& ring, const RElem& r, const GroupRingElement& a) {
    GroupRingElement out;
    if (ring.is_zero(r)) return out;
    for (const auto& [g, c] : a.coeffs) {
        RElem v = ring.mul(r, c);
        if (!ring.is_zero(v)) out.coeffs[g] = v;
    }
    return out;
}

GroupRingElement gr_convolve(const Ring& ring, const GroupModel& group, const GroupRingElement& a,
                             const GroupRingElement& b) {
    GroupRingElement out;
    for (const auto& [g, cg] : a.coeffs)
        for (const auto& [h, ch] : b.coeffs) {
            GroupElem gh = group.multiply(g, h);
            RElem v = ring.mul(cg, ch);
            if (ring.is_zero(v)) continue;
            auto it = out.coeffs.find(gh);
            if (it == out.coeffs.end()) {
                out.coeffs[gh] = v;
            } else {
                it->second = ring.add(it->second, v);
                if (ring.is_zero(it->second)) out.coeffs.erase(it);
            }
        }
    return out;
}

GroupRingElement gr_translate(const GroupModel& group, const GroupElem& gamma,
                              const GroupRingElement& a) {
    GroupRingElement out;
    for (const auto& [g, c] : a.coeffs) out.coeffs[group.multiply(gamma, g)] = c;
    return out;
}

Rat l1_norm(const Ring& ring, const Norm& norm, const GroupRingElement& a) {
    Rat sum = 0;
    for (const auto& [g, c] : a.coeffs) sum += norm_value(ring, norm, c);
    return sum;
}

Rat weighted_norm(const Ring& ring, const Norm& norm, const GroupModel& group,
                  const GroupRingElement& a) {
    Rat sum = 0;
    for (const auto& [g, c] : a.coeffs)
        sum += norm_value(ring, norm, c) * Rat(1 + group.word_length(g));
    return sum;
}

Rat operator_weighted_bound(const Ring& ring, const Norm& norm, const GroupModel& group,
                            const std::vector<std::vector<GroupRingElement>>& images) {
    Rat best = 1;  // conventional floor
    for (const auto& image : images) {
        Rat v = 0;
        for (const auto& component : image) v += weighted_norm(ring, norm, group, component);
        if (v > best) best = v;
    }
    return best;
}

}  // namespace fillvol

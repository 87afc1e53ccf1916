#include "fillvol/group_algebra.hpp"

#include <doctest.h>

using namespace fillvol;

namespace {

GroupRingElement from_pairs(const Ring& ring,
                            const std::vector<std::pair<GroupElem, RElem>>& pairs) {
    GroupRingElement a;
    for (const auto& [g, r] : pairs) a = gr_add(ring, a, gr_single(g, r, ring));
    return a;
}

}  // namespace

TEST_CASE("convolution in Z[Z/3]") {
    Ring Z = Ring::integers();
    GroupModel g = GroupModel::cyclic(3, {});
    GroupElem e = g.identity(), t{{1}}, t2{{2}};
    auto a = from_pairs(Z, {{e, RElem(1)}, {t, RElem(-1)}});           // 1 - t
    auto b = from_pairs(Z, {{e, RElem(1)}, {t, RElem(1)}, {t2, RElem(1)}});  // N
    auto prod = gr_convolve(Z, g, a, b);
    CHECK(prod.is_zero());  // (1 - t) N = 0

    auto sq = gr_convolve(Z, g, a, a);  // 1 - 2t + t^2
    CHECK(sq.coeffs.at(e) == RElem(1));
    CHECK(sq.coeffs.at(t) == RElem(-2));
    CHECK(sq.coeffs.at(t2) == RElem(1));
}

TEST_CASE("zero coefficients are never stored") {
    Ring z4 = Ring::modular(4);
    GroupModel g = GroupModel::cyclic(5, {});
    auto a = gr_single(g.identity(), RElem(2), z4);
    auto sum = gr_add(z4, a, a);  // 2 + 2 = 0 in Z/4
    CHECK(sum.is_zero());
    auto sq = gr_convolve(z4, g, a, a);
    CHECK(sq.is_zero());
}

TEST_CASE("l1 and weighted norms") {
    Ring Z = Ring::integers();
    Norm abs = Norm::absolute();
    GroupModel g = GroupModel::cyclic(7, {});
    GroupElem e = g.identity(), t{{1}}, t3{{3}};
    auto a = from_pairs(Z, {{e, RElem(2)}, {t, RElem(-3)}, {t3, RElem(1)}});
    CHECK(l1_norm(Z, abs, a) == 6);
    // weights 1 + l(gamma): 1, 2, 4
    CHECK(weighted_norm(Z, abs, g, a) == 2 * 1 + 3 * 2 + 1 * 4);
    CHECK(l1_norm(Z, abs, GroupRingElement{}) == 0);
}

TEST_CASE("norms scale under translation as expected") {
    Ring Z = Ring::integers();
    Norm abs = Norm::absolute();
    GroupModel g = GroupModel::free_abelian(2, {});
    auto a = from_pairs(Z, {{GroupElem{{0, 0}}, RElem(1)}, {GroupElem{{1, 0}}, RElem(-2)}});
    auto moved = gr_translate(g, GroupElem{{0, 3}}, a);
    CHECK(l1_norm(Z, abs, moved) == l1_norm(Z, abs, a));
    CHECK(weighted_norm(Z, abs, g, moved) == 1 * 4 + 2 * 5);
}

TEST_CASE("operator weighted bound dominates all basis images") {
    Ring Z = Ring::integers();
    Norm abs = Norm::absolute();
    GroupModel g = GroupModel::cyclic(5, {});
    GroupElem e = g.identity(), t{{1}}, t2{{2}};
    // map with two basis elements in the source
    std::vector<std::vector<GroupRingElement>> images = {
        {from_pairs(Z, {{e, RElem(1)}, {t, RElem(-1)}})},
        {from_pairs(Z, {{t2, RElem(3)}})}};
    Rat C = operator_weighted_bound(Z, abs, g, images);
    CHECK(C >= 1);
    // C must dominate ||f(gamma b_j)|| / ||gamma b_j|| for every translate
    for (const auto& gamma : g.group_ball(2)) {
        Rat denom = 1 + g.word_length(gamma);
        for (const auto& img : images) {
            Rat num = weighted_norm(Z, abs, g, gr_translate(g, gamma, img[0]));
            CHECK(num <= C * denom);
        }
    }
}

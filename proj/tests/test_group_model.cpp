#include "fillvol/group.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>

using namespace fillvol;

TEST_CASE("cyclic group with default generator") {
    GroupModel g = GroupModel::cyclic(7, {});
    CHECK(g.finite());
    CHECK(g.order() == 7);
    CHECK(g.generators().size() == 1);
    GroupElem t = g.generators()[0];
    CHECK(g.multiply(t, g.inverse(t)) == g.identity());
    CHECK(g.word({1, 1, 1, 1, 1, 1, 1}) == g.identity());
    // distances on the 7-cycle: 0 1 2 3 3 2 1
    std::vector<long long> expect = {0, 1, 2, 3, 3, 2, 1};
    for (long long i = 0; i < 7; ++i) CHECK(g.word_length(GroupElem{{i}}) == expect[i]);
    CHECK(g.group_ball(1).size() == 3);
    CHECK(g.group_ball(3).size() == 7);
}

TEST_CASE("cyclic group with generators t^2, t^3") {
    GroupModel g = GroupModel::cyclic(6, {GroupElem{{2}}, GroupElem{{3}}});
    std::vector<long long> expect = {0, 2, 1, 1, 1, 2};
    for (long long i = 0; i < 6; ++i) CHECK(g.word_length(GroupElem{{i}}) == expect[i]);
    CHECK(g.word({1, 2}) == GroupElem{{5}});   // t^2 t^3
    CHECK(g.word({-1}) == GroupElem{{4}});     // t^-2
}

TEST_CASE("free abelian with standard generators") {
    GroupModel g = GroupModel::free_abelian(2, {});
    CHECK(!g.finite());
    CHECK(g.word_length(GroupElem{{3, -4}}) == 7);
    // |B(r)| = 2r^2 + 2r + 1 in the l1 metric
    CHECK(g.group_ball(0).size() == 1);
    CHECK(g.group_ball(1).size() == 5);
    CHECK(g.group_ball(3).size() == 25);
    GroupElem a{{2, 5}}, b{{-1, 1}};
    CHECK(g.multiply(a, b) == GroupElem{{1, 6}});
    CHECK(g.inverse(a) == GroupElem{{-2, -5}});
}

TEST_CASE("free abelian with chevron generators") {
    // Z^2 with generators (1,1) and (1,-1): the even sublattice is reached,
    // (1,0) is not in the subgroup... it is: (1,1)+(1,-1)=(2,0). (1,0) has
    // x+y odd and is unreachable, so its word length must throw past the cap.
    GroupModel g = GroupModel::free_abelian(2, {GroupElem{{1, 1}}, GroupElem{{1, -1}}});
    g.set_radius_cap(6);
    CHECK(g.word_length(GroupElem{{2, 0}}) == 2);
    CHECK(g.word_length(GroupElem{{0, 2}}) == 2);
    CHECK(g.word_length(GroupElem{{4, 0}}) == 4);
    CHECK_THROWS_AS(g.word_length(GroupElem{{1, 0}}), BudgetError);
}

TEST_CASE("finite multiplication table group") {
    // S3 as a table built from the six permutations of {0,1,2}
    std::vector<std::array<int, 3>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                             {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto index_of = [&](const std::array<int, 3>& p) {
        return static_cast<int>(std::find(perms.begin(), perms.end(), p) - perms.begin());
    };
    std::vector<std::vector<int>> mul(6, std::vector<int>(6));
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            std::array<int, 3> c{};
            for (int x = 0; x < 3; ++x) c[x] = perms[i][perms[j][x]];
            mul[i][j] = index_of(c);
        }
    int rot = index_of({1, 2, 0});
    int swp = index_of({1, 0, 2});
    GroupModel g = GroupModel::finite_table(mul, 0, {GroupElem{{rot}}, GroupElem{{swp}}});
    CHECK(g.order() == 6);
    CHECK(g.multiply(g.inverse(GroupElem{{rot}}), GroupElem{{rot}}) == g.identity());
    CHECK(g.word_length(g.identity()) == 0);
    CHECK(g.word_length(GroupElem{{rot}}) == 1);
    CHECK(g.word_length(GroupElem{{swp}}) == 1);
    CHECK(g.group_ball(2).size() == 6);
}

TEST_CASE("group ball is closed under inverses and sorted") {
    GroupModel g = GroupModel::cyclic(9, {});
    auto ball = g.group_ball(2);
    CHECK(std::is_sorted(ball.begin(), ball.end()));
    for (const auto& x : ball)
        CHECK(std::binary_search(ball.begin(), ball.end(), g.inverse(x)));
}

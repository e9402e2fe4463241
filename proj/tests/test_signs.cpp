#include "clx/errors.hpp"
#include "clx/signs.hpp"
#include "doctest.h"
#include "oracles.hpp"

#include <numeric>

using namespace clx;

TEST_SUITE("signs") {

TEST_CASE("concatenation sign")
{
    CHECK(sign_concat(2, 2, 2) == -1);
    CHECK(sign_concat(2, 1, 2) == 1);
    CHECK(sign_concat(3, 2, 2) == -1);
    CHECK_THROWS_AS(sign_concat(2, 3, 1), RangeError);
    for (int l1 = 1; l1 <= 5; ++l1)
        for (int j = 1; j <= l1; ++j)
            for (int l2 = 0; l2 <= 5; ++l2)
                CHECK(sign_concat(l1, j, l2) == (((l1 - j) * l2 + j - 1) % 2 ? -1 : 1));
}

TEST_CASE("quilt signs")
{
    for (int l1 = 1; l1 <= 4; ++l1)
        for (int j = 1; j <= l1; ++j)
            for (int l2 = 0; l2 <= 4; ++l2)
                CHECK(sign_lower_quilt(l1, j, l2) == (((l1 - j) * l2 + j) % 2 ? -1 : 1));
    CHECK(sign_upper_quilt({1, 1, 1}) == 1);
    CHECK(sign_upper_quilt({2, 1}) == -1);
    CHECK(sign_upper_quilt({1, 2}) == 1);
    CHECK(sign_upper_quilt({2, 2, 2}) == -1);
}

TEST_CASE("permutation sign agrees with inversion parity")
{
    std::vector<int> p(5);
    std::iota(p.begin(), p.end(), 1);
    do {
        CHECK(permutation_sign(p) == oracle::inversion_sign(p));
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK_THROWS_AS(permutation_sign({1, 1}), ShuffleError);
}

TEST_CASE("bullet sign")
{
    CHECK(sign_bullet(2, 1, 2, {1, 3, 2}) == -sign_concat(2, 1, 2));
    CHECK_THROWS_AS(sign_bullet(2, 2, 2, {2, 1, 3}), ShuffleError);
}

TEST_CASE("suspension sign")
{
    CHECK(suspension_sign({1, 1}) == -1);
    CHECK(suspension_sign({0, 1}) == 1);
    CHECK(suspension_sign({1, 0, 1}) == 1);
    CHECK(suspension_sign({1, 1, 0}) == -1);
}

TEST_CASE("reordering graded factors")
{
    CHECK(reorder_sign({1, 1}, {1, 0}) == -1);
    CHECK(reorder_sign({1, 2}, {1, 0}) == 1);
    CHECK(reorder_sign({1, 1, 1}, {2, 0, 1}) == 1);
}

}

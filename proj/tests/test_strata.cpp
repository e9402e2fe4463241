#include "clx/errors.hpp"
#include "clx/strata.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace clx;

TEST_SUITE("strata") {

TEST_CASE("dimension formulas")
{
    CHECK(dimension(Family::K, 4, 0) == 2);
    CHECK(dimension(Family::K, 2, 1) == 2);
    CHECK(dimension(Family::Q, 3, 0) == 2);
    CHECK(dimension(Family::Q, 1, 1) == 2);
    CHECK(dimension(Family::K, 2, 0) == 0);
    CHECK_THROWS_AS(dimension(Family::K, 1, 0), StabilityError);
    CHECK_THROWS_AS(dimension(Family::Q, 0, 0), StabilityError);
}

TEST_CASE("associahedron f-vectors against the interval oracle")
{
    CHECK(f_vector(Family::K, 4, 0) == std::vector<long long>{5, 5, 1});
    CHECK(f_vector(Family::K, 5, 0) == std::vector<long long>{14, 21, 9, 1});
    for (int l = 3; l <= 7; ++l)
        CHECK(f_vector(Family::K, l, 0) == oracle::associahedron_fvector(l));
}

TEST_CASE("quilted f-vectors")
{
    CHECK(f_vector(Family::Q, 2, 0) == std::vector<long long>{2, 1});
    CHECK(f_vector(Family::Q, 1, 1) == std::vector<long long>{6, 6, 1});
    // multiplihedron J_3 is a hexagon
    CHECK(f_vector(Family::Q, 3, 0) == std::vector<long long>{6, 6, 1});
}

TEST_CASE("counting agrees with the poset wherever both fit")
{
    for (auto fam : {Family::K, Family::Q})
        for (int l = 0; l <= 5; ++l)
            for (int k = 0; k <= 2; ++k) {
                if (fam == Family::K && !is_stable_pair(l, k))
                    continue;
                if (fam == Family::Q && l + 2 * k < 1)
                    continue;
                if (l + k > 5)
                    continue;
                CAPTURE(l);
                CAPTURE(k);
                CHECK(stratum_counts(fam, l, k) == f_vector(fam, l, k));
            }
}

TEST_CASE("covers drop dimension by one")
{
    for (auto [fam, l, k] : {std::tuple{Family::K, 5, 0}, {Family::K, 3, 1}, {Family::Q, 3, 1}}) {
        const FacePoset p = face_poset(fam, l, k);
        for (const auto& c : p.covers)
            CHECK(p.strata[c.cell].dim == p.strata[c.face].dim + 1);
    }
}

TEST_CASE("boundary squares to zero")
{
    for (int l = 2; l <= 6; ++l)
        CHECK(boundary_square_witness(face_poset(Family::K, l, 0)) == -1);
    for (int l = 1; l <= 4; ++l)
        CHECK(boundary_square_witness(face_poset(Family::Q, l, 0)) == -1);
    CHECK(boundary_square_witness(face_poset(Family::K, 2, 2)) == -1);
    CHECK(boundary_square_witness(face_poset(Family::Q, 1, 1)) == -1);
}

TEST_CASE("corner decomposition of a symmetric stratum")
{
    Stratum s;
    s.family = Family::Bullet;
    s.tree = parse_text("[x [x x]:1 x]:1");
    s.perm = {3, 4, 1, 2};
    const CornerProduct c = corner_decomposition(s);
    CHECK(c.p_min == 1);
    CHECK(c.sigma == std::vector<int>{1, 4, 2, 3});
    CHECK(c.sign == 1);
    CHECK(c.j == 2);
    CHECK(to_text(regraft(c)) == to_text(s.tree));
}

TEST_CASE("tiles")
{
    const long long pairs[] = {0, 0, 1, 6, 36, 240};
    for (int l = 1; l <= 5; ++l) {
        const TileComplex tc = tile_complex(l, 1);
        CHECK(static_cast<long long>(tc.tiles.size()) == oracle::factorial(l));
        CHECK(static_cast<long long>(tc.pairs.size()) >= pairs[l]);
        CHECK(orientation_consistency(tc));
        for (size_t i = 0; i < tc.tiles.size(); ++i)
            CHECK(tc.tile_sign[i] == oracle::inversion_sign(tc.tiles[i]));
    }
    CHECK_THROWS_AS(tile_complex(7, 0), CapError);
}

TEST_CASE("local group at an internal ghost")
{
    Stratum s;
    s.family = Family::Bullet;
    s.tree = parse_text("[[]:1 []:1]");
    const GroupModel g = local_group_model(s);
    REQUIRE(g.ghosts.size() == 1);
    REQUIRE(g.generators.size() == 1);
    CHECK(g.generators[0] == std::vector<int>{1, 2});
}

TEST_CASE("collar is connected")
{
    for (auto [l, k] : {std::pair{3, 0}, {4, 0}, {2, 1}}) {
        const Collar c = collar_cells(l, k);
        CHECK(collar_connected(c));
        CHECK(c.cells.size() == face_poset(Family::K, l, k).strata.size());
    }
}

}

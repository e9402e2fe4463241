#include "clx/errors.hpp"
#include "clx/indexcalc.hpp"
#include "clx/strata.hpp"
#include "doctest.h"
#include "oracles.hpp"

#include <random>

using namespace clx;

TEST_SUITE("indexcalc") {

TEST_CASE("index formula")
{
    const ClusterType c = smooth_cluster(parse_text("[x x]"));
    CHECK(index_cr(c, {0, {0, 0}, {}}, {{0}}, 3) == 0);
    CHECK(index_cr(c, {3, {0, 0}, {}}, {{0}}, 3) == 3);
    CHECK(index_cr(c, {1, {1, 0}, {}}, {{4}}, 3) == 4);
    ClusterType ci = c;
    ci.interior_incidence = 1;
    CHECK(index_cr(ci, {3, {0, 0}, {}}, {{0}}, 3) == 0);
    CHECK_THROWS_AS(index_cr(c, {0, {0}, {}}, {{0}}, 3), ShapeError);
    CHECK_THROWS_AS(index_cr(c, {4, {0, 0}, {}}, {{0}}, 3), ShapeError);
}

TEST_CASE("cokernel dimensions")
{
    CHECK(coker_dim(smooth_cluster(parse_text("[x x]:1")), 2, 1) == 2);
    ClusterType b = smooth_cluster(parse_text("[x [x x]:1]"));
    CHECK(coker_dim(b, 3, 1) == 3);
    b.edges[1] = EdgeState::Broken;
    CHECK(coker_dim(b, 3, 1) == 2);
    ClusterType c = smooth_cluster(parse_text("[x x]:1"));
    c.complex_nodes = 1;
    CHECK(coker_dim(c, 2, 1) == 0);
    CHECK(coker_dim(smooth_cluster(parse_text("[x]")), 1, 0) == 0);
    c.complex_nodes = 2;
    CHECK_THROWS_AS(coker_dim(c, 2, 1), StabilityError);
}

TEST_CASE("cokernel equals ambient minus codimension on small enumerations")
{
    for (int l = 0; l <= 4; ++l)
        for (int k = 0; k <= 1; ++k) {
            if (!is_stable_pair(l, k))
                continue;
            const int amb = dimension(Family::K, l, k);
            for (const auto& ct : enumerate_cluster_types(l, k))
                CHECK(coker_dim(ct, l, k) == amb - cluster_codim(ct));
        }
    CHECK(count_cluster_types(3, 0) == 7);
    CHECK_THROWS_AS(enumerate_cluster_types(5, 2), CapError);
}

TEST_CASE("index is additive under concatenation")
{
    std::mt19937_64 rng(5);
    const ClusterType a = smooth_cluster(parse_text("[x [x x]]"));
    const ClusterType b = smooth_cluster(parse_text("[x x x]:1"));
    const int n = 3;
    for (int trial = 0; trial < 200; ++trial) {
        auto r = [&] { return static_cast<int>(rng() % (n + 1)); };
        EndpointCondition ea{r(), {r(), r(), r()}, {}};
        const int j = 1 + static_cast<int>(rng() % 3);
        EndpointCondition eb{ea.leaves[static_cast<size_t>(j - 1)], {r(), r(), r()}, {}};
        BoundaryConditionIndex ma{{r(), r()}}, mb{{r()}};
        const auto s = static_cast<EdgeState>(rng() % 3);
        const Glued g = concatenate(a, ea, ma, j, b, eb, mb, s);
        CHECK(leaf_count(g.ct.tree) == 5);
        CHECK(index_cr(g.ct, g.ec, g.mu, n) == index_cr(a, ea, ma, n) + index_cr(b, eb, mb, n));
    }
    EndpointCondition ea{0, {1, 1, 1}, {}}, eb{0, {0, 0, 0}, {}};
    CHECK_THROWS_AS(concatenate(a, ea, {{0, 0}}, 1, b, eb, {{0}}, EdgeState::Line), ShapeError);
}

TEST_CASE("trajectories")
{
    CHECK(trajectory_index(2, 2, 0) == 0);
    CHECK(rigid_m(3, trajectory_index(1, 2, 0)));
    CHECK(rigid_quilted(2, trajectory_index(0, 1, 0)));
    CHECK(trajectory_energy(4, 2) == 2);
    CHECK_THROWS_AS(trajectory_energy(3, 2), MonotoneError);
    CHECK_THROWS_AS(check_monotone({{2, 3}}, 2), MonotoneError);
}

TEST_CASE("type I surgery")
{
    const ClusterType c = smooth_cluster(parse_text("[x x]:4"));
    SurgeryPlan s;
    s.kind = Surgery::I;
    s.disk = 0;
    s.d = 1;
    auto r = reduce(c, {{4}}, s);
    CHECK(to_text(r.after.tree) == "[x x]:4");
    CHECK(r.removed_marks == 0);
    CHECK_FALSE(reduction_index_audit(r, 1, 3).applies);
    s.d = 2;
    r = reduce(c, {{4}}, s);
    CHECK(to_text(r.after.tree) == "[x x]:2");
    CHECK(r.mu_after.per_disk[0] == 2);
    CHECK(r.removed_marks == 2);
    const AuditReport a = reduction_index_audit(r, 1, 3);
    CHECK(a.maslov_drop >= 2);
    CHECK(a.applies);
    CHECK(a.closed_form == 2 * 2 - 1);
    CHECK(a.quotient_bound == a.closed_form);
    s.d = 3;
    CHECK_THROWS_AS(reduce(c, {{4}}, s), SurgeryError);
}

TEST_CASE("type II surgeries")
{
    const ClusterType c = smooth_cluster(parse_text("[x []:1 [x x]]"));
    SurgeryPlan s;
    s.kind = Surgery::IIa;
    s.upper = 2;
    s.lower = 0;
    auto r = reduce(c, {{0, 2, 0}}, s);
    CHECK(to_text(r.after.tree) == "[x []:1 x x]");
    s.kind = Surgery::IIb;
    r = reduce(c, {{2, 0, 0}}, s);
    CHECK(to_text(r.after.tree) == "[x []:1 x x]");
    CHECK(r.mu_after.total() == 0);
    s.upper = 0;
    s.lower = 2;
    CHECK_THROWS_AS(reduce(c, {{0, 2, 0}}, s), SurgeryError);
}

TEST_CASE("type III keeps every root-to-leaf path")
{
    const ClusterType c = smooth_cluster(parse_text("[x []:1 [x x]]"));
    SurgeryPlan s;
    s.kind = Surgery::III;
    const auto r = reduce(c, {{0, 2, 0}}, s);
    CHECK(to_text(r.after.tree) == "[x [x x]]");
    CHECK(leaf_count(r.after.tree) == 3);
    // idempotent
    const auto r2 = reduce(r.after, r.mu_after, s);
    CHECK(to_text(r2.after.tree) == to_text(r.after.tree));
    CHECK(r2.removed_marks == 0);
    const AuditReport a = reduction_index_audit(r, 0, 3);
    CHECK(a.closed_form == -1);
}

TEST_CASE("generalized surgeries and the incidence bound")
{
    const ClusterType c = smooth_cluster(parse_text("[x []:1 [x x]]"));
    SurgeryPlan s;
    s.kind = Surgery::GenII;
    s.disk = 1;
    s.incidence = 1;
    const auto r = reduce(c, {{0, 2, 0}}, s);
    CHECK(r.N == 1);
    const AuditReport a = reduction_index_audit(r, 0, 2);
    CHECK(a.closed_form == 2 * a.k_after - 1 - 1);
    CHECK(a.formula == "2k(r(C)) - 1 - (n-1)N");
    const AuditReport a3 = reduction_index_audit(r, 0, 3);
    CHECK(a3.closed_form == 2 * a3.k_after - 1);

    SurgeryPlan g;
    g.kind = Surgery::GenI;
    g.disk = 0;
    g.parts = {{2, 2}};
    const auto r1 = reduce(smooth_cluster(parse_text("[x x]:1")), {{4}}, g);
    CHECK(r1.mu_after.total() == 2);
    g.parts = {{2, 1}};
    CHECK_THROWS_AS(reduce(smooth_cluster(parse_text("[x x]:1")), {{4}}, g), SurgeryError);
}

TEST_CASE("end labelings")
{
    CHECK(enumerate_otimes_labelings(3, 0).size() == 1);
    CHECK(enumerate_otimes_labelings(1, 1).size() == 2);
    for (int l = 1; l <= 4; ++l)
        for (int c = 0; c <= 2; ++c)
            CHECK(static_cast<long long>(enumerate_otimes_labelings(l, c).size()) ==
                  oracle::otimes_labeling_count(l, c));
    const auto b0 = enumerate_bullet_labelings(3, 0);
    REQUIRE(b0.size() == 1);
    CHECK(b0[0] == std::vector<int>{1, 1, 1});
    for (int l = 0; l <= 4; ++l)
        for (int c = 0; c <= 3; ++c)
            CHECK(enumerate_bullet_labelings(l, c) == oracle::bullet_labelings(l, c));
}

TEST_CASE("induced labelings are coherent on nested components")
{
    const int c = 3;
    for (const auto& lab : enumerate_otimes_labelings(5, c)) {
        // component over leaves 2..5, then its sub-component over its leaves 2..3
        const OtimesLabeling mid = induced_otimes(lab, {{2, 3}, {4, 5}});
        const OtimesLabeling inner = induced_otimes(mid, {{2, 2}});
        const OtimesLabeling direct = induced_otimes(lab, {{4, 5}});
        CHECK(inner == direct);
    }
    for (const auto& lab : enumerate_bullet_labelings(4, c)) {
        const auto mid = induced_bullet(lab, c, {{1, 2}, {3}, {4}});
        const auto inner = induced_bullet(mid, c, {{1, 2}});
        CHECK(inner == induced_bullet(lab, c, {{1, 2, 3}}));
    }
}

}

#include "clx/errors.hpp"
#include "clx/io.hpp"
#include "doctest.h"

using namespace clx;

TEST_SUITE("io") {

TEST_CASE("tree encoding")
{
    const Tree t = parse_text("[x c[x x]:1]");
    const Json j = tree_to_json(t);
    CHECK(j.dump() ==
          R"({"b":1,"i":0,"col":false,"children":["leaf",{"b":2,"i":1,"col":true,"children":["leaf","leaf"]}]})");
    CHECK(tree_from_json(j) == t);
    Json bad = j;
    bad["b"] = 3;
    CHECK_THROWS_AS(tree_from_json(bad), ParseError);
    CHECK_THROWS_AS(tree_from_json(Json("stem")), ParseError);
}

TEST_CASE("labelings and powers")
{
    EdgeLabeling x{{1, Rational(1, 2)}, {3, Rational(2)}};
    const Json j = labeling_to_json(x);
    CHECK(j.dump() == R"({"1":"1/2","3":"2"})");
    CHECK(labeling_from_json(j) == x);
    const Json p = sympow_to_json(SymPow{Rational(1, 2), Rational(3, 4)});
    CHECK(p.dump() == R"({"base":"1/2","exp":"3/4"})");
    CHECK(sympow_from_json(p) == SymPow{Rational(1, 2), Rational(3, 4)});
    CHECK_THROWS_AS(labeling_from_json(Json::parse(R"({"a":"1"})")), ParseError);
}

TEST_CASE("family files round trip")
{
    for (auto& [name, f] : example_library()) {
        const OperationFamily g = family_from_json(family_to_json(f));
        CHECK(g.ops == f.ops);
        CHECK(g.gens.size() == f.gens.size());
    }
    const OperationFamily c = example_library().at("circle");
    const OperationFamily h = family_from_json(family_to_json(identity_morphism(c)), &c, &c);
    CHECK(h.role == Role::H);
    CHECK(h.ops.size() == 2);
}

TEST_CASE("shipped data files load")
{
    const std::string dir = CLX_DATA_DIR;
    auto lib = example_library();
    for (const char* n : {"poly", "exterior", "exterior2", "circle"})
        CHECK(family_from_json(read_json_file(dir + "/" + n + ".json")).ops == lib.at(n).ops);
    const FamilyTemplate t = template_from_json(read_json_file(dir + "/quantum_circle_template.json"));
    CHECK(t.open.size() == 2);
    const ClusterInput ci = cluster_from_json(read_json_file(dir + "/cluster_side_branch.json"));
    CHECK(ci.n == 3);
    CHECK(count_state(ci.ct, EdgeState::Broken) == 1);
}

TEST_CASE("malformed family files")
{
    CHECK_THROWS_AS(family_from_json(Json::parse(R"({"generators":[{"sym":"a","coidx":0}],"ops":{"q":{}}})")),
                    ParseError);
    CHECK_THROWS_AS(family_from_json(Json::parse(
                        R"({"generators":[{"sym":"a","coidx":0}],"ops":{"m":{"2":[{"in":["a","b"],"out":[]}]}}})")),
                    ParseError);
    CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), ParseError);
}

TEST_CASE("poset export")
{
    const FacePoset p = face_poset(Family::K, 4, 0);
    const Json j = poset_to_json(p);
    CHECK(j["schema"] == kPosetSchema);
    CHECK(j["nodes"].size() == 11);
    CHECK(j["arcs"].size() == p.covers.size());
    const std::string dot = poset_to_dot(p);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(poset_to_json(face_poset(Family::K, 4, 0)).dump() == j.dump());
}

TEST_CASE("cluster files")
{
    ClusterInput c;
    c.ct = smooth_cluster(parse_text("[x [x x]]"));
    c.ct.edges[1] = EdgeState::Broken;
    c.ec = {1, {0, 0, 1}, {1}};
    c.mu = {{2, 0}};
    c.n = 2;
    const ClusterInput d = cluster_from_json(cluster_to_json(c));
    CHECK(d.ct.edges == c.ct.edges);
    CHECK(d.ec.breakings == c.ec.breakings);
    CHECK(d.mu.per_disk == c.mu.per_disk);
}

}

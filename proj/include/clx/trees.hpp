#pragma once
#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace clx {

// A vertex of a rooted planar tree. `kids` lists the boundary slots above the
// vertex in planar order; a slot is either a leaf (boundary marking) or a
// child vertex joined by an interior edge. Interior markings are a count.
struct Node {
    bool leaf = false;
    int marks = 0;
    bool colored = false;
    std::vector<Node> kids;

    bool operator==(const Node&) const = default;
    std::strong_ordering operator<=>(const Node& o) const;
};

using Tree = Node;

Tree make_leaf();
Tree make_vertex(int marks, std::vector<Tree> kids, bool colored = false);
Tree corolla(int l, int k, bool colored = false);

int leaf_count(const Tree& t);
int mark_count(const Tree& t);
int vertex_count(const Tree& t);
int edge_count(const Tree& t); // interior edges
int colored_count(const Tree& t);
int boundary_marks(const Node& v); // leaf slots of a single vertex

// per-vertex stability: slots + 1 + 2 marks >= 3 (>= 2 when colored)
bool vertex_stable(const Node& v);
bool is_stable(const Tree& t);
// every root-to-leaf path meets exactly one colored vertex and no path meets
// two; leafless uncolored branches may sit below the colors
bool satisfies_color_axiom(const Tree& t);
bool is_stable_pair(int l, int k);

// caps: l <= 10, k <= 4
void check_caps(int l, int k);

// stable uncolored planar trees with l leaves, k marks, `codim` interior edges
std::vector<Tree> enumerate_types(int l, int k, int codim);
std::vector<Tree> enumerate_all_types(int l, int k);
// stable colored trees (quilted strata)
std::vector<Tree> enumerate_colored_types(int l, int k);

// dimension of the stratum of a tree, summed over vertices
int tree_dimension(const Tree& t);

// Flattened view. Vertex 0 is the root; vertex ids follow planar preorder,
// so interior edge e (1 <= e < vertex_count) is the edge below vertex e.
struct FlatVertex {
    int marks = 0;
    bool colored = false;
    int parent = -1;
    std::vector<int> slots; // -1 = leaf, otherwise child vertex id
};
struct Flat {
    std::vector<FlatVertex> v;
};
Flat flatten(const Tree& t);
Tree unflatten(const Flat& f, int root = 0);
// vertex ids of `f` in the planar preorder of unflatten(f)
std::vector<int> preorder(const Flat& f, int root = 0);
// leaf numbers (1-based, planar) under each vertex, as [first, last) ranges
std::vector<std::pair<int, int>> leaf_ranges(const Flat& f);

Tree contract(const Tree& t, int e);
Tree contract_edges(const Tree& t, std::vector<int> edges);
bool leq(const Tree& t1, const Tree& t2);
std::vector<Tree> maximal_types(int l, int k);

std::string to_text(const Tree& t);
Tree parse_text(const std::string& s);

} // namespace clx

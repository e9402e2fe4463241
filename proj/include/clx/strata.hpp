#pragma once
#include "clx/trees.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace clx {

// K = disks with ordered boundary markings, Q = quilted disks,
// Bullet = symmetric tiles (one copy of K per ordering of the leaves)
enum class Family { K, Q, Bullet };

std::string family_name(Family f);
Family parse_family(const std::string& s);

int dimension(Family f, int l, int k);

struct Stratum {
    Family family = Family::K;
    Tree tree;
    int dim = 0;
    int codim = 0;
    std::vector<int> perm; // Bullet: label carried by each leaf position (1-based)
};

enum class FacetKind { Plain, Lower, Upper };
std::string facet_kind_name(FacetKind k);

// covering relation: `face` is a codimension-one face of `cell`, with the
// incidence sign of the cellular boundary
struct Cover {
    int face = 0;
    int cell = 0;
    int sign = 1;
    FacetKind kind = FacetKind::Plain;
};

struct FacePoset {
    Family family = Family::K;
    int l = 0, k = 0;
    std::vector<Stratum> strata; // sorted by decreasing dim, then tree order
    std::vector<Cover> covers;
    std::map<Tree, int> index;

    int find(const Tree& t) const; // -1 if absent
    std::vector<long long> f_vector() const; // counts by dimension 0..top
};

FacePoset face_poset(Family f, int l, int k);
std::vector<long long> f_vector(Family f, int l, int k);
// the same counts by a memoized count over the tree grammar, without
// building any tree; usable far beyond the sizes face_poset can hold
std::vector<long long> stratum_counts(Family f, int l, int k);

// Sparse integer boundary: for each cell, (face, coefficient) pairs.
using Boundary = std::vector<std::vector<std::pair<int, long long>>>;
Boundary cellular_boundary(const FacePoset& p);
// first cell whose boundary of boundary is nonzero, or -1
int boundary_square_witness(const FacePoset& p);

// Corners as products of vertex factors.
struct Factor {
    Family family = Family::K; // Q for a colored vertex
    int l = 0;                 // slots of the vertex
    int k = 0;
    int parent = -1; // factor index receiving this factor's root
    int slot = 0;    // 1-based slot of the parent
    std::vector<int> order; // Bullet: induced ordering of the slots (ranks)
};

struct CornerProduct {
    std::vector<Factor> factors; // planar preorder of the vertices
    FacetKind kind = FacetKind::Plain;
    int j = 0;     // codimension one: grafting slot in the lowest factor
    int p_min = 0; // Bullet codimension one
    std::vector<int> sigma;
    int sign = 1; // Bullet codimension one: shuffle-corrected concatenation sign
};

CornerProduct corner_decomposition(const Stratum& s);
Tree regraft(const CornerProduct& c);

// induced orderings by the minimum rule; leafless slots rank after all
// leaf-bearing slots, in planar order
std::vector<std::vector<int>> minimum_rule_orders(const Tree& t, const std::vector<int>& perm);

// ---------------------------------------------------------------- tiles

struct TilePair {
    int type = 1; // I, II or III
    int tile_a = 0, tile_b = 0;
    Tree tree_a, tree_b;
    int ghost = 0; // preorder id of the transposed ghost in tree_a
};

struct TileComplex {
    int l = 0, k = 0;
    std::vector<std::vector<int>> tiles; // permutations in lexicographic order
    std::vector<int> tile_sign;
    FacePoset poset; // the shared K face poset of one tile
    std::vector<TilePair> pairs;
};

TileComplex tile_complex(int l, int k);
bool orientation_consistency(const TileComplex& tc, std::string* why = nullptr);

struct GroupModel {
    int codim = 0;
    std::vector<int> ghosts;                    // preorder ids of ghost vertices
    std::vector<std::vector<int>> generators;   // per ghost: flipped normal coordinates (edge ids)
};
GroupModel local_group_model(const Stratum& s);

// ---------------------------------------------------------------- collars

struct CollarCell {
    int stratum = 0;
    Tree tree;
    std::vector<int> labeled_edges; // edges carrying a [0,1] label
    int dim = 0;
};

struct Collar {
    std::vector<CollarCell> cells;
    std::vector<std::pair<int, int>> gluings; // (coarser cell, finer cell)
};

Collar collar_cells(int l, int k);
bool collar_connected(const Collar& c);

} // namespace clx

#pragma once
#include "clx/rational.hpp"
#include "clx/trees.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace clx {

// Interior edge id (preorder id of the upper vertex, 1-based) -> label.
using EdgeLabeling = std::map<int, Rational>;

// edge id in the contracted tree for each surviving edge of t, or 0
std::vector<int> surviving_edges(const Tree& t, const std::vector<int>& contracted);

EdgeLabeling restrict_plain(const EdgeLabeling& x, const Tree& t2, const std::vector<int>& contracted);
EdgeLabeling restrict_balanced(const EdgeLabeling& x, const Tree& t2,
                               const std::vector<int>& contracted);

// edges whose upper vertex is colored or lies under the colors
std::vector<bool> below_color_edges(const Tree& t);
bool is_balanced(const Tree& t, const EdgeLabeling& x);
// product of labels from the root up to a colored vertex (first one found)
Rational root_to_color_product(const Tree& t, const EdgeLabeling& x);

// exact x^(p/q) kept symbolic, with exact comparison
struct SymPow {
    Rational base;
    Rational exp;
};
int compare(const SymPow& a, const SymPow& b); // -1, 0, 1
bool operator==(const SymPow& a, const SymPow& b);

struct ExponentData {
    std::map<int, int> b;      // edges from l down to the root, inclusive (below colors)
    std::map<int, Rational> M; // per-edge exponent
    std::map<int, Rational> N; // exponents after restriction (= M without contraction)
};
ExponentData exponents(const Tree& t);
// N on the surviving edges of t after contracting `contracted`, keyed by the
// edge ids of the contracted tree
std::map<int, Rational> restricted_exponents(const Tree& t, const std::vector<int>& contracted);

// linear subtrees from the root to each colored vertex: their edge lists
std::vector<std::vector<int>> root_color_paths(const Tree& t);

EdgeLabeling chi_unquilted(const EdgeLabeling& x, const Rational& eps);
// no label lies in [0, eps)
bool avoids_small_labels(const EdgeLabeling& x, const Rational& eps);

// Polynomials and rational functions in u = eps^(1/D) with rational coefficients.
struct Poly {
    std::vector<Rational> c; // c[i] * u^i
    static Poly constant(const Rational& r);
    static Poly monomial(const Rational& r, int deg);
    Poly operator+(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    bool operator==(const Poly& o) const;
    bool is_zero() const;
    Rational eval(const Rational& u) const;
    void trim();
};

struct RatFun {
    Poly num = Poly::constant(1);
    Poly den = Poly::constant(1);
    RatFun operator*(const RatFun& o) const;
    bool same_as(const RatFun& o) const; // num*o.den == o.num*den
    Rational eval(const Rational& u) const;
    std::string to_string(const std::string& var = "u") const;
};

struct SymLabeling {
    Rational eps;
    int D = 1; // labels are rational functions of u = eps^(1/D)
    std::map<int, RatFun> value;

    // exact values when eps is a perfect D-th power
    std::optional<EdgeLabeling> evaluate() const;
};

bool is_balanced(const Tree& t, const SymLabeling& x);
RatFun root_to_color_product(const Tree& t, const SymLabeling& x);

SymLabeling chi_quilted(const Tree& t, const EdgeLabeling& x, const Rational& eps);
// the labeling l -> eps^(M_l) in the same variable
SymLabeling eps_power_labeling(const Tree& t, const Rational& eps);

// exact D-th root of a positive rational, if it exists
std::optional<Rational> exact_root(const Rational& r, unsigned long d);

// Simple-ratio chart of a maximal (possibly colored) tree.
struct DiskCoords {
    std::vector<Rational> x;                          // boundary markings x_1 < ... < x_l
    std::vector<std::pair<Rational, Rational>> z;     // interior marks (re, im), planar order
    std::optional<Rational> seam;                     // seam height, colored trees
};

EdgeLabeling simple_ratio_chart(const DiskCoords& d, const Tree& t);
DiskCoords chart_inverse(const EdgeLabeling& x, const Tree& t);
// translate so y_1 = 0 and scale so the root gap is 1
DiskCoords normalize_coords(const DiskCoords& d, const Tree& t);
bool same_coords(const DiskCoords& a, const DiskCoords& b);

} // namespace clx

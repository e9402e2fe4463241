#pragma once
#include <vector>

namespace clx {

// all signs are +1 / -1 ints computed from integer parities

inline int parity_sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

// (-1)^{(l1-j) l2 + (j-1)}; j in 1..l1
int sign_concat(int l1, int j, int l2);
// (-1)^{(l1-j) l2 + j}
int sign_lower_quilt(int l1, int j, int l2);
// (-1)^{sum_i (q-i)(l_i - 1)}
int sign_upper_quilt(const std::vector<int>& ls);

// sign of a permutation given as images of 1..n (1-based)
int permutation_sign(const std::vector<int>& perm);

// concat sign at j = p_min times the shuffle parity; sigma must fix 1..p_min
int sign_bullet(int l1, int p_min, int l2, const std::vector<int>& sigma);

// Koszul sign for applying an operator of degree op_degree at position j
// (1-based, arity window of length `arity`) inside a word with the given
// factor degrees: (-1)^{op_degree * sum_{i<j} deg(x_i)}
int koszul_apply(int op_degree, int arity, int j, const std::vector<int>& degrees);

// Getzler-Jones exponent for m_{l1}(.., m_{l2}(x_j..), ..), as a parity 0/1
int epsilon_gj(int l1, int j, int l2, const std::vector<int>& degrees);
// suspended exponent mu(x_1)+..+mu(x_{j-1}) + (j-1), unsuspended degrees in
int epsilon_bar(int j, const std::vector<int>& degrees);

// inverse of the l-th tensor power of s applied to s x_1 (x) .. (x) s x_l:
// (-1)^{sum_a (l-a) mu_a}
int suspension_sign(const std::vector<int>& degrees);

// Koszul sign of reordering graded factors: `order[i]` is the position in
// the target sequence of the i-th source factor
int reorder_sign(const std::vector<int>& degrees, const std::vector<int>& order);

} // namespace clx

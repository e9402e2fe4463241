#include "clx/signs.hpp"
#include "clx/errors.hpp"

#include <string>

namespace clx {

int sign_concat(int l1, int j, int l2)
{
    if (l1 < 1 || j < 1 || j > l1)
        throw RangeError("j=" + std::to_string(j) + " outside 1.." + std::to_string(l1));
    if (l2 < 0)
        throw RangeError("negative l2");
    return parity_sign(static_cast<long long>(l1 - j) * l2 + (j - 1));
}

int sign_lower_quilt(int l1, int j, int l2)
{
    return -sign_concat(l1, j, l2);
}

int sign_upper_quilt(const std::vector<int>& ls)
{
    const long long q = static_cast<long long>(ls.size());
    long long e = 0;
    for (long long i = 1; i <= q; ++i)
        e += (q - i) * (ls[i - 1] - 1);
    return parity_sign(e);
}

int permutation_sign(const std::vector<int>& perm)
{
    const int n = static_cast<int>(perm.size());
    std::vector<bool> hit(n, false);
    for (int v : perm) {
        if (v < 1 || v > n || hit[v - 1])
            throw ShuffleError("not a permutation of 1.." + std::to_string(n));
        hit[v - 1] = true;
    }
    std::vector<bool> seen(n, false);
    int s = 1;
    for (int i = 0; i < n; ++i) {
        int len = 0;
        for (int k = i; !seen[k]; k = perm[k] - 1) {
            seen[k] = true;
            ++len;
        }
        if (len > 0 && len % 2 == 0)
            s = -s;
    }
    return s;
}

int sign_bullet(int l1, int p_min, int l2, const std::vector<int>& sigma)
{
    for (int j = 1; j <= p_min && j <= static_cast<int>(sigma.size()); ++j)
        if (sigma[j - 1] != j)
            throw ShuffleError("sigma moves " + std::to_string(j) + " <= p_min");
    return sign_concat(l1, p_min, l2) * permutation_sign(sigma);
}

int koszul_apply(int op_degree, int arity, int j, const std::vector<int>& degrees)
{
    const int q = static_cast<int>(degrees.size());
    if (j < 1 || arity < 0 || j - 1 + arity > q)
        throw ShapeError("operator window [" + std::to_string(j) + ", +" +
                         std::to_string(arity) + ") exceeds cardinality " + std::to_string(q));
    long long pre = 0;
    for (int i = 0; i < j - 1; ++i)
        pre += degrees[i];
    return parity_sign(static_cast<long long>(op_degree) * pre);
}

int epsilon_gj(int l1, int j, int l2, const std::vector<int>& degrees)
{
    long long pre = 0;
    for (int i = 0; i < j - 1; ++i)
        pre += degrees.at(i);
    long long e = static_cast<long long>(l2) * pre + static_cast<long long>(j - 1) * (l2 - 1) +
                  static_cast<long long>(l1 - 1) * l2;
    return static_cast<int>(((e % 2) + 2) % 2);
}

int epsilon_bar(int j, const std::vector<int>& degrees)
{
    long long e = j - 1;
    for (int i = 0; i < j - 1; ++i)
        e += degrees.at(i);
    return static_cast<int>(((e % 2) + 2) % 2);
}

int suspension_sign(const std::vector<int>& degrees)
{
    const long long l = static_cast<long long>(degrees.size());
    long long e = 0;
    for (long long a = 1; a <= l; ++a)
        e += (l - a) * degrees[a - 1];
    return parity_sign(e);
}

int reorder_sign(const std::vector<int>& degrees, const std::vector<int>& order)
{
    // count inversions weighted by degree parity
    const size_t n = degrees.size();
    long long e = 0;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            if (order[a] > order[b])
                e += static_cast<long long>(degrees[a] & 1) * (degrees[b] & 1);
    return parity_sign(e);
}

} // namespace clx

#include "clx/labelings.hpp"
#include "clx/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace clx {

namespace {

void check_domain(const Tree& t, const EdgeLabeling& x)
{
    const int ne = edge_count(t);
    if (static_cast<int>(x.size()) != ne ||
        (ne > 0 && (x.begin()->first != 1 || x.rbegin()->first != ne)))
        throw ShapeError("labeling must cover exactly the edges 1.." + std::to_string(ne));
}

// colored ancestors-or-self
std::vector<bool> under_colors(const Flat& f)
{
    std::vector<bool> out(f.v.size(), false);
    std::function<void(int, bool)> walk = [&](int v, bool below) {
        const bool c = f.v[static_cast<size_t>(v)].colored;
        out[static_cast<size_t>(v)] = below; // no colored strict ancestor
        for (int s : f.v[static_cast<size_t>(v)].slots)
            if (s >= 0)
                walk(s, below && !c);
    };
    walk(0, true);
    return out;
}

std::vector<int> depths(const Flat& f)
{
    std::vector<int> d(f.v.size(), 0);
    for (size_t v = 1; v < f.v.size(); ++v)
        d[v] = d[static_cast<size_t>(f.v[v].parent)] + 1; // parents precede children
    return d;
}

std::set<int> checked_contraction(const Tree& t, const std::vector<int>& contracted)
{
    const int ne = edge_count(t);
    std::set<int> s;
    for (int e : contracted) {
        if (e < 1 || e > ne || !s.insert(e).second)
            throw OrderError("contraction witness names edge " + std::to_string(e) +
                             ", not a distinct interior edge of the finer tree");
    }
    return s;
}

// labels folded into a surviving below-color edge: the contracted chain
// directly below it and one contracted path up to a colored vertex
template <class T, class Mul>
T fold(const Flat& f, int c, const std::set<int>& cut, const std::map<int, T>& val, T acc, Mul mul)
{
    for (int w = f.v[static_cast<size_t>(c)].parent; w > 0 && cut.count(w);
         w = f.v[static_cast<size_t>(w)].parent)
        acc = mul(acc, val.at(w));
    if (!f.v[static_cast<size_t>(c)].colored) {
        std::function<bool(int, T&)> up = [&](int v, T& a) {
            for (int s : f.v[static_cast<size_t>(v)].slots) {
                if (s < 0 || !cut.count(s))
                    continue;
                T b = mul(a, val.at(s));
                if (f.v[static_cast<size_t>(s)].colored || up(s, b)) {
                    a = b;
                    return true;
                }
            }
            return false;
        };
        T a = acc;
        if (up(c, a))
            acc = a;
    }
    return acc;
}

} // namespace

std::vector<int> surviving_edges(const Tree& t, const std::vector<int>& contracted)
{
    const auto cut = checked_contraction(t, contracted);
    const int nv = vertex_count(t);
    std::vector<int> out(static_cast<size_t>(nv), 0);
    int next = 1;
    for (int e = 1; e < nv; ++e)
        if (!cut.count(e))
            out[static_cast<size_t>(e)] = next++;
    return out;
}

EdgeLabeling restrict_plain(const EdgeLabeling& x, const Tree& t2, const std::vector<int>& contracted)
{
    check_domain(t2, x);
    const auto ids = surviving_edges(t2, contracted);
    EdgeLabeling out;
    for (auto& [e, v] : x)
        if (ids[static_cast<size_t>(e)])
            out[ids[static_cast<size_t>(e)]] = v;
    return out;
}

std::vector<bool> below_color_edges(const Tree& t)
{
    const Flat f = flatten(t);
    const auto under = under_colors(f);
    std::vector<bool> out(f.v.size(), false);
    for (size_t v = 1; v < f.v.size(); ++v)
        out[v] = under[v];
    return out;
}

EdgeLabeling restrict_balanced(const EdgeLabeling& x, const Tree& t2,
                               const std::vector<int>& contracted)
{
    check_domain(t2, x);
    const auto ids = surviving_edges(t2, contracted);
    const auto cut = checked_contraction(t2, contracted);
    const Flat f = flatten(t2);
    const auto below = below_color_edges(t2);
    EdgeLabeling out;
    for (auto& [e, v] : x) {
        const int id = ids[static_cast<size_t>(e)];
        if (!id)
            continue;
        out[id] = below[static_cast<size_t>(e)]
                      ? fold<Rational>(f, e, cut, x, v,
                                       [](const Rational& a, const Rational& b) { return Rational(a * b); })
                      : v;
    }
    if (is_balanced(t2, x)) {
        const Tree t1 = contract_edges(t2, contracted);
        if (!is_balanced(t1, out))
            throw Error("InternalError", "restriction of a balanced labeling lost balance");
    }
    return out;
}

namespace {
// products from v down to every colored vertex above it through uncolored vertices
template <class T, class Mul>
void color_products(const Flat& f, int v, T acc, const std::map<int, T>& x, Mul mul,
                    std::vector<T>& out)
{
    for (int s : f.v[static_cast<size_t>(v)].slots) {
        if (s < 0)
            continue;
        T a = mul(acc, x.at(s));
        if (f.v[static_cast<size_t>(s)].colored)
            out.push_back(a);
        else
            color_products(f, s, a, x, mul, out);
    }
}
} // namespace

bool is_balanced(const Tree& t, const EdgeLabeling& x)
{
    check_domain(t, x);
    const Flat f = flatten(t);
    const auto under = under_colors(f);
    for (size_t v = 0; v < f.v.size(); ++v) {
        if (!under[v] || f.v[v].colored)
            continue;
        std::vector<Rational> prods;
        color_products<Rational>(f, static_cast<int>(v), Rational(1), x,
                                 [](const Rational& a, const Rational& b) { return Rational(a * b); },
                                 prods);
        for (const auto& p : prods)
            if (p != prods.front())
                return false;
    }
    return true;
}

std::vector<std::vector<int>> root_color_paths(const Tree& t)
{
    const Flat f = flatten(t);
    std::vector<std::vector<int>> out;
    for (size_t v = 0; v < f.v.size(); ++v) {
        if (!f.v[v].colored)
            continue;
        std::vector<int> path;
        for (int w = static_cast<int>(v); w > 0; w = f.v[static_cast<size_t>(w)].parent)
            path.push_back(w);
        std::reverse(path.begin(), path.end());
        out.push_back(std::move(path));
    }
    return out;
}

Rational root_to_color_product(const Tree& t, const EdgeLabeling& x)
{
    const auto paths = root_color_paths(t);
    if (paths.empty())
        throw ShapeError("tree has no colored vertex");
    Rational p = 1;
    for (int e : paths.front())
        p *= x.at(e);
    return p;
}

// ------------------------------------------------------------ exponents

int compare(const SymPow& a, const SymPow& b)
{
    if (a.base <= 0 || b.base <= 0)
        throw RangeError("symbolic powers need positive bases");
    // a^(p/q) vs b^(r/s): raise both to q*s > 0
    const BigInt p = a.exp.get_num(), q = a.exp.get_den();
    const BigInt r = b.exp.get_num(), s = b.exp.get_den();
    const BigInt ea = p * s, eb = r * q;
    auto ipow = [](const Rational& x, const BigInt& e) {
        if (!e.fits_slong_p())
            throw RangeError("exponent too large for exact comparison");
        const long n = e.get_si();
        Rational v = pow(x, static_cast<unsigned long>(n < 0 ? -n : n));
        return n < 0 ? Rational(1 / v) : v;
    };
    const Rational lhs = ipow(a.base, ea), rhs = ipow(b.base, eb);
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

bool operator==(const SymPow& a, const SymPow& b) { return compare(a, b) == 0; }

ExponentData exponents(const Tree& t)
{
    const Flat f = flatten(t);
    const auto below = below_color_edges(t);
    const auto d = depths(f);
    ExponentData out;
    for (size_t e = 1; e < f.v.size(); ++e) {
        const int b = d[e];
        out.b[static_cast<int>(e)] = b;
        Rational m = 1;
        if (below[e]) {
            const int sh = f.v[e].colored ? b - 1 : b;
            m = Rational(1, 1) / pow(Rational(2), static_cast<unsigned long>(sh));
        }
        out.M[static_cast<int>(e)] = m;
        out.N[static_cast<int>(e)] = m;
    }
    return out;
}

std::map<int, Rational> restricted_exponents(const Tree& t, const std::vector<int>& contracted)
{
    const auto ids = surviving_edges(t, contracted);
    const auto cut = checked_contraction(t, contracted);
    const Flat f = flatten(t);
    const auto below = below_color_edges(t);
    const auto ex = exponents(t);
    std::map<int, Rational> out;
    for (auto& [e, m] : ex.M) {
        const int id = ids[static_cast<size_t>(e)];
        if (!id)
            continue;
        out[id] = below[static_cast<size_t>(e)]
                      ? fold<Rational>(f, e, cut, ex.M, m,
                                       [](const Rational& a, const Rational& b) { return Rational(a + b); })
                      : m;
    }
    return out;
}

EdgeLabeling chi_unquilted(const EdgeLabeling& x, const Rational& eps)
{
    if (eps <= 0 || eps > 1)
        throw RangeError("eps must lie in (0,1], got " + to_string(eps));
    EdgeLabeling out;
    for (auto& [e, v] : x) {
        if (v < 0)
            throw RangeError("negative label on edge " + std::to_string(e));
        out[e] = eps + v;
    }
    return out;
}

bool avoids_small_labels(const EdgeLabeling& x, const Rational& eps)
{
    return std::all_of(x.begin(), x.end(), [&](const auto& kv) { return kv.second >= eps; });
}

// ------------------------------------------------------------ Q(u)

Poly Poly::constant(const Rational& r) { return Poly{{r}}; }

Poly Poly::monomial(const Rational& r, int deg)
{
    Poly p;
    p.c.assign(static_cast<size_t>(deg) + 1, Rational(0));
    p.c.back() = r;
    return p;
}

void Poly::trim()
{
    while (!c.empty() && c.back() == 0)
        c.pop_back();
}

Poly Poly::operator+(const Poly& o) const
{
    Poly r;
    r.c.assign(std::max(c.size(), o.c.size()), Rational(0));
    for (size_t i = 0; i < c.size(); ++i)
        r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i)
        r.c[i] += o.c[i];
    r.trim();
    return r;
}

Poly Poly::operator*(const Poly& o) const
{
    Poly r;
    if (c.empty() || o.c.empty())
        return r;
    r.c.assign(c.size() + o.c.size() - 1, Rational(0));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j)
            r.c[i + j] += c[i] * o.c[j];
    r.trim();
    return r;
}

bool Poly::operator==(const Poly& o) const
{
    Poly a = *this, b = o;
    a.trim();
    b.trim();
    return a.c == b.c;
}

bool Poly::is_zero() const
{
    return std::all_of(c.begin(), c.end(), [](const Rational& r) { return r == 0; });
}

Rational Poly::eval(const Rational& u) const
{
    Rational r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        r = r * u + *it;
    return r;
}

RatFun RatFun::operator*(const RatFun& o) const { return RatFun{num * o.num, den * o.den}; }

bool RatFun::same_as(const RatFun& o) const { return num * o.den == o.num * den; }

Rational RatFun::eval(const Rational& u) const
{
    const Rational d = den.eval(u);
    if (d == 0)
        throw DegenerateError("rational function has a pole at u = " + clx::to_string(u));
    return num.eval(u) / d;
}

namespace {
std::string poly_str(const Poly& p, const std::string& var)
{
    std::string s;
    for (size_t i = p.c.size(); i-- > 0;) {
        if (p.c[i] == 0)
            continue;
        if (!s.empty())
            s += " + ";
        const bool one = p.c[i] == 1 && i > 0;
        if (!one)
            s += clx::to_string(p.c[i]);
        if (i > 0) {
            if (!one)
                s += "*";
            s += var;
            if (i > 1)
                s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}
} // namespace

std::string RatFun::to_string(const std::string& var) const
{
    Poly d = den;
    d.trim();
    if (d.c.size() == 1 && d.c[0] == 1)
        return poly_str(num, var);
    return "(" + poly_str(num, var) + ")/(" + poly_str(den, var) + ")";
}

std::optional<Rational> exact_root(const Rational& r, unsigned long d)
{
    if (r <= 0 || d == 0)
        return std::nullopt;
    BigInt n, m;
    if (!mpz_root(n.get_mpz_t(), r.get_num().get_mpz_t(), d))
        return std::nullopt;
    if (!mpz_root(m.get_mpz_t(), r.get_den().get_mpz_t(), d))
        return std::nullopt;
    Rational out(n, m);
    out.canonicalize();
    return out;
}

std::optional<EdgeLabeling> SymLabeling::evaluate() const
{
    auto u = exact_root(eps, static_cast<unsigned long>(D));
    if (!u)
        return std::nullopt;
    EdgeLabeling out;
    for (auto& [e, v] : value)
        out[e] = v.eval(*u);
    return out;
}

namespace {
RatFun rf_mul(const RatFun& a, const RatFun& b) { return a * b; }
} // namespace

bool is_balanced(const Tree& t, const SymLabeling& x)
{
    const Flat f = flatten(t);
    const auto under = under_colors(f);
    for (size_t v = 0; v < f.v.size(); ++v) {
        if (!under[v] || f.v[v].colored)
            continue;
        std::vector<RatFun> prods;
        color_products<RatFun>(f, static_cast<int>(v), RatFun{}, x.value, rf_mul, prods);
        for (const auto& p : prods)
            if (!p.same_as(prods.front()))
                return false;
    }
    return true;
}

RatFun root_to_color_product(const Tree& t, const SymLabeling& x)
{
    const auto paths = root_color_paths(t);
    if (paths.empty())
        throw ShapeError("tree has no colored vertex");
    RatFun p;
    for (int e : paths.front())
        p = p * x.value.at(e);
    return p;
}

namespace {
int common_denominator(const ExponentData& ex)
{
    int D = 1;
    for (auto& [e, m] : ex.M) {
        const BigInt& d = m.get_den();
        if (d > D)
            D = static_cast<int>(d.get_si());
    }
    return D;
}

int exponent_degree(const Rational& m, int D)
{
    Rational r = m * D;
    return static_cast<int>(r.get_num().get_si() / r.get_den().get_si());
}
} // namespace

SymLabeling eps_power_labeling(const Tree& t, const Rational& eps)
{
    if (eps <= 0 || eps > 1)
        throw RangeError("eps must lie in (0,1], got " + to_string(eps));
    const auto ex = exponents(t);
    SymLabeling out;
    out.eps = eps;
    out.D = common_denominator(ex);
    for (auto& [e, m] : ex.M)
        out.value[e] = RatFun{Poly::monomial(1, exponent_degree(m, out.D)), Poly::constant(1)};
    return out;
}

SymLabeling chi_quilted(const Tree& t, const EdgeLabeling& x, const Rational& eps)
{
    if (eps <= 0 || eps > 1)
        throw RangeError("eps must lie in (0,1], got " + to_string(eps));
    check_domain(t, x);
    for (auto& [e, v] : x)
        if (v < 0)
            throw RangeError("negative label on edge " + std::to_string(e));
    if (!is_balanced(t, x))
        throw BalanceError("chi_quilted needs a balanced labeling");
    const Flat f = flatten(t);
    const auto below = below_color_edges(t);
    const auto ex = exponents(t);
    SymLabeling out;
    out.eps = eps;
    out.D = common_denominator(ex);
    const int D = out.D;
    const bool has_colors = colored_count(t) > 0;
    const Rational Y = has_colors ? root_to_color_product(t, x) : Rational(0);
    auto epow = [&](int e) { return Poly::monomial(1, exponent_degree(ex.M.at(e), D)); };
    auto sq = [&](int e) { return Poly::constant(x.at(e) * x.at(e)); };
    for (size_t e = 1; e < f.v.size(); ++e) {
        const int id = static_cast<int>(e);
        if (!below[e]) {
            out.value[id] = RatFun{Poly::monomial(1, D) + Poly::constant(x.at(id)), Poly::constant(1)};
            continue;
        }
        RatFun r{epow(id) + sq(id), Poly::constant(1)};
        const int p = f.v[e].parent;
        if (p > 0)
            r = r * RatFun{epow(p), epow(p) + sq(p)};
        if (f.v[e].colored)
            r = r * RatFun{epow(id), epow(id) + sq(id)} *
                RatFun{Poly::constant(1 + Y), Poly::constant(1)};
        out.value[id] = r;
    }
    return out;
}

// ------------------------------------------------------------ charts

namespace {

struct ChartShape {
    Flat f;
    std::vector<int> kind;            // 0 trivalent, 1 mark vertex, 2 colored bivalent
    std::vector<int> first, last;     // terminal range per vertex
    std::vector<int> terminal_vertex; // terminal -> mark vertex id, or -1 for a leaf
    std::vector<int> mark_index;      // vertex -> index into z, or -1
    std::vector<int> leaf_index;      // terminal -> index into x, or -1
};

ChartShape chart_shape(const Tree& t)
{
    if (tree_dimension(t) != 0)
        throw ShapeError("simple-ratio charts need a maximal tree, got " + to_text(t));
    ChartShape s;
    s.f = flatten(t);
    const size_t n = s.f.v.size();
    s.kind.assign(n, -1);
    s.first.assign(n, 0);
    s.last.assign(n, 0);
    s.mark_index.assign(n, -1);
    int nterm = 0, nleaf = 0, nmark = 0;
    std::function<void(int)> walk = [&](int v) {
        auto& V = s.f.v[static_cast<size_t>(v)];
        if (V.colored && V.slots.size() == 1 && V.marks == 0)
            s.kind[static_cast<size_t>(v)] = 2;
        else if (!V.colored && V.slots.empty() && V.marks == 1)
            s.kind[static_cast<size_t>(v)] = 1;
        else if (!V.colored && V.slots.size() == 2 && V.marks == 0)
            s.kind[static_cast<size_t>(v)] = 0;
        else
            throw ShapeError("vertex " + std::to_string(v) + " is not of a maximal shape");
        s.first[static_cast<size_t>(v)] = nterm;
        if (s.kind[static_cast<size_t>(v)] == 1) {
            s.mark_index[static_cast<size_t>(v)] = nmark++;
            s.terminal_vertex.push_back(v);
            s.leaf_index.push_back(-1);
            ++nterm;
        }
        for (int c : V.slots) {
            if (c < 0) {
                s.terminal_vertex.push_back(-1);
                s.leaf_index.push_back(nleaf++);
                ++nterm;
            } else {
                walk(c);
            }
        }
        s.last[static_cast<size_t>(v)] = nterm - 1;
    };
    walk(0);
    return s;
}

// last terminal under slot 0 and first under slot 1 of a trivalent vertex
std::pair<int, int> gap_of(const ChartShape& s, int v)
{
    const int a = s.f.v[static_cast<size_t>(v)].slots[0];
    // a leaf in slot 0 is the first terminal of v
    const int j = a < 0 ? s.first[static_cast<size_t>(v)] : s.last[static_cast<size_t>(a)];
    return {j, j + 1};
}

std::vector<Rational> terminal_positions(const ChartShape& s, const DiskCoords& d)
{
    int nleaf = 0, nmark = 0;
    for (size_t i = 0; i < s.terminal_vertex.size(); ++i)
        (s.terminal_vertex[i] < 0 ? nleaf : nmark)++;
    if (nleaf != static_cast<int>(d.x.size()) || nmark != static_cast<int>(d.z.size()))
        throw ShapeError("coordinates have " + std::to_string(d.x.size()) + " boundary and " +
                         std::to_string(d.z.size()) + " interior markings; the tree needs " +
                         std::to_string(nleaf) + " and " + std::to_string(nmark));
    for (size_t i = 1; i < d.x.size(); ++i) {
        if (d.x[i] == d.x[i - 1])
            throw DegenerateError("coincident boundary markings");
        if (d.x[i] < d.x[i - 1])
            throw OrderError("boundary markings out of order");
    }
    std::vector<Rational> y;
    for (size_t i = 0; i < s.terminal_vertex.size(); ++i) {
        const int v = s.terminal_vertex[i];
        y.push_back(v < 0 ? d.x[static_cast<size_t>(s.leaf_index[i])]
                          : d.z[static_cast<size_t>(s.mark_index[static_cast<size_t>(v)])].first);
    }
    return y;
}

std::vector<Rational> gaps(const ChartShape& s, const DiskCoords& d)
{
    const auto y = terminal_positions(s, d);
    const bool colored = std::any_of(s.f.v.begin(), s.f.v.end(), [](const FlatVertex& v) { return v.colored; });
    if (colored && !d.seam)
        throw ShapeError("a colored tree needs a seam height");
    std::vector<Rational> delta(s.f.v.size());
    for (size_t v = 0; v < s.f.v.size(); ++v) {
        Rational g;
        switch (s.kind[v]) {
        case 0: {
            auto [j, j1] = gap_of(s, static_cast<int>(v));
            g = y[static_cast<size_t>(j1)] - y[static_cast<size_t>(j)];
            if (g < 0)
                throw OrderError("markings " + std::to_string(j + 1) + " and " + std::to_string(j1 + 1) +
                                 " violate the planar order of the tree");
            break;
        }
        case 1:
            g = d.z[static_cast<size_t>(s.mark_index[v])].second;
            if (g < 0)
                throw OrderError("interior marking in the lower half-plane");
            break;
        default:
            g = *d.seam;
            if (g < 0)
                throw OrderError("negative seam height");
        }
        if (g == 0)
            throw DegenerateError("zero gap at vertex " + std::to_string(v));
        delta[v] = g;
    }
    return delta;
}

} // namespace

EdgeLabeling simple_ratio_chart(const DiskCoords& d, const Tree& t)
{
    const ChartShape s = chart_shape(t);
    const auto delta = gaps(s, d);
    EdgeLabeling x;
    for (size_t v = 1; v < s.f.v.size(); ++v)
        x[static_cast<int>(v)] = delta[v] / delta[static_cast<size_t>(s.f.v[v].parent)];
    return x;
}

DiskCoords chart_inverse(const EdgeLabeling& x, const Tree& t)
{
    const ChartShape s = chart_shape(t);
    check_domain(t, x);
    std::vector<Rational> delta(s.f.v.size());
    delta[0] = 1;
    for (size_t v = 1; v < s.f.v.size(); ++v) {
        const Rational& l = x.at(static_cast<int>(v));
        if (l <= 0)
            throw DegenerateError("chart labels must be positive");
        delta[v] = delta[static_cast<size_t>(s.f.v[v].parent)] * l;
    }
    const size_t nt = s.terminal_vertex.size();
    std::vector<Rational> gap(nt > 0 ? nt - 1 : 0);
    for (size_t v = 0; v < s.f.v.size(); ++v)
        if (s.kind[v] == 0)
            gap[static_cast<size_t>(gap_of(s, static_cast<int>(v)).first)] = delta[v];
    std::vector<Rational> y(nt, Rational(0));
    for (size_t i = 1; i < nt; ++i)
        y[i] = y[i - 1] + gap[i - 1];
    DiskCoords d;
    for (size_t i = 0; i < nt; ++i) {
        const int v = s.terminal_vertex[i];
        if (v < 0)
            d.x.push_back(y[i]);
        else
            d.z.push_back({y[i], delta[static_cast<size_t>(v)]});
    }
    for (size_t v = 0; v < s.f.v.size(); ++v)
        if (s.kind[v] == 2) {
            if (d.seam && *d.seam != delta[v])
                throw BalanceError("seam heights disagree; labeling is not balanced");
            d.seam = delta[v];
        }
    return d;
}

DiskCoords normalize_coords(const DiskCoords& d, const Tree& t)
{
    const ChartShape s = chart_shape(t);
    const auto delta = gaps(s, d);
    const auto y = terminal_positions(s, d);
    const Rational y1 = y.empty() ? Rational(0) : y.front();
    const Rational r = delta[0];
    DiskCoords o;
    for (const auto& xi : d.x)
        o.x.push_back((xi - y1) / r);
    for (const auto& [re, im] : d.z)
        o.z.push_back({(re - y1) / r, im / r});
    if (d.seam)
        o.seam = *d.seam / r;
    return o;
}

bool same_coords(const DiskCoords& a, const DiskCoords& b)
{
    return a.x == b.x && a.z == b.z && a.seam == b.seam;
}

} // namespace clx

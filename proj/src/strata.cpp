#include "clx/strata.hpp"
#include "clx/errors.hpp"
#include "clx/signs.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

namespace clx {

std::string family_name(Family f)
{
    switch (f) {
    case Family::K: return "K";
    case Family::Q: return "Q";
    case Family::Bullet: return "Bullet";
    }
    return "?";
}

Family parse_family(const std::string& s)
{
    if (s == "K" || s == "k" || s == "otimes")
        return Family::K;
    if (s == "Q" || s == "q")
        return Family::Q;
    if (s == "Bullet" || s == "bullet" || s == "B")
        return Family::Bullet;
    throw ParseError("unknown family '" + s + "' (K, Q, Bullet)");
}

std::string facet_kind_name(FacetKind k)
{
    switch (k) {
    case FacetKind::Plain: return "plain";
    case FacetKind::Lower: return "lower";
    case FacetKind::Upper: return "upper";
    }
    return "?";
}

int dimension(Family f, int l, int k)
{
    if (f == Family::Q) {
        if (l < 0 || k < 0 || l + 2 * k < 1)
            throw StabilityError("unstable quilted (l,k)=(" + std::to_string(l) + "," +
                                 std::to_string(k) + ")");
        return l - 1 + 2 * k;
    }
    if (!is_stable_pair(l, k))
        throw StabilityError("unstable (l,k)=(" + std::to_string(l) + "," + std::to_string(k) +
                             ")");
    return l - 2 + 2 * k;
}

int FacePoset::find(const Tree& t) const
{
    auto it = index.find(t);
    return it == index.end() ? -1 : it->second;
}

std::vector<long long> FacePoset::f_vector() const
{
    int top = 0;
    for (const auto& s : strata)
        top = std::max(top, s.dim);
    std::vector<long long> f(static_cast<size_t>(top) + 1, 0);
    for (const auto& s : strata)
        ++f[static_cast<size_t>(s.dim)];
    return f;
}

// ------------------------------------------------------------------ splits

namespace {

int vertex_dim(const FlatVertex& v)
{
    return static_cast<int>(v.slots.size()) + 2 * v.marks + (v.colored ? -1 : -2);
}

struct Split {
    Flat flat;
    std::vector<int> seq; // vertex order with the split vertex replaced in place
    int sign = 1;
    FacetKind kind = FacetKind::Plain;
};

void reparent(Flat& f, int v)
{
    for (int s : f.v[static_cast<size_t>(v)].slots)
        if (s >= 0)
            f.v[static_cast<size_t>(s)].parent = v;
}

// Move slots [a,b) of v onto a new upper vertex with i2 marks.
Flat split_block(const Flat& f, int v, int a, int b, int i2)
{
    Flat g = f;
    const int u = static_cast<int>(g.v.size());
    auto& L = g.v[static_cast<size_t>(v)];
    FlatVertex U;
    U.marks = i2;
    U.parent = v;
    U.slots.assign(L.slots.begin() + a, L.slots.begin() + b);
    L.slots.erase(L.slots.begin() + a, L.slots.begin() + b);
    L.slots.insert(L.slots.begin() + a, u);
    L.marks -= i2;
    g.v.push_back(U);
    reparent(g, u);
    return g;
}

std::vector<int> replace_in_seq(const std::vector<int>& P, int v, const std::vector<int>& with)
{
    std::vector<int> s;
    for (int x : P) {
        if (x == v)
            s.insert(s.end(), with.begin(), with.end());
        else
            s.push_back(x);
    }
    return s;
}

// Compositions of the slots of a colored vertex into q consecutive blocks,
// each becoming a colored vertex over a new uncolored one. Marks are spread
// over the blocks; the rest stays on the new lower vertex. A block may be
// empty when it carries marks, so every block consumes a slot or a mark.
void upper_splits(const Flat& f, int v, const std::vector<int>& P, std::vector<Split>& out)
{
    const auto& V = f.v[static_cast<size_t>(v)];
    const int m = static_cast<int>(V.slots.size());
    const int marks = V.marks;
    std::vector<int> sizes, mk;
    auto emit = [&](int mused) {
        const int q = static_cast<int>(sizes.size());
        const int i0 = marks - mused;
        if (q + 1 + 2 * i0 < 3)
            return;
        Flat g = f;
        std::vector<int> kids;
        int pos = 0;
        for (int i = 0; i < q; ++i) {
            FlatVertex C;
            C.colored = true;
            C.marks = mk[static_cast<size_t>(i)];
            C.parent = v;
            C.slots.assign(V.slots.begin() + pos, V.slots.begin() + pos + sizes[static_cast<size_t>(i)]);
            pos += sizes[static_cast<size_t>(i)];
            const int id = static_cast<int>(g.v.size());
            g.v.push_back(C);
            reparent(g, id);
            kids.push_back(id);
        }
        auto& L = g.v[static_cast<size_t>(v)];
        L.colored = false;
        L.marks = i0;
        L.slots = kids;
        std::vector<int> with{v};
        with.insert(with.end(), kids.begin(), kids.end());
        Split s;
        s.flat = std::move(g);
        s.seq = replace_in_seq(P, v, with);
        s.sign = sign_upper_quilt(sizes);
        s.kind = FacetKind::Upper;
        out.push_back(std::move(s));
    };
    std::function<void(int, int)> rec = [&](int used, int mused) {
        // with no slots the seam may leave the component altogether (q = 0)
        if (used == m && (!sizes.empty() || m == 0))
            emit(mused);
        for (int sz = 0; used + sz <= m; ++sz)
            for (int im = 0; mused + im <= marks; ++im) {
                if (sz + 1 + 2 * im < 2)
                    continue;
                sizes.push_back(sz);
                mk.push_back(im);
                rec(used + sz, mused + im);
                sizes.pop_back();
                mk.pop_back();
            }
    };
    rec(0, 0);
}

std::vector<Split> vertex_splits(const Flat& f, int v, const std::vector<int>& P)
{
    std::vector<Split> out;
    const auto& V = f.v[static_cast<size_t>(v)];
    const int m = static_cast<int>(V.slots.size());
    for (int a = 0; a <= m; ++a)
        for (int b = a; b <= m; ++b)
            for (int i2 = 0; i2 <= V.marks; ++i2) {
                const int l2 = b - a;
                const int l1 = m - l2 + 1;
                if (l2 + 1 + 2 * i2 < 3)
                    continue; // the new upper vertex is uncolored
                const int sL = l1 + 1 + 2 * (V.marks - i2);
                if (sL < (V.colored ? 2 : 3))
                    continue;
                Split s;
                s.flat = split_block(f, v, a, b, i2);
                s.seq = replace_in_seq(P, v, {v, static_cast<int>(f.v.size())});
                if (V.colored) {
                    s.sign = sign_lower_quilt(l1, a + 1, l2);
                    s.kind = FacetKind::Lower;
                } else {
                    s.sign = sign_concat(l1, a + 1, l2);
                }
                out.push_back(std::move(s));
            }
    if (V.colored)
        upper_splits(f, v, P, out);
    return out;
}

// Orientation of a cell: the wedge of its vertex factors in planar preorder.
// Boundary of the product picks up the Koszul sign of the factors passed,
// the facet sign of the split, and the reordering into the face's preorder.
std::vector<std::pair<Tree, std::pair<int, FacetKind>>> signed_facets(const Tree& t)
{
    const Flat f = flatten(t);
    const auto P = preorder(f);
    std::vector<std::pair<Tree, std::pair<int, FacetKind>>> out;
    long long before = 0;
    for (int v : P) {
        for (auto& s : vertex_splits(f, v, P)) {
            const auto Q = preorder(s.flat);
            std::vector<int> pos(s.flat.v.size(), 0);
            for (size_t i = 0; i < Q.size(); ++i)
                pos[static_cast<size_t>(Q[i])] = static_cast<int>(i);
            std::vector<int> degs, order;
            for (int x : s.seq) {
                degs.push_back(vertex_dim(s.flat.v[static_cast<size_t>(x)]));
                order.push_back(pos[static_cast<size_t>(x)]);
            }
            const int sign = parity_sign(before) * s.sign * reorder_sign(degs, order);
            out.push_back({unflatten(s.flat), {sign, s.kind}});
        }
        before += vertex_dim(f.v[static_cast<size_t>(v)]);
    }
    return out;
}

} // namespace

FacePoset face_poset(Family fam, int l, int k)
{
    check_caps(l, k);
    FacePoset p;
    p.family = fam;
    p.l = l;
    p.k = k;
    const int amb = dimension(fam, l, k);
    std::vector<Tree> trees =
        fam == Family::Q ? enumerate_colored_types(l, k) : enumerate_all_types(l, k);
    std::vector<Stratum> st;
    for (auto& t : trees) {
        Stratum s;
        s.family = fam;
        s.dim = tree_dimension(t);
        s.codim = amb - s.dim;
        s.tree = std::move(t);
        if (fam == Family::Bullet) {
            s.perm.resize(static_cast<size_t>(l));
            std::iota(s.perm.begin(), s.perm.end(), 1);
        }
        st.push_back(std::move(s));
    }
    std::stable_sort(st.begin(), st.end(),
                     [](const Stratum& a, const Stratum& b) { return a.dim > b.dim; });
    p.strata = std::move(st);
    for (size_t i = 0; i < p.strata.size(); ++i)
        p.index[p.strata[i].tree] = static_cast<int>(i);
    for (size_t i = 0; i < p.strata.size(); ++i) {
        std::map<int, Cover> acc;
        for (auto& [face, sk] : signed_facets(p.strata[i].tree)) {
            const int fi = p.find(face);
            if (fi < 0)
                throw Error("InternalError", "facet outside the enumerated poset: " + to_text(face));
            auto it = acc.find(fi);
            if (it == acc.end())
                acc[fi] = Cover{fi, static_cast<int>(i), sk.first, sk.second};
            else
                it->second.sign += sk.first;
        }
        for (auto& [fi, c] : acc)
            p.covers.push_back(c);
    }
    return p;
}

std::vector<long long> f_vector(Family f, int l, int k) { return face_poset(f, l, k).f_vector(); }

Boundary cellular_boundary(const FacePoset& p)
{
    Boundary d(p.strata.size());
    for (const auto& c : p.covers)
        if (c.sign != 0)
            d[static_cast<size_t>(c.cell)].push_back({c.face, c.sign});
    return d;
}

int boundary_square_witness(const FacePoset& p)
{
    const Boundary d = cellular_boundary(p);
    for (size_t i = 0; i < d.size(); ++i) {
        std::map<int, long long> acc;
        for (auto [f, c] : d[i])
            for (auto [g, c2] : d[static_cast<size_t>(f)])
                acc[g] += c * c2;
        for (auto& [g, v] : acc)
            if (v != 0)
                return static_cast<int>(i);
    }
    return -1;
}

// ------------------------------------------------------------ corners

std::vector<std::vector<int>> minimum_rule_orders(const Tree& t, const std::vector<int>& perm)
{
    const Flat f = flatten(t);
    const int nl = leaf_count(t);
    if (static_cast<int>(perm.size()) != nl)
        throw ShapeError("ordering has " + std::to_string(perm.size()) + " entries for " +
                         std::to_string(nl) + " leaves");
    // minimum label under each vertex; leafless -> sentinel
    const int INF = std::numeric_limits<int>::max();
    std::vector<int> mins(f.v.size(), INF);
    int next = 0;
    std::function<int(int)> walk = [&](int v) {
        int m = INF;
        for (int s : f.v[static_cast<size_t>(v)].slots)
            m = std::min(m, s < 0 ? perm[static_cast<size_t>(next++)] : walk(s));
        return mins[static_cast<size_t>(v)] = m;
    };
    walk(0);
    std::vector<std::vector<int>> out(f.v.size());
    next = 0;
    std::function<void(int)> walk2 = [&](int v) {
        std::vector<std::pair<long long, int>> keys; // (value, slot)
        const auto& slots = f.v[static_cast<size_t>(v)].slots;
        int pos = 0;
        for (int s : slots) {
            long long key;
            if (s < 0)
                key = perm[static_cast<size_t>(next++)];
            else {
                key = mins[static_cast<size_t>(s)];
                walk2(s);
            }
            keys.push_back({key == INF ? static_cast<long long>(INF) + pos : key, pos});
            ++pos;
        }
        std::vector<std::pair<long long, int>> sorted = keys;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> rank(slots.size());
        for (size_t r = 0; r < sorted.size(); ++r)
            rank[static_cast<size_t>(sorted[r].second)] = static_cast<int>(r) + 1;
        out[static_cast<size_t>(v)] = rank;
    };
    walk2(0);
    return out;
}

CornerProduct corner_decomposition(const Stratum& s)
{
    const Flat f = flatten(s.tree);
    if (f.v.size() < 2)
        throw RangeError("corner decomposition needs codimension >= 1");
    if (s.family == Family::Bullet)
        for (const auto& v : f.v)
            if (v.marks == 0)
                throw GhostCornerError("stratum " + to_text(s.tree) +
                                       " has a ghost component; use local_group_model");
    const auto P = preorder(f); // identity for flattened trees
    CornerProduct c;
    std::vector<std::vector<int>> orders;
    if (s.family == Family::Bullet)
        orders = minimum_rule_orders(s.tree, s.perm);
    for (int v : P) {
        const auto& V = f.v[static_cast<size_t>(v)];
        Factor fa;
        fa.family = V.colored ? Family::Q : (s.family == Family::Bullet ? Family::Bullet : Family::K);
        fa.l = static_cast<int>(V.slots.size());
        fa.k = V.marks;
        fa.parent = V.parent;
        if (V.parent >= 0) {
            const auto& ps = f.v[static_cast<size_t>(V.parent)].slots;
            fa.slot = static_cast<int>(std::find(ps.begin(), ps.end(), v) - ps.begin()) + 1;
        }
        if (!orders.empty())
            fa.order = orders[static_cast<size_t>(v)];
        c.factors.push_back(std::move(fa));
    }
    if (f.v.size() == 2) {
        c.j = c.factors[1].slot;
        if (s.family == Family::Q)
            c.kind = f.v[0].colored ? FacetKind::Lower : FacetKind::Plain;
    }
    if (s.family == Family::Q && !f.v[0].colored) {
        // one uncolored root over colored children only: an upper facet
        bool upper = true;
        for (size_t i = 1; i < f.v.size(); ++i)
            if (!f.v[i].colored || f.v[i].parent != 0)
                upper = false;
        if (upper)
            c.kind = FacetKind::Upper;
    }
    if (s.family == Family::Bullet && f.v.size() == 2) {
        const int l1 = c.factors[0].l, l2 = c.factors[1].l;
        const auto& o1 = c.factors[0].order;
        const auto& o2 = c.factors[1].order;
        const int jslot = c.j;
        c.p_min = o1[static_cast<size_t>(jslot - 1)];
        // standardized label -> actual label
        const int l = l1 + l2 - 1;
        c.sigma.assign(static_cast<size_t>(l), 0);
        int pos = 0; // leaf position in the whole tree
        for (int a = 0; a < l1; ++a) {
            if (a == jslot - 1) {
                for (int b = 0; b < l2; ++b) {
                    const int stdlab = c.p_min + o2[static_cast<size_t>(b)] - 1;
                    c.sigma[static_cast<size_t>(stdlab - 1)] = s.perm[static_cast<size_t>(pos++)];
                }
            } else {
                const int r = o1[static_cast<size_t>(a)];
                const int stdlab = r < c.p_min ? r : r + l2 - 1;
                c.sigma[static_cast<size_t>(stdlab - 1)] = s.perm[static_cast<size_t>(pos++)];
            }
        }
        if (l2 == 0) {
            // a leafless upper factor carries no labels; sigma is trivial
            c.sigma.resize(static_cast<size_t>(l));
            std::iota(c.sigma.begin(), c.sigma.end(), 1);
        }
        c.sign = sign_bullet(l1, c.p_min, l2, c.sigma);
    }
    return c;
}

Tree regraft(const CornerProduct& c)
{
    const int n = static_cast<int>(c.factors.size());
    std::function<Node(int)> build = [&](int i) {
        const auto& fa = c.factors[static_cast<size_t>(i)];
        Node v = corolla(fa.l, fa.k, fa.family == Family::Q);
        for (int j = 0; j < n; ++j)
            if (c.factors[static_cast<size_t>(j)].parent == i)
                v.kids[static_cast<size_t>(c.factors[static_cast<size_t>(j)].slot - 1)] = build(j);
        return v;
    };
    return build(0);
}

// -------------------------------------------------------------- tiles

namespace {

std::vector<int> compose(const std::vector<int>& p, const std::vector<int>& q)
{
    // (p o q)(i) = p(q(i)), 1-based
    std::vector<int> r(q.size());
    for (size_t i = 0; i < q.size(); ++i)
        r[i] = p[static_cast<size_t>(q[i] - 1)];
    return r;
}

std::vector<int> inverse(const std::vector<int>& p)
{
    std::vector<int> r(p.size());
    for (size_t i = 0; i < p.size(); ++i)
        r[static_cast<size_t>(p[i] - 1)] = static_cast<int>(i) + 1;
    return r;
}

// leaf positions (1-based) under each slot of vertex v
std::vector<std::vector<int>> slot_leaves(const Flat& f, int v)
{
    const auto lr = leaf_ranges(f);
    std::vector<std::vector<int>> out;
    // walk slots of v in order, tracking leaf positions
    int next = lr[static_cast<size_t>(v)].first;
    for (int s : f.v[static_cast<size_t>(v)].slots) {
        std::vector<int> ls;
        if (s < 0)
            ls.push_back(next++);
        else
            for (int x = lr[static_cast<size_t>(s)].first; x < lr[static_cast<size_t>(s)].second; ++x)
                ls.push_back(next++);
        out.push_back(std::move(ls));
    }
    return out;
}

// Exchange two slots of a ghost; returns the new tree and the position map
// pi (old leaf position -> new leaf position).
std::pair<Tree, std::vector<int>> transpose_slots(const Flat& f, int v, int s1, int s2, int nl)
{
    Flat g = f;
    auto& sl = g.v[static_cast<size_t>(v)].slots;
    std::swap(sl[static_cast<size_t>(s1)], sl[static_cast<size_t>(s2)]);
    const auto before = slot_leaves(f, v);
    // new order of the slot blocks
    std::vector<int> order(before.size());
    std::iota(order.begin(), order.end(), 0);
    std::swap(order[static_cast<size_t>(s1)], order[static_cast<size_t>(s2)]);
    std::vector<int> pi(static_cast<size_t>(nl));
    std::iota(pi.begin(), pi.end(), 1);
    int start = before.empty() ? 1 : 0;
    for (const auto& b : before)
        if (!b.empty()) {
            start = b.front();
            break;
        }
    int next = start;
    for (int o : order)
        for (int x : before[static_cast<size_t>(o)])
            pi[static_cast<size_t>(x - 1)] = next++;
    return {unflatten(g), pi};
}

} // namespace

TileComplex tile_complex(int l, int k)
{
    if (l > 6)
        throw CapError("tile complexes are capped at l <= 6");
    TileComplex tc;
    tc.l = l;
    tc.k = k;
    tc.poset = face_poset(Family::K, l, k);
    std::vector<int> p(static_cast<size_t>(l));
    std::iota(p.begin(), p.end(), 1);
    do {
        tc.tiles.push_back(p);
        tc.tile_sign.push_back(permutation_sign(p));
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> tile_index;
    for (size_t i = 0; i < tc.tiles.size(); ++i)
        tile_index[tc.tiles[i]] = static_cast<int>(i);

    std::set<std::tuple<int, Tree, int, Tree>> seen;
    for (const auto& st : tc.poset.strata) {
        const Flat f = flatten(st.tree);
        const int ne = static_cast<int>(f.v.size()) - 1;
        for (size_t g = 0; g < f.v.size(); ++g) {
            const auto& G = f.v[g];
            if (G.marks != 0)
                continue;
            // every edge of the stratum must touch the ghost
            int incident = (G.parent >= 0 ? 1 : 0);
            for (int s : G.slots)
                incident += s >= 0 ? 1 : 0;
            if (incident != ne)
                continue;
            // all other components carry interior marks
            bool others_marked = true;
            for (size_t u = 0; u < f.v.size(); ++u)
                if (u != g && f.v[u].marks == 0)
                    others_marked = false;
            if (!others_marked || G.slots.size() != 2)
                continue;
            const int s0 = G.slots[0], s1 = G.slots[1];
            int type = 0;
            const bool root = G.parent < 0;
            if (!root && s0 < 0 && s1 < 0)
                type = 1;
            else if (!root && ((s0 < 0) != (s1 < 0)))
                type = 2;
            else if (root && s0 >= 0 && s1 >= 0)
                type = 2; // the root marking is the transposed real point
            else if (!root && s0 >= 0 && s1 >= 0)
                type = 3;
            if (type == 0 || k < 1)
                continue;
            auto [t2, pi] = transpose_slots(f, static_cast<int>(g), 0, 1, l);
            const auto pinv = inverse(pi);
            for (size_t ti = 0; ti < tc.tiles.size(); ++ti) {
                const auto p2 = compose(tc.tiles[ti], pinv);
                const int tj = tile_index.at(p2);
                auto key_a = std::make_tuple(static_cast<int>(ti), st.tree, tj, t2);
                auto key_b = std::make_tuple(tj, t2, static_cast<int>(ti), st.tree);
                if (seen.count(key_a) || seen.count(key_b))
                    continue;
                if (static_cast<int>(ti) == tj && st.tree == t2)
                    continue;
                seen.insert(key_a);
                TilePair tp;
                tp.type = type;
                tp.tile_a = static_cast<int>(ti);
                tp.tile_b = tj;
                tp.tree_a = st.tree;
                tp.tree_b = t2;
                tp.ghost = static_cast<int>(g);
                tc.pairs.push_back(std::move(tp));
            }
        }
    }
    return tc;
}

bool orientation_consistency(const TileComplex& tc, std::string* why)
{
    // incidence of each facet in the reference orientation of one tile
    const Boundary d = cellular_boundary(tc.poset);
    const int top = tc.poset.find(corolla(tc.l, tc.k));
    std::map<int, long long> inc;
    if (top >= 0)
        for (auto [f, c] : d[static_cast<size_t>(top)])
            inc[f] = c;
    for (const auto& pr : tc.pairs) {
        if (pr.type != 1)
            continue;
        const int fa = tc.poset.find(pr.tree_a);
        const int fb = tc.poset.find(pr.tree_b);
        const long long ca = inc.count(fa) ? inc[fa] : 0;
        const long long cb = inc.count(fb) ? inc[fb] : 0;
        const long long sa = tc.tile_sign[static_cast<size_t>(pr.tile_a)] * ca;
        const long long sb = tc.tile_sign[static_cast<size_t>(pr.tile_b)] * cb;
        // the glued facet must inherit opposite boundary orientations
        if (ca == 0 || sa + sb != 0) {
            if (why)
                *why = "type I facet " + to_text(pr.tree_a) + " between tiles " +
                       std::to_string(pr.tile_a) + " and " + std::to_string(pr.tile_b) +
                       " carries induced signs " + std::to_string(sa) + ", " + std::to_string(sb);
            return false;
        }
    }
    return true;
}

GroupModel local_group_model(const Stratum& s)
{
    const Flat f = flatten(s.tree);
    GroupModel g;
    g.codim = static_cast<int>(f.v.size()) - 1;
    for (size_t v = 0; v < f.v.size(); ++v) {
        if (f.v[v].marks != 0)
            continue;
        std::vector<int> flips;
        if (f.v[v].parent >= 0)
            flips.push_back(static_cast<int>(v)); // edge below v
        for (int c : f.v[v].slots)
            if (c >= 0)
                flips.push_back(c);
        std::sort(flips.begin(), flips.end());
        g.ghosts.push_back(static_cast<int>(v));
        g.generators.push_back(std::move(flips));
    }
    return g;
}

// ------------------------------------------------------------ collars

Collar collar_cells(int l, int k)
{
    if (l - 1 + 2 * k < 1)
        throw StabilityError("collar needs l - 1 + 2k >= 1");
    const FacePoset p = face_poset(Family::K, l, k);
    Collar c;
    const int amb = dimension(Family::K, l, k);
    for (size_t i = 0; i < p.strata.size(); ++i) {
        CollarCell cell;
        cell.stratum = static_cast<int>(i);
        cell.tree = p.strata[i].tree;
        for (int e = 1; e <= edge_count(cell.tree); ++e)
            cell.labeled_edges.push_back(e);
        cell.dim = amb;
        c.cells.push_back(std::move(cell));
    }
    for (const auto& cv : p.covers)
        c.gluings.push_back({cv.cell, cv.face});
    std::sort(c.gluings.begin(), c.gluings.end());
    return c;
}

bool collar_connected(const Collar& c)
{
    if (c.cells.empty())
        return true;
    std::vector<std::vector<int>> adj(c.cells.size());
    for (auto [a, b] : c.gluings) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    std::vector<bool> seen(c.cells.size(), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    size_t n = 1;
    while (!q.empty()) {
        int x = q.front();
        q.pop();
        for (int y : adj[static_cast<size_t>(x)])
            if (!seen[static_cast<size_t>(y)]) {
                seen[static_cast<size_t>(y)] = true;
                ++n;
                q.push(y);
            }
    }
    return n == c.cells.size();
}

} // namespace clx

// ------------------------------------------------------------ counting

namespace clx {

namespace {

using Counts = std::vector<long long>; // index = dimension

void add_shifted(Counts& into, const Counts& x, int shift, long long scale = 1)
{
    if (into.size() < x.size() + static_cast<size_t>(shift))
        into.resize(x.size() + static_cast<size_t>(shift), 0);
    for (size_t d = 0; d < x.size(); ++d)
        into[d + static_cast<size_t>(shift)] += scale * x[d];
}

Counts convolve(const Counts& a, const Counts& b)
{
    if (a.empty() || b.empty())
        return {};
    Counts c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] += a[i] * b[j];
    return c;
}

// mirrors the two populations of the tree generator
struct CountGen {
    std::map<std::array<int, 3>, Counts> tree_memo;
    std::map<std::array<int, 4>, Counts> seq_memo; // (l, k, slots, population)

    // population 0: uncolored, 1: below the colors, 2: leafless uncolored only
    Counts items(int l, int k, int pop)
    {
        Counts out;
        if (pop == 0 && l == 1 && k == 0)
            out = {1};
        if (pop == 2) {
            if (l == 0)
                add_shifted(out, trees(0, k, 0), 0);
            return out;
        }
        add_shifted(out, trees(l, k, pop), 0);
        if (pop == 1 && l == 0)
            add_shifted(out, trees(0, k, 0), 0);
        return out;
    }

    Counts seq(int l, int k, int s, int pop)
    {
        if (s == 0)
            return l == 0 && k == 0 ? Counts{1} : Counts{};
        if (l + k < s)
            return {};
        const std::array<int, 4> key{l, k, s, pop};
        if (auto it = seq_memo.find(key); it != seq_memo.end())
            return it->second;
        Counts out;
        for (int l1 = 0; l1 <= l; ++l1)
            for (int k1 = 0; k1 <= k; ++k1) {
                if (l1 == 0 && k1 == 0)
                    continue;
                const Counts rest = seq(l - l1, k - k1, s - 1, pop);
                if (rest.empty())
                    continue;
                add_shifted(out, convolve(items(l1, k1, pop), rest), 0);
            }
        return seq_memo[key] = out;
    }

    Counts trees(int l, int k, int pop)
    {
        const std::array<int, 3> key{l, k, pop};
        if (auto it = tree_memo.find(key); it != tree_memo.end())
            return it->second;
        Counts out;
        for (int i = 0; i <= k; ++i)
            for (int s = 0; s <= l + k - i; ++s) {
                // uncolored vertex; a lone slot carrying everything is unstable
                if (!(i == 0 && s == 1) && s + 1 + 2 * i >= 3) {
                    Counts c = seq(l, k - i, s, pop);
                    if (pop == 1 && l == 0) // needs a colored child
                        add_shifted(c, seq(0, k - i, s, 2), 0, -1);
                    add_shifted(out, c, s - 2 + 2 * i);
                }
                if (pop == 1 && s + 1 + 2 * i >= 2)
                    add_shifted(out, seq(l, k - i, s, 0), s - 1 + 2 * i);
            }
        while (!out.empty() && out.back() == 0)
            out.pop_back();
        return tree_memo[key] = out;
    }
};

} // namespace

std::vector<long long> stratum_counts(Family f, int l, int k)
{
    if (l < 0 || k < 0)
        throw ShapeError("negative leaf or mark count");
    if (f != Family::Q && l == 1 && k == 0)
        return {1};
    check_caps(l, k);
    dimension(f, l, k); // stability
    CountGen g;
    Counts c = g.trees(l, k, f == Family::Q ? 1 : 0);
    if (f == Family::Q && l == 0)
        add_shifted(c, g.trees(0, k, 0), 0);
    while (!c.empty() && c.back() == 0)
        c.pop_back();
    return c;
}

} // namespace clx

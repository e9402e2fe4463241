#include "clx/trees.hpp"
#include "clx/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace clx {

std::strong_ordering Node::operator<=>(const Node& o) const
{
    if (auto c = leaf <=> o.leaf; c != 0)
        return c;
    if (auto c = marks <=> o.marks; c != 0)
        return c;
    if (auto c = colored <=> o.colored; c != 0)
        return c;
    return std::lexicographical_compare_three_way(kids.begin(), kids.end(), o.kids.begin(),
                                                  o.kids.end());
}

Tree make_leaf()
{
    Node n;
    n.leaf = true;
    return n;
}

Tree make_vertex(int marks, std::vector<Tree> kids, bool colored)
{
    Node n;
    n.marks = marks;
    n.colored = colored;
    n.kids = std::move(kids);
    return n;
}

Tree corolla(int l, int k, bool colored)
{
    return make_vertex(k, std::vector<Tree>(static_cast<size_t>(l), make_leaf()), colored);
}

int leaf_count(const Tree& t)
{
    if (t.leaf)
        return 1;
    int n = 0;
    for (const auto& c : t.kids)
        n += leaf_count(c);
    return n;
}

int mark_count(const Tree& t)
{
    int n = t.marks;
    for (const auto& c : t.kids)
        n += mark_count(c);
    return n;
}

int vertex_count(const Tree& t)
{
    if (t.leaf)
        return 0;
    int n = 1;
    for (const auto& c : t.kids)
        n += vertex_count(c);
    return n;
}

int edge_count(const Tree& t) { return vertex_count(t) - 1; }

int colored_count(const Tree& t)
{
    int n = t.colored ? 1 : 0;
    for (const auto& c : t.kids)
        n += colored_count(c);
    return n;
}

int boundary_marks(const Node& v)
{
    return static_cast<int>(std::count_if(v.kids.begin(), v.kids.end(),
                                          [](const Node& c) { return c.leaf; }));
}

bool vertex_stable(const Node& v)
{
    const int s = static_cast<int>(v.kids.size()) + 1 + 2 * v.marks;
    return v.colored ? s >= 2 : s >= 3;
}

bool is_stable(const Tree& t)
{
    if (t.leaf)
        return true;
    if (t.marks < 0 || !vertex_stable(t))
        return false;
    return std::all_of(t.kids.begin(), t.kids.end(), [](const Node& c) { return is_stable(c); });
}

namespace {
bool color_ok(const Node& v, int above)
{
    const int here = above + (v.colored ? 1 : 0);
    if (here > 1)
        return false;
    for (const auto& c : v.kids) {
        if (c.leaf ? here != 1 : !color_ok(c, here))
            return false;
    }
    return true;
}
} // namespace

bool satisfies_color_axiom(const Tree& t) { return !t.leaf && color_ok(t, 0); }

bool is_stable_pair(int l, int k) { return l >= 0 && k >= 0 && l + 1 + 2 * k >= 3; }

void check_caps(int l, int k)
{
    if (l < 0 || k < 0)
        throw ShapeError("negative leaf or mark count");
    if (l > 10 || k > 4)
        throw CapError("enumeration capped at l <= 10, k <= 4 (got l=" + std::to_string(l) +
                       ", k=" + std::to_string(k) + ")");
}

namespace {

using Key = std::pair<int, int>;
using Seq = std::vector<Node>;

// Memoized generator of planar vertices, in two populations:
//   up   : uncolored trees (K-type, also the region above the colors)
//   down : trees with colored vertices, rooted below the colors; leafless
//          uncolored branches may hang below the colors
struct Gen {
    std::map<Key, std::vector<Node>> up, down;
    std::map<Key, std::vector<Seq>> up_seq, down_seq;

    // candidates for a single slot carrying (l, k)
    std::vector<Node> items(int l, int k, bool is_up)
    {
        std::vector<Node> out;
        if (is_up && l == 1 && k == 0)
            out.push_back(make_leaf());
        const auto& tr = trees(l, k, is_up);
        out.insert(out.end(), tr.begin(), tr.end());
        if (!is_up && l == 0) {
            const auto& bare = trees(0, k, true);
            out.insert(out.end(), bare.begin(), bare.end());
        }
        return out;
    }

    // sequences of slots summing to (l, k); `skip_whole` drops a lone slot
    // carrying everything
    std::vector<Seq> build_seqs(int l, int k, bool is_up, bool skip_whole)
    {
        std::vector<Seq> out;
        if (l == 0 && k == 0)
            out.push_back({});
        for (int l1 = 0; l1 <= l; ++l1)
            for (int k1 = 0; k1 <= k; ++k1) {
                if ((l1 == 0 && k1 == 0) || (skip_whole && l1 == l && k1 == k))
                    continue;
                const auto firsts = items(l1, k1, is_up);
                if (firsts.empty())
                    continue;
                const auto& rests = seqs(l - l1, k - k1, is_up);
                for (const auto& f : firsts)
                    for (const auto& rest : rests) {
                        Seq s{f};
                        s.insert(s.end(), rest.begin(), rest.end());
                        out.push_back(std::move(s));
                    }
            }
        return out;
    }

    const std::vector<Seq>& seqs(int l, int k, bool is_up)
    {
        auto& memo = is_up ? up_seq : down_seq;
        if (auto it = memo.find({l, k}); it != memo.end())
            return it->second;
        auto out = build_seqs(l, k, is_up, false);
        return memo[{l, k}] = std::move(out);
    }

    const std::vector<Node>& trees(int l, int k, bool is_up)
    {
        auto& memo = is_up ? up : down;
        if (auto it = memo.find({l, k}); it != memo.end())
            return it->second;
        std::vector<Node> out;
        for (int i = 0; i <= k; ++i) {
            // uncolored vertex; its slots live in the same population. A lone
            // slot carrying all of (l, k) would recurse on itself and is
            // unstable anyway, so i == 0 needs at least two slots.
            auto cands = i > 0 ? seqs(l, k - i, is_up) : build_seqs(l, k, is_up, true);
            for (auto& s : cands) {
                if (!is_up && std::none_of(s.begin(), s.end(),
                                           [](const Node& c) { return colored_count(c) > 0; }))
                    continue;
                Node v = make_vertex(i, s, false);
                if (vertex_stable(v))
                    out.push_back(std::move(v));
            }
            if (!is_up) {
                // colored vertex: slots are leaves or uncolored trees
                for (const auto& s : seqs(l, k - i, true)) {
                    Node v = make_vertex(i, s, true);
                    if (vertex_stable(v))
                        out.push_back(std::move(v));
                }
            }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return memo[{l, k}] = std::move(out);
    }
};

} // namespace

std::vector<Tree> enumerate_all_types(int l, int k)
{
    check_caps(l, k);
    if (l == 1 && k == 0)
        return {corolla(1, 0)};
    if (!is_stable_pair(l, k))
        throw StabilityError("no stable disk with l=" + std::to_string(l) +
                             ", k=" + std::to_string(k));
    Gen g;
    return g.trees(l, k, true);
}

std::vector<Tree> enumerate_types(int l, int k, int codim)
{
    if (codim < 0)
        throw RangeError("negative codimension");
    check_caps(l, k);
    if (!is_stable_pair(l, k)) {
        if (codim > 0 || !(l == 1 && k == 0))
            throw StabilityError("unstable (l,k)=(" + std::to_string(l) + "," +
                                 std::to_string(k) + ")");
        return {corolla(1, 0)};
    }
    std::vector<Tree> out;
    for (auto& t : enumerate_all_types(l, k))
        if (edge_count(t) == codim)
            out.push_back(std::move(t));
    return out;
}

std::vector<Tree> enumerate_colored_types(int l, int k)
{
    check_caps(l, k);
    if (l + 2 * k < 1)
        throw StabilityError("no stable quilted disk with l=0, k=0");
    Gen g;
    auto out = g.trees(l, k, false);
    if (l == 0) {
        // the seam may vanish entirely when there are no leaves
        const auto& bare = g.trees(0, k, true);
        out.insert(out.end(), bare.begin(), bare.end());
        std::sort(out.begin(), out.end());
    }
    return out;
}

int tree_dimension(const Tree& t)
{
    if (t.leaf)
        return 0;
    int d = static_cast<int>(t.kids.size()) + 1 - 3 + 2 * t.marks + (t.colored ? 1 : 0);
    for (const auto& c : t.kids)
        d += tree_dimension(c);
    return d;
}

// ---------------------------------------------------------------- flat view

namespace {
int flatten_into(const Node& n, int parent, Flat& f)
{
    const int id = static_cast<int>(f.v.size());
    f.v.push_back({n.marks, n.colored, parent, {}});
    for (const auto& c : n.kids) {
        if (c.leaf) {
            f.v[id].slots.push_back(-1);
        } else {
            const int cid = flatten_into(c, id, f);
            f.v[id].slots.push_back(cid);
        }
    }
    return id;
}
} // namespace

Flat flatten(const Tree& t)
{
    if (t.leaf)
        throw ShapeError("a bare leaf is not a tree");
    Flat f;
    flatten_into(t, -1, f);
    return f;
}

Tree unflatten(const Flat& f, int root)
{
    const auto& fv = f.v.at(static_cast<size_t>(root));
    Node n = make_vertex(fv.marks, {}, fv.colored);
    for (int s : fv.slots)
        n.kids.push_back(s < 0 ? make_leaf() : unflatten(f, s));
    return n;
}

std::vector<int> preorder(const Flat& f, int root)
{
    std::vector<int> out;
    std::function<void(int)> walk = [&](int v) {
        out.push_back(v);
        for (int s : f.v[static_cast<size_t>(v)].slots)
            if (s >= 0)
                walk(s);
    };
    walk(root);
    return out;
}

std::vector<std::pair<int, int>> leaf_ranges(const Flat& f)
{
    std::vector<std::pair<int, int>> r(f.v.size(), {0, 0});
    int next = 1;
    std::function<void(int)> walk = [&](int v) {
        r[static_cast<size_t>(v)].first = next;
        for (int s : f.v[static_cast<size_t>(v)].slots) {
            if (s < 0)
                ++next;
            else
                walk(s);
        }
        r[static_cast<size_t>(v)].second = next;
    };
    walk(0);
    return r;
}

// ------------------------------------------------------------- contraction

namespace {
void merge_into_parent(Flat& f, int e)
{
    auto& child = f.v[static_cast<size_t>(e)];
    auto& par = f.v[static_cast<size_t>(child.parent)];
    auto it = std::find(par.slots.begin(), par.slots.end(), e);
    const auto pos = it - par.slots.begin();
    par.slots.erase(it);
    par.slots.insert(par.slots.begin() + pos, child.slots.begin(), child.slots.end());
    par.marks += child.marks;
    par.colored = par.colored || child.colored;
    for (int s : child.slots)
        if (s >= 0)
            f.v[static_cast<size_t>(s)].parent = child.parent;
    child.slots.clear();
}
} // namespace

Tree contract(const Tree& t, int e)
{
    return contract_edges(t, {e});
}

Tree contract_edges(const Tree& t, std::vector<int> edges)
{
    Flat f = flatten(t);
    const int nv = static_cast<int>(f.v.size());
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw EdgeError("repeated edge");
    for (int e : edges)
        if (e < 1 || e >= nv)
            throw EdgeError("edge " + std::to_string(e) + " is not an interior edge (1.." +
                            std::to_string(nv - 1) + ")");
    // children have larger preorder ids than their parents
    for (auto it = edges.rbegin(); it != edges.rend(); ++it)
        merge_into_parent(f, *it);
    return unflatten(f, 0);
}

bool leq(const Tree& t1, const Tree& t2)
{
    if (leaf_count(t1) != leaf_count(t2) || mark_count(t1) != mark_count(t2))
        throw ShapeError("leq needs trees with the same (l,k)");
    const int e1 = edge_count(t1), e2 = edge_count(t2);
    if (e1 > e2)
        return false;
    const int d = e2 - e1;
    std::vector<int> pick(static_cast<size_t>(e2), 0);
    std::fill(pick.end() - d, pick.end(), 1);
    do {
        std::vector<int> es;
        for (int i = 0; i < e2; ++i)
            if (pick[static_cast<size_t>(i)])
                es.push_back(i + 1);
        if (contract_edges(t2, es) == t1)
            return true;
    } while (std::next_permutation(pick.begin(), pick.end()));
    return false;
}

std::vector<Tree> maximal_types(int l, int k)
{
    if (l == 1 && k == 0)
        return {corolla(1, 0)};
    std::vector<Tree> out;
    for (auto& t : enumerate_all_types(l, k))
        if (tree_dimension(t) == 0)
            out.push_back(std::move(t));
    return out;
}

// -------------------------------------------------------------- text form
//   vertex := ["c"] "[" item* "]" [":" marks]      item := "x" | vertex

std::string to_text(const Tree& t)
{
    if (t.leaf)
        return "x";
    std::string s = t.colored ? "c[" : "[";
    for (size_t i = 0; i < t.kids.size(); ++i) {
        if (i)
            s += ' ';
        s += to_text(t.kids[i]);
    }
    s += ']';
    if (t.marks)
        s += ":" + std::to_string(t.marks);
    return s;
}

namespace {
struct TextParser {
    const std::string& s;
    size_t i = 0;
    void ws()
    {
        while (i < s.size() && (s[i] == ' ' || s[i] == ',' || s[i] == '\t' || s[i] == '\n'))
            ++i;
    }
    [[noreturn]] void fail(const std::string& m)
    {
        throw ParseError("tree text at " + std::to_string(i) + ": " + m);
    }
    Node item()
    {
        ws();
        if (i < s.size() && s[i] == 'x') {
            ++i;
            return make_leaf();
        }
        return vertex();
    }
    Node vertex()
    {
        ws();
        Node n;
        if (i < s.size() && s[i] == 'c') {
            n.colored = true;
            ++i;
        }
        if (i >= s.size() || s[i] != '[')
            fail("expected '['");
        ++i;
        for (;;) {
            ws();
            if (i >= s.size())
                fail("unterminated vertex");
            if (s[i] == ']') {
                ++i;
                break;
            }
            n.kids.push_back(item());
        }
        if (i < s.size() && s[i] == ':') {
            ++i;
            size_t used = 0;
            try {
                n.marks = std::stoi(s.substr(i), &used);
            } catch (const std::exception&) {
                fail("bad mark count");
            }
            if (n.marks < 0)
                fail("negative mark count");
            i += used;
        }
        return n;
    }
};
} // namespace

Tree parse_text(const std::string& s)
{
    TextParser p{s};
    Node n = p.vertex();
    p.ws();
    if (p.i != s.size())
        p.fail("trailing characters");
    return n;
}

} // namespace clx

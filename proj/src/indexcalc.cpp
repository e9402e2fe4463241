#include "clx/indexcalc.hpp"
#include "clx/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace clx {

std::string edge_state_name(EdgeState s)
{
    switch (s) {
    case EdgeState::Node: return "node";
    case EdgeState::Line: return "line";
    case EdgeState::Broken: return "broken";
    }
    return "?";
}

EdgeState parse_edge_state(const std::string& s)
{
    if (s == "node")
        return EdgeState::Node;
    if (s == "line")
        return EdgeState::Line;
    if (s == "broken")
        return EdgeState::Broken;
    throw ParseError("unknown edge state '" + s + "'");
}

ClusterType smooth_cluster(const Tree& t)
{
    ClusterType ct;
    ct.tree = t;
    for (int e = 1; e <= edge_count(t); ++e)
        ct.edges[e] = EdgeState::Line;
    return ct;
}

int count_state(const ClusterType& ct, EdgeState s)
{
    return static_cast<int>(std::count_if(ct.edges.begin(), ct.edges.end(),
                                          [&](const auto& kv) { return kv.second == s; }));
}

void check_cluster(const ClusterType& ct)
{
    const int ne = edge_count(ct.tree);
    if (static_cast<int>(ct.edges.size()) != ne ||
        (ne > 0 && (ct.edges.begin()->first != 1 || ct.edges.rbegin()->first != ne)))
        throw ShapeError("cluster needs one state per interior edge 1.." + std::to_string(ne));
    if (ct.complex_nodes < 0 || ct.interior_incidence < 0)
        throw ShapeError("negative node or incidence count");
}

int cluster_codim(const ClusterType& ct)
{
    return count_state(ct, EdgeState::Node) + count_state(ct, EdgeState::Broken) + 2 * ct.complex_nodes;
}

int BoundaryConditionIndex::total() const { return std::accumulate(per_disk.begin(), per_disk.end(), 0); }

void check_monotone(const BoundaryConditionIndex& mu, int NL)
{
    if (NL < 2)
        throw MonotoneError("minimal Maslov number must be at least 2");
    for (size_t i = 0; i < mu.per_disk.size(); ++i)
        if (mu.per_disk[i] < 0 || mu.per_disk[i] % NL != 0)
            throw MonotoneError("disk " + std::to_string(i) + " has Maslov index " +
                                std::to_string(mu.per_disk[i]) + ", not a nonnegative multiple of " +
                                std::to_string(NL));
}

int index_cr(const ClusterType& ct, const EndpointCondition& ec, const BoundaryConditionIndex& mu, int n)
{
    check_cluster(ct);
    if (static_cast<int>(ec.leaves.size()) != leaf_count(ct.tree))
        throw ShapeError("endpoint condition has " + std::to_string(ec.leaves.size()) + " leaves, cluster has " +
                         std::to_string(leaf_count(ct.tree)));
    if (static_cast<int>(ec.breakings.size()) != count_state(ct, EdgeState::Broken))
        throw ShapeError("one endpoint per breaking is required");
    if (static_cast<int>(mu.per_disk.size()) != vertex_count(ct.tree))
        throw ShapeError("one Maslov contribution per disk is required");
    auto in_range = [&](int v) {
        if (v < 0 || v > n)
            throw ShapeError("mu+ value " + std::to_string(v) + " outside 0.." + std::to_string(n));
    };
    in_range(ec.root);
    int ind = ec.root + mu.total();
    for (int v : ec.leaves) {
        in_range(v);
        ind -= v;
    }
    // each breaking is a leaf of the component below it and the root of the one above
    for (int v : ec.breakings) {
        in_range(v);
        ind += v - v;
    }
    return ind - n * (ct.interior_incidence + ct.complex_nodes);
}

int coker_dim(const ClusterType& ct, int l, int k)
{
    check_cluster(ct);
    if ((l == 1 && k == 0) || (l == 0 && k == 0))
        return 0;
    const int v = l - 2 + 2 * k - count_state(ct, EdgeState::Broken) - count_state(ct, EdgeState::Node) -
                  2 * ct.complex_nodes;
    if (v < 0)
        throw StabilityError("cluster type is overdegenerate for (" + std::to_string(l) + "," +
                             std::to_string(k) + ")");
    return v;
}

namespace {

// edge states and Maslov values listed in preorder (root entry of states unused)
struct Listed {
    std::vector<EdgeState> state;
    std::vector<int> mu;
};

Listed listed(const ClusterType& ct, const BoundaryConditionIndex& m)
{
    Listed L;
    const int nv = vertex_count(ct.tree);
    L.state.assign(static_cast<size_t>(nv), EdgeState::Line);
    for (auto& [e, s] : ct.edges)
        L.state[static_cast<size_t>(e)] = s;
    L.mu = m.per_disk;
    return L;
}

} // namespace

Glued concatenate(const ClusterType& c1, const EndpointCondition& e1, const BoundaryConditionIndex& m1, int j,
                  const ClusterType& c2, const EndpointCondition& e2, const BoundaryConditionIndex& m2,
                  EdgeState s)
{
    check_cluster(c1);
    check_cluster(c2);
    const int l1 = leaf_count(c1.tree);
    if (j < 1 || j > l1)
        throw RangeError("leaf " + std::to_string(j) + " outside 1.." + std::to_string(l1));
    if (static_cast<int>(e1.leaves.size()) != l1 || static_cast<int>(e2.leaves.size()) != leaf_count(c2.tree))
        throw ShapeError("endpoint conditions do not match the clusters");
    if (e1.leaves[static_cast<size_t>(j - 1)] != e2.root)
        throw ShapeError("glued endpoint has mu+ " + std::to_string(e1.leaves[static_cast<size_t>(j - 1)]) +
                         " on one side and " + std::to_string(e2.root) + " on the other");
    if (static_cast<int>(m1.per_disk.size()) != vertex_count(c1.tree) ||
        static_cast<int>(m2.per_disk.size()) != vertex_count(c2.tree))
        throw ShapeError("one Maslov contribution per disk is required");

    const Listed A = listed(c1, m1), B = listed(c2, m2);
    Glued g;
    g.ct.complex_nodes = c1.complex_nodes + c2.complex_nodes;
    g.ct.interior_incidence = c1.interior_incidence + c2.interior_incidence;
    g.ec.root = e1.root;
    std::vector<EdgeState> states;
    size_t b1 = 0, b2 = 0;
    int leaf = 0;
    int va = 0;

    std::function<Tree(const Node&, int&, const Listed&, const EndpointCondition&, size_t&, bool)> copy_b =
        [&](const Node& v, int& id, const Listed& L, const EndpointCondition& e, size_t& bi, bool top) -> Tree {
        const int me = id++;
        const EdgeState st = top ? s : L.state[static_cast<size_t>(me)];
        if (top || me != 0) {
            states.push_back(st);
            if (st == EdgeState::Broken)
                g.ec.breakings.push_back(top ? e2.root : e.breakings[bi++]);
        }
        g.mu.per_disk.push_back(L.mu[static_cast<size_t>(me)]);
        std::vector<Tree> kids;
        for (const auto& c : v.kids) {
            if (c.leaf) {
                kids.push_back(make_leaf());
                g.ec.leaves.push_back(e2.leaves[static_cast<size_t>(leaf++)]);
            } else {
                kids.push_back(copy_b(c, id, L, e, bi, false));
            }
        }
        return make_vertex(v.marks, std::move(kids), v.colored);
    };

    int l1seen = 0;
    std::function<Tree(const Node&)> copy_a = [&](const Node& v) -> Tree {
        const int me = va++;
        if (me != 0) {
            states.push_back(A.state[static_cast<size_t>(me)]);
            if (A.state[static_cast<size_t>(me)] == EdgeState::Broken)
                g.ec.breakings.push_back(e1.breakings[b1++]);
        }
        g.mu.per_disk.push_back(A.mu[static_cast<size_t>(me)]);
        std::vector<Tree> kids;
        for (const auto& c : v.kids) {
            if (c.leaf) {
                ++l1seen;
                if (l1seen == j) {
                    int id = 0;
                    kids.push_back(copy_b(c2.tree, id, B, e2, b2, true));
                } else {
                    kids.push_back(make_leaf());
                    g.ec.leaves.push_back(e1.leaves[static_cast<size_t>(l1seen - 1)]);
                }
            } else {
                kids.push_back(copy_a(c));
            }
        }
        return make_vertex(v.marks, std::move(kids), v.colored);
    };
    g.ct.tree = copy_a(c1.tree);
    for (size_t i = 0; i < states.size(); ++i)
        g.ct.edges[static_cast<int>(i + 1)] = states[i];
    check_cluster(g.ct);
    return g;
}

static long long pow3(int e)
{
    long long p = 1;
    for (int i = 0; i < e; ++i)
        p *= 3;
    return p;
}

long long count_cluster_types(int l, int k)
{
    long long total = 0;
    for (const Tree& t : enumerate_all_types(l, k))
        total += pow3(edge_count(t));
    return total;
}

void for_each_cluster_type(int l, int k, const std::function<void(const ClusterType&)>& fn)
{
    for (const Tree& t : enumerate_all_types(l, k)) {
        const int ne = edge_count(t);
        ClusterType ct;
        ct.tree = t;
        for (long long code = 0, total = pow3(ne); code < total; ++code) {
            long long c = code;
            for (int e = 1; e <= ne; ++e) {
                ct.edges[e] = static_cast<EdgeState>(c % 3);
                c /= 3;
            }
            fn(ct);
        }
    }
}

std::vector<ClusterType> enumerate_cluster_types(int l, int k)
{
    const long long n = count_cluster_types(l, k);
    if (n > 200000)
        throw CapError(std::to_string(n) + " cluster types; use the streaming form");
    std::vector<ClusterType> out;
    out.reserve(static_cast<size_t>(n));
    for_each_cluster_type(l, k, [&](const ClusterType& ct) { out.push_back(ct); });
    return out;
}

// ---------------------------------------------------------------- trajectories

int trajectory_index(int mu_minus, int mu_plus, int muF) { return mu_minus - mu_plus + muF; }

int trajectory_energy(int muF, int NL, bool monotone)
{
    if (NL <= 0)
        throw MonotoneError("NL must be positive");
    if (monotone && (muF < 0 || muF % NL != 0))
        throw MonotoneError("Maslov index " + std::to_string(muF) + " is not a nonnegative multiple of " +
                            std::to_string(NL));
    return muF / NL;
}

bool rigid_m(int l, int index) { return index == 2 - l; }
bool rigid_quilted(int l, int index) { return index == 1 - l; }

// ---------------------------------------------------------------- reductions

std::string surgery_name(Surgery s)
{
    switch (s) {
    case Surgery::I: return "I";
    case Surgery::IIa: return "IIa";
    case Surgery::IIb: return "IIb";
    case Surgery::III: return "III";
    case Surgery::GenI: return "gen-I";
    case Surgery::GenII: return "gen-II";
    case Surgery::GenIII: return "gen-III";
    }
    return "?";
}

Surgery parse_surgery(const std::string& s)
{
    for (Surgery x : {Surgery::I, Surgery::IIa, Surgery::IIb, Surgery::III, Surgery::GenI, Surgery::GenII,
                      Surgery::GenIII})
        if (surgery_name(x) == s)
            return x;
    throw ParseError("unknown surgery '" + s + "'");
}

namespace {

struct Work {
    Flat f;
    std::vector<EdgeState> state; // per old vertex
    std::vector<int> mu;
    int root = 0;
    int removed_marks = 0;
};

bool is_ancestor(const Flat& f, int a, int v)
{
    for (int w = f.v[static_cast<size_t>(v)].parent; w >= 0; w = f.v[static_cast<size_t>(w)].parent)
        if (w == a)
            return true;
    return false;
}

int slot_of(const Flat& f, int v)
{
    const auto& s = f.v[static_cast<size_t>(f.v[static_cast<size_t>(v)].parent)].slots;
    return static_cast<int>(std::find(s.begin(), s.end(), v) - s.begin());
}

void drop_disk(Work& w, int v)
{
    w.removed_marks += w.f.v[static_cast<size_t>(v)].marks;
    w.mu[static_cast<size_t>(v)] = 0;
}

void check_disk(const Work& w, int v)
{
    if (v < 0 || v >= static_cast<int>(w.f.v.size()))
        throw SurgeryError("no disk " + std::to_string(v));
}

// move the slots of `from` into `to` at position pos; `from` is detached
void absorb(Work& w, int from, int to, int pos)
{
    auto& dst = w.f.v[static_cast<size_t>(to)].slots;
    const auto src = w.f.v[static_cast<size_t>(from)].slots;
    if (pos < 0 || pos > static_cast<int>(dst.size()))
        throw SurgeryError("attachment position " + std::to_string(pos) + " outside 0.." +
                           std::to_string(dst.size()));
    dst.insert(dst.begin() + pos, src.begin(), src.end());
    for (int c : src)
        if (c >= 0)
            w.f.v[static_cast<size_t>(c)].parent = to;
    w.f.v[static_cast<size_t>(from)].slots.clear();
}

void detach(Work& w, int v)
{
    const int p = w.f.v[static_cast<size_t>(v)].parent;
    auto& s = w.f.v[static_cast<size_t>(p)].slots;
    s.erase(s.begin() + slot_of(w.f, v));
    w.f.v[static_cast<size_t>(v)].parent = -1;
}

bool has_leaf(const Flat& f, int v)
{
    for (int c : f.v[static_cast<size_t>(v)].slots)
        if (c < 0 || has_leaf(f, c))
            return true;
    return false;
}

void prune_leafless(Work& w, int v)
{
    auto& s = w.f.v[static_cast<size_t>(v)].slots;
    std::vector<int> keep;
    for (int c : s) {
        if (c >= 0 && !has_leaf(w.f, c)) {
            std::function<void(int)> kill = [&](int x) {
                drop_disk(w, x);
                for (int y : w.f.v[static_cast<size_t>(x)].slots)
                    if (y >= 0)
                        kill(y);
            };
            kill(c);
        } else {
            keep.push_back(c);
        }
    }
    s = keep;
    for (int c : s)
        if (c >= 0)
            prune_leafless(w, c);
}

} // namespace

ClusterSurgeryRecord reduce(const ClusterType& ct, const BoundaryConditionIndex& mu, const SurgeryPlan& plan)
{
    check_cluster(ct);
    if (static_cast<int>(mu.per_disk.size()) != vertex_count(ct.tree))
        throw ShapeError("one Maslov contribution per disk is required");
    Work w;
    w.f = flatten(ct.tree);
    w.state.assign(w.f.v.size(), EdgeState::Line);
    for (auto& [e, s] : ct.edges)
        w.state[static_cast<size_t>(e)] = s;
    w.mu = mu.per_disk;
    int N = ct.interior_incidence;

    switch (plan.kind) {
    case Surgery::I: {
        check_disk(w, plan.disk);
        auto& V = w.f.v[static_cast<size_t>(plan.disk)];
        const int d = plan.d;
        if (d < 1)
            throw SurgeryError("covering degree must be positive");
        if (V.marks % d != 0)
            throw SurgeryError("degree " + std::to_string(d) + " does not divide k(D) = " + std::to_string(V.marks));
        if (w.mu[static_cast<size_t>(plan.disk)] % d != 0)
            throw SurgeryError("degree " + std::to_string(d) + " does not divide the Maslov index of the disk");
        w.removed_marks += V.marks - V.marks / d;
        V.marks /= d;
        w.mu[static_cast<size_t>(plan.disk)] /= d;
        break;
    }
    case Surgery::IIa: {
        check_disk(w, plan.upper);
        check_disk(w, plan.lower);
        if (!is_ancestor(w.f, plan.lower, plan.upper))
            throw SurgeryError("IIa needs the removed disk above the absorbing one");
        const int p = w.f.v[static_cast<size_t>(plan.upper)].parent;
        int pos = plan.position;
        if (pos < 0)
            pos = p == plan.lower ? slot_of(w.f, plan.upper) : 0;
        detach(w, plan.upper);
        absorb(w, plan.upper, plan.lower, pos);
        drop_disk(w, plan.upper);
        break;
    }
    case Surgery::IIb: {
        check_disk(w, plan.upper);
        check_disk(w, plan.lower);
        if (!is_ancestor(w.f, plan.lower, plan.upper))
            throw SurgeryError("IIb needs the absorbing disk above the removed one");
        const int d1 = plan.upper, d2 = plan.lower;
        const int p1 = w.f.v[static_cast<size_t>(d1)].parent;
        int pos = plan.position;
        if (pos < 0)
            pos = p1 == d2 ? 0 : static_cast<int>(w.f.v[static_cast<size_t>(d1)].slots.size());
        detach(w, d1);
        const int gp = w.f.v[static_cast<size_t>(d2)].parent;
        if (gp >= 0) {
            auto& s = w.f.v[static_cast<size_t>(gp)].slots;
            s[static_cast<size_t>(slot_of(w.f, d2))] = d1;
            w.f.v[static_cast<size_t>(d1)].parent = gp;
            w.state[static_cast<size_t>(d1)] = w.state[static_cast<size_t>(d2)];
        } else {
            w.root = d1;
        }
        absorb(w, d2, d1, pos);
        drop_disk(w, d2);
        break;
    }
    case Surgery::III:
    case Surgery::GenIII:
        if (leaf_count(ct.tree) == 0)
            throw SurgeryError("type III needs at least one leaf");
        prune_leafless(w, w.root);
        break;
    case Surgery::GenI: {
        check_disk(w, plan.disk);
        if (plan.parts.empty())
            throw SurgeryError("generalized type I needs at least one simple piece");
        int sum = 0, simple = 0;
        for (auto [m, mu_i] : plan.parts) {
            if (m < 1 || mu_i < 0)
                throw SurgeryError("pieces need positive multiplicity and nonnegative Maslov index");
            sum += m * mu_i;
            simple += mu_i;
        }
        if (sum != w.mu[static_cast<size_t>(plan.disk)])
            throw SurgeryError("multiplicities do not decompose the Maslov class of the disk");
        w.mu[static_cast<size_t>(plan.disk)] = simple;
        break;
    }
    case Surgery::GenII: {
        check_disk(w, plan.disk);
        if (plan.disk == w.root)
            throw SurgeryError("generalized type II removes a non-root disk");
        if (plan.incidence < 0)
            throw SurgeryError("incidence count must be nonnegative");
        const int p = w.f.v[static_cast<size_t>(plan.disk)].parent;
        const int pos = slot_of(w.f, plan.disk);
        detach(w, plan.disk);
        absorb(w, plan.disk, p, pos);
        drop_disk(w, plan.disk);
        N += plan.incidence;
        break;
    }
    }

    const auto order = preorder(w.f, w.root);
    ClusterSurgeryRecord rec;
    rec.kind = plan.kind;
    rec.before = ct;
    rec.mu_before = mu;
    rec.after.tree = unflatten(w.f, w.root);
    rec.after.complex_nodes = ct.complex_nodes;
    rec.after.interior_incidence = N;
    for (size_t i = 0; i < order.size(); ++i) {
        rec.mu_after.per_disk.push_back(w.mu[static_cast<size_t>(order[i])]);
        if (i > 0)
            rec.after.edges[static_cast<int>(i)] = w.state[static_cast<size_t>(order[i])];
    }
    rec.removed_marks = w.removed_marks;
    rec.N = N;
    rec.complex_nodes = ct.complex_nodes;
    check_cluster(rec.after);
    return rec;
}

AuditReport reduction_index_audit(const ClusterSurgeryRecord& rec, int assumed_index, int n)
{
    AuditReport a;
    a.l = leaf_count(rec.before.tree);
    a.k_before = mark_count(rec.before.tree);
    a.k_after = mark_count(rec.after.tree);
    a.n = n;
    a.N = n <= 2 ? rec.N : 0;
    a.assumed_index = assumed_index;
    a.maslov_drop = rec.mu_before.total() - rec.mu_after.total();
    a.index_after = assumed_index - a.maslov_drop;
    a.cluster_index_after = -(a.l - 2 + 2 * a.k_after);
    a.quotient_bound = a.index_after - a.cluster_index_after - (n - 1) * a.N;
    a.closed_form = 2 * a.k_after - 1 - (n - 1) * a.N;
    a.simple_range = assumed_index <= -(a.l - 2) + 1;
    a.applies = a.simple_range && a.maslov_drop >= 2;
    a.formula = a.N > 0 ? "2k(r(C)) - 1 - (n-1)N" : "2k(r(C)) - 1";
    return a;
}

// ---------------------------------------------------------------- end labelings

std::vector<std::pair<int, int>> OtimesLabeling::pairs() const
{
    std::vector<std::pair<int, int>> p;
    if (a.empty())
        return p;
    p.push_back({a.front(), a.back()});
    for (size_t j = 1; j < a.size(); ++j)
        p.push_back({a[j - 1], a[j]});
    return p;
}

bool OtimesLabeling::trivial() const
{
    return std::all_of(a.begin(), a.end(), [&](int x) { return x == a.front(); });
}

std::vector<OtimesLabeling> enumerate_otimes_labelings(int l, int c)
{
    if (l < 0 || c < 0)
        throw RangeError("length and c must be nonnegative");
    std::vector<OtimesLabeling> out;
    out.push_back(OtimesLabeling{std::vector<int>(static_cast<size_t>(l) + 1, 0)}); // the trivial class
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int lo) {
        if (static_cast<int>(cur.size()) == l + 1) {
            OtimesLabeling x{cur};
            if (!x.trivial())
                out.push_back(x);
            return;
        }
        for (int v = lo; v <= c; ++v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

OtimesLabeling induced_otimes(const OtimesLabeling& lab, const std::vector<std::pair<int, int>>& intervals)
{
    const int l = static_cast<int>(lab.a.size()) - 1;
    if (intervals.empty())
        throw ShapeError("a component needs at least one leaf");
    for (size_t i = 0; i < intervals.size(); ++i) {
        auto [s, e] = intervals[i];
        if (s < 1 || e > l || s > e)
            throw ShapeError("leaf interval out of range");
        if (i > 0 && s != intervals[i - 1].second + 1)
            throw ShapeError("component leaves must cover consecutive leaf intervals");
    }
    OtimesLabeling out;
    out.a.push_back(lab.a[static_cast<size_t>(intervals.front().first - 1)]);
    for (auto [s, e] : intervals)
        out.a.push_back(lab.a[static_cast<size_t>(e)]);
    return out;
}

bool is_bullet_labeling(const std::vector<int>& lab, int c)
{
    int last = 0;
    for (int v : lab) {
        if (v < 1 || v > c + 1)
            return false;
        if (v == c + 1)
            continue;
        if (v <= last)
            return false;
        last = v;
    }
    return true;
}

std::vector<std::vector<int>> enumerate_bullet_labelings(int l, int c)
{
    if (l < 0 || c < 0)
        throw RangeError("length and c must be nonnegative");
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int last) {
        if (static_cast<int>(cur.size()) == l) {
            out.push_back(cur);
            return;
        }
        for (int v = last + 1; v <= c; ++v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
        cur.push_back(c + 1);
        rec(last);
        cur.pop_back();
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> induced_bullet(const std::vector<int>& lab, int c, const std::vector<std::vector<int>>& above)
{
    std::vector<int> out;
    for (const auto& E : above) {
        int best = c + 1;
        for (int j : E) {
            if (j < 1 || j > static_cast<int>(lab.size()))
                throw ShapeError("leaf " + std::to_string(j) + " out of range");
            if (lab[static_cast<size_t>(j - 1)] != c + 1)
                best = std::min(best, lab[static_cast<size_t>(j - 1)]);
        }
        out.push_back(best);
    }
    return out;
}

} // namespace clx

#include "clx/io.hpp"
#include "clx/errors.hpp"

#include <fstream>
#include <sstream>

namespace clx {

namespace {

template <class T>
T get(const Json& j, const char* key, const char* what)
{
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string(what) + " lacks \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string(what) + " field \"" + key + "\": " + e.what());
    }
}

template <class T>
T get_or(const Json& j, const char* key, T dflt)
{
    if (!j.is_object() || !j.contains(key))
        return dflt;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("field \"") + key + "\": " + e.what());
    }
}

Json label_json(const Generator& g)
{
    if (g.is_f())
        return "f";
    return Json::array({g.j1, g.j2});
}

Generator generator_from(const Json& j)
{
    Generator g;
    g.sym = get<std::string>(j, "sym", "generator");
    g.coidx = get<int>(j, "coidx", "generator");
    if (j.contains("label")) {
        const Json& l = j.at("label");
        if (l.is_string()) {
            if (l.get<std::string>() != "f")
                throw ParseError("generator label must be \"f\" or [j1, j2]");
        } else if (l.is_array() && l.size() == 2 && l[0].is_number_integer() && l[1].is_number_integer()) {
            g.j1 = l[0].get<int>();
            g.j2 = l[1].get<int>();
        } else {
            throw ParseError("generator label must be \"f\" or [j1, j2]");
        }
    }
    return g;
}

int lookup(const std::vector<Generator>& alphabet, const std::string& sym, const char* side)
{
    for (size_t i = 0; i < alphabet.size(); ++i)
        if (alphabet[i].sym == sym)
            return static_cast<int>(i);
    throw ParseError(std::string("unknown ") + side + " symbol '" + sym + "'");
}

const char* role_key(Role r)
{
    switch (r) {
    case Role::M: return "m";
    case Role::H: return "h";
    case Role::K: return "k";
    }
    return "m";
}

} // namespace

// ---------------------------------------------------------------- trees

Json tree_to_json(const Tree& t)
{
    if (t.leaf)
        return "leaf";
    Json j;
    j["b"] = boundary_marks(t);
    j["i"] = t.marks;
    j["col"] = t.colored;
    Json kids = Json::array();
    for (const auto& c : t.kids)
        kids.push_back(tree_to_json(c));
    j["children"] = kids;
    return j;
}

Tree tree_from_json(const Json& j)
{
    if (j.is_string()) {
        if (j.get<std::string>() != "leaf")
            throw ParseError("tree slot must be \"leaf\" or a vertex record");
        return make_leaf();
    }
    if (!j.is_object())
        throw ParseError("tree vertex must be an object");
    const int marks = get<int>(j, "i", "tree vertex");
    const bool col = get_or<bool>(j, "col", false);
    std::vector<Tree> kids;
    if (j.contains("children")) {
        if (!j.at("children").is_array())
            throw ParseError("\"children\" must be an array");
        for (const auto& c : j.at("children"))
            kids.push_back(tree_from_json(c));
    }
    if (marks < 0)
        throw ParseError("negative interior mark count");
    Tree t = make_vertex(marks, std::move(kids), col);
    if (j.contains("b") && get<int>(j, "b", "tree vertex") != boundary_marks(t))
        throw ParseError("\"b\" disagrees with the leaf slots listed in \"children\"");
    return t;
}

// ---------------------------------------------------------------- posets

Json poset_to_json(const FacePoset& p)
{
    Json j;
    j["schema"] = kPosetSchema;
    j["family"] = family_name(p.family);
    j["l"] = p.l;
    j["k"] = p.k;
    Json fv = Json::array();
    for (long long x : p.f_vector())
        fv.push_back(x);
    j["f_vector"] = fv;
    Json nodes = Json::array();
    for (size_t i = 0; i < p.strata.size(); ++i) {
        const Stratum& s = p.strata[i];
        Json n;
        n["id"] = i;
        n["family"] = family_name(s.family);
        n["dim"] = s.dim;
        n["codim"] = s.codim;
        n["text"] = to_text(s.tree);
        n["tree"] = tree_to_json(s.tree);
        if (!s.perm.empty())
            n["perm"] = s.perm;
        nodes.push_back(n);
    }
    j["nodes"] = nodes;
    Json arcs = Json::array();
    for (const auto& c : p.covers)
        arcs.push_back(Json{{"face", c.face}, {"cell", c.cell}, {"sign", c.sign}, {"kind", facet_kind_name(c.kind)}});
    j["arcs"] = arcs;
    return j;
}

std::string poset_to_dot(const FacePoset& p)
{
    std::ostringstream os;
    os << "digraph \"" << family_name(p.family) << "_" << p.l << "_" << p.k << "\" {\n";
    os << "  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n";
    for (size_t i = 0; i < p.strata.size(); ++i)
        os << "  s" << i << " [label=\"" << to_text(p.strata[i].tree) << "\\ndim " << p.strata[i].dim << "\"];\n";
    for (const auto& c : p.covers)
        os << "  s" << c.face << " -> s" << c.cell << " [label=\"" << (c.sign > 0 ? "+" : "-") << "\"];\n";
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------- labelings

Json labeling_to_json(const EdgeLabeling& x)
{
    Json j = Json::object();
    for (const auto& [e, v] : x)
        j[std::to_string(e)] = to_string(v);
    return j;
}

EdgeLabeling labeling_from_json(const Json& j)
{
    if (!j.is_object())
        throw ParseError("labeling must be an object edge -> \"p/q\"");
    EdgeLabeling x;
    for (const auto& [k, v] : j.items()) {
        int e = 0;
        try {
            size_t used = 0;
            e = std::stoi(k, &used);
            if (used != k.size())
                throw std::invalid_argument(k);
        } catch (const std::exception&) {
            throw ParseError("edge id '" + k + "' is not an integer");
        }
        if (v.is_string())
            x[e] = parse_rational(v.get<std::string>());
        else if (v.is_number_integer())
            x[e] = Rational(v.get<long>());
        else
            throw ParseError("edge label must be a rational string");
    }
    return x;
}

Json sympow_to_json(const SymPow& s) { return Json{{"base", to_string(s.base)}, {"exp", to_string(s.exp)}}; }

SymPow sympow_from_json(const Json& j)
{
    return SymPow{parse_rational(get<std::string>(j, "base", "power")),
                  parse_rational(get<std::string>(j, "exp", "power"))};
}

// ---------------------------------------------------------------- families

Json family_to_json(const OperationFamily& f)
{
    Json j;
    j["n"] = f.n;
    j["NL"] = f.NL;
    j["c"] = f.c;
    Json gens = Json::array();
    for (const auto& g : f.gens)
        gens.push_back(Json{{"sym", g.sym}, {"coidx", g.coidx}, {"label", label_json(g)}});
    j["generators"] = gens;
    const bool same = f.role == Role::M || (f.targets.size() == f.gens.size() &&
                                            std::equal(f.gens.begin(), f.gens.end(), f.targets.begin(),
                                                       [](const Generator& a, const Generator& b) {
                                                           return a.sym == b.sym && a.coidx == b.coidx &&
                                                                  a.j1 == b.j1 && a.j2 == b.j2;
                                                       }));
    if (!same) {
        Json t = Json::array();
        for (const auto& g : f.targets)
            t.push_back(Json{{"sym", g.sym}, {"coidx", g.coidx}, {"label", label_json(g)}});
        j["targets"] = t;
    }
    Json byar = Json::object();
    for (int l = 1; l <= f.max_arity(); ++l) {
        Json list = Json::array();
        for (const auto& [in, outs] : f.ops) {
            if (static_cast<int>(in.size()) != l || outs.empty())
                continue;
            Json e;
            Json ins = Json::array();
            for (int x : in)
                ins.push_back(f.gens[static_cast<size_t>(x)].sym);
            e["in"] = ins;
            Json o = Json::array();
            for (const auto& t : outs)
                o.push_back(Json{{"sym", f.targets[static_cast<size_t>(t.out)].sym}, {"d", t.d}, {"coef", t.coef}});
            e["out"] = o;
            list.push_back(e);
        }
        if (!list.empty())
            byar[std::to_string(l)] = list;
    }
    j["ops"] = Json{{role_key(f.role), byar}};
    return j;
}

OperationFamily family_from_json(const Json& j, const OperationFamily* source, const OperationFamily* target)
{
    if (!j.is_object())
        throw ParseError("family file must be a JSON object");
    OperationFamily f;
    f.n = get_or<int>(j, "n", source ? source->n : 1);
    f.NL = get_or<int>(j, "NL", source ? source->NL : 2);
    f.c = get_or<int>(j, "c", source ? source->c : 0);
    if (j.contains("generators")) {
        for (const auto& g : j.at("generators"))
            f.gens.push_back(generator_from(g));
    } else if (source) {
        f.gens = source->gens;
    } else {
        throw ParseError("family lacks \"generators\"");
    }
    if (j.contains("targets")) {
        for (const auto& g : j.at("targets"))
            f.targets.push_back(generator_from(g));
    } else {
        f.targets = target ? target->gens : f.gens;
    }
    const Json ops = get<Json>(j, "ops", "family");
    if (!ops.is_object() || ops.size() != 1)
        throw ParseError("\"ops\" must hold exactly one of \"m\", \"h\", \"k\"");
    const std::string role = ops.begin().key();
    if (role == "m")
        f.role = Role::M;
    else if (role == "h")
        f.role = Role::H;
    else if (role == "k")
        f.role = Role::K;
    else
        throw ParseError("unknown operation role '" + role + "'");
    if (f.role == Role::M)
        f.targets = f.gens;
    for (const auto& [ar, list] : ops.begin().value().items()) {
        int l = 0;
        try {
            l = std::stoi(ar);
        } catch (const std::exception&) {
            throw ParseError("arity key '" + ar + "' is not an integer");
        }
        for (const auto& e : list) {
            std::vector<int> in;
            for (const auto& s : get<Json>(e, "in", "operation"))
                in.push_back(lookup(f.gens, s.get<std::string>(), "input"));
            if (static_cast<int>(in.size()) != l)
                throw ParseError("operation listed under arity " + ar + " has " + std::to_string(in.size()) +
                                 " inputs");
            auto& outs = f.ops[in];
            for (const auto& o : get<Json>(e, "out", "operation")) {
                OutTerm t;
                t.out = lookup(f.targets, get<std::string>(o, "sym", "output"), "output");
                t.d = get_or<int>(o, "d", 0);
                t.coef = get<long long>(o, "coef", "output");
                if (t.coef != 0)
                    outs.push_back(t);
            }
            std::sort(outs.begin(), outs.end());
        }
    }
    validate(f);
    return f;
}

Json template_to_json(const FamilyTemplate& t)
{
    Json j = family_to_json(t.base);
    Json open = Json::array();
    for (const auto& s : t.open) {
        Json ins = Json::array();
        for (int x : s.in)
            ins.push_back(t.base.gens[static_cast<size_t>(x)].sym);
        open.push_back(Json{{"name", s.name}, {"in", ins}, {"out", t.base.gens[static_cast<size_t>(s.out)].sym},
                            {"d", s.d}});
    }
    j["open"] = open;
    return j;
}

FamilyTemplate template_from_json(const Json& j)
{
    FamilyTemplate t;
    t.base = family_from_json(j);
    for (const auto& s : get<Json>(j, "open", "template")) {
        FamilyTemplate::Slot slot;
        slot.name = get<std::string>(s, "name", "slot");
        for (const auto& x : get<Json>(s, "in", "slot"))
            slot.in.push_back(lookup(t.base.gens, x.get<std::string>(), "input"));
        slot.out = lookup(t.base.gens, get<std::string>(s, "out", "slot"), "output");
        slot.d = get_or<int>(s, "d", 0);
        t.open.push_back(slot);
    }
    return t;
}

// ---------------------------------------------------------------- clusters

Json cluster_to_json(const ClusterInput& c)
{
    Json j;
    j["tree"] = tree_to_json(c.ct.tree);
    Json edges = Json::array();
    for (const auto& [e, s] : c.ct.edges)
        edges.push_back(edge_state_name(s));
    j["edges"] = edges;
    j["complex_nodes"] = c.ct.complex_nodes;
    j["interior_incidence"] = c.ct.interior_incidence;
    j["endpoints"] = Json{{"root", c.ec.root}, {"leaves", c.ec.leaves}, {"breakings", c.ec.breakings}};
    j["maslov"] = c.mu.per_disk;
    j["n"] = c.n;
    return j;
}

ClusterInput cluster_from_json(const Json& j)
{
    ClusterInput c;
    c.ct.tree = tree_from_json(get<Json>(j, "tree", "cluster"));
    const int ne = edge_count(c.ct.tree);
    if (j.contains("edges")) {
        const Json& e = j.at("edges");
        if (!e.is_array())
            throw ParseError("\"edges\" must list one state per interior edge");
        for (size_t i = 0; i < e.size(); ++i)
            c.ct.edges[static_cast<int>(i + 1)] = parse_edge_state(e[i].get<std::string>());
    } else {
        for (int e = 1; e <= ne; ++e)
            c.ct.edges[e] = EdgeState::Line;
    }
    c.ct.complex_nodes = get_or<int>(j, "complex_nodes", 0);
    c.ct.interior_incidence = get_or<int>(j, "interior_incidence", 0);
    if (j.contains("endpoints")) {
        const Json& e = j.at("endpoints");
        c.ec.root = get_or<int>(e, "root", 0);
        c.ec.leaves = get_or<std::vector<int>>(e, "leaves", {});
        c.ec.breakings = get_or<std::vector<int>>(e, "breakings", {});
    } else {
        c.ec.leaves.assign(static_cast<size_t>(leaf_count(c.ct.tree)), 0);
        c.ec.breakings.assign(static_cast<size_t>(count_state(c.ct, EdgeState::Broken)), 0);
    }
    c.mu.per_disk = get_or<std::vector<int>>(j, "maslov",
                                             std::vector<int>(static_cast<size_t>(vertex_count(c.ct.tree)), 0));
    c.n = get_or<int>(j, "n", 2);
    check_cluster(c.ct);
    return c;
}

// ---------------------------------------------------------------- reports

Json word_to_json(const std::vector<Generator>& alphabet, const Word& w)
{
    Json syms = Json::array();
    for (int x : w.g)
        syms.push_back(alphabet[static_cast<size_t>(x)].sym);
    return Json{{"word", syms}, {"d", w.d}};
}

Json comb_to_json(const std::vector<Generator>& alphabet, const LinComb& x)
{
    Json a = Json::array();
    for (const auto& [w, c] : x) {
        Json t = word_to_json(alphabet, w);
        t["coef"] = c;
        a.push_back(t);
    }
    return a;
}

Json report_to_json(const CheckReport& r, const std::vector<Generator>& alphabet,
                    const std::vector<Generator>& out_alphabet)
{
    Json j;
    j["check"] = r.check;
    j["verdict"] = r.verdict;
    j["window"] = Json{{"qmax", r.window.qmax}, {"emax", r.window.emax}, {"lmax", r.window.lmax}};
    j["words_checked"] = r.words_checked;
    if (r.witness) {
        j["witness"] = Json{{"input", word_to_json(alphabet, r.witness->input)},
                            {"residue", comb_to_json(out_alphabet, r.witness->residue)},
                            {"text", comb_to_string(out_alphabet, r.witness->residue)}};
    } else {
        j["witness"] = nullptr;
    }
    j["notes"] = r.notes;
    return j;
}

Json surgery_to_json(const ClusterSurgeryRecord& r)
{
    Json j;
    j["surgery"] = surgery_name(r.kind);
    j["before"] = cluster_to_json(ClusterInput{r.before, {}, r.mu_before, 0});
    j["after"] = cluster_to_json(ClusterInput{r.after, {}, r.mu_after, 0});
    for (auto* side : {&j["before"], &j["after"]}) {
        side->erase("endpoints");
        side->erase("n");
    }
    j["before_text"] = to_text(r.before.tree);
    j["after_text"] = to_text(r.after.tree);
    j["removed_marks"] = r.removed_marks;
    j["N"] = r.N;
    j["complex_nodes"] = r.complex_nodes;
    return j;
}

Json audit_to_json(const AuditReport& a)
{
    Json j;
    j["l"] = a.l;
    j["k_before"] = a.k_before;
    j["k_after"] = a.k_after;
    j["n"] = a.n;
    j["N"] = a.N;
    j["assumed_index"] = a.assumed_index;
    j["maslov_drop"] = a.maslov_drop;
    j["index_after"] = a.index_after;
    j["cluster_index_after"] = a.cluster_index_after;
    j["quotient_bound"] = a.quotient_bound;
    j["closed_form"] = a.closed_form;
    j["formula"] = a.formula;
    j["simple_range"] = a.simple_range;
    j["applies"] = a.applies;
    return j;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j)
{
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace clx

#include "clx/barcx.hpp"
#include "clx/errors.hpp"
#include "clx/indexcalc.hpp"
#include "clx/io.hpp"
#include "clx/labelings.hpp"
#include "clx/signs.hpp"
#include "clx/strata.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <set>

using namespace clx;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2 };

struct Ctx {
    bool json = false;
    bool timing = false;
    unsigned long long seed = 1;
    int jobs = 1;
    std::vector<std::string> argv;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
};

// one JSON document per run; text output goes through `text`
int emit(const Ctx& c, const std::string& verdict, Json result, const std::string& text)
{
    if (c.json) {
        Json r;
        r["schema"] = kReportSchema;
        r["command"] = c.argv;
        r["verdict"] = verdict;
        r["result"] = std::move(result);
        if (c.timing)
            r["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - c.t0).count();
        std::cout << r.dump(2) << "\n";
    } else {
        std::cout << text;
    }
    return verdict == "fail" ? kFail : kOk;
}

std::string join(const std::vector<long long>& v)
{
    std::string s;
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

std::string join(const std::vector<int>& v, const char* sep = " ")
{
    std::string s;
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

Window window_from(int qmax, int emax, int lmax, int jobs)
{
    Window w;
    w.qmax = qmax;
    w.emax = emax;
    w.lmax = lmax;
    w.jobs = jobs;
    return w;
}

// family files may be templates with open slots filled by --set name=value
OperationFamily load_family(const std::string& path, const std::vector<std::string>& sets,
                            const OperationFamily* source = nullptr, const OperationFamily* target = nullptr)
{
    Json j = read_json_file(path);
    if (j.contains("open")) {
        FamilyTemplate t = template_from_json(j);
        std::map<std::string, long long> values;
        for (const auto& s : sets) {
            auto eq = s.rfind('=');
            if (eq == std::string::npos)
                throw ParseError("--set expects name=value, got '" + s + "'");
            try {
                values[s.substr(0, eq)] = std::stoll(s.substr(eq + 1));
            } catch (const std::exception&) {
                throw ParseError("--set value in '" + s + "' is not an integer");
            }
        }
        return instantiate(t, values);
    }
    return family_from_json(j, source, target);
}

std::string report_text(const CheckReport& r, const std::vector<Generator>& in, const std::vector<Generator>& out)
{
    std::string s = r.check + ": " + r.verdict + " (" + std::to_string(r.words_checked) + " words, q <= " +
                    std::to_string(r.window.qmax) + ", energy <= " + std::to_string(r.window.emax) + ")\n";
    if (r.witness)
        s += "  witness " + word_to_string(in, r.witness->input) + " -> " + comb_to_string(out, r.witness->residue) +
             "\n";
    for (const auto& n : r.notes)
        s += "  note: " + n + "\n";
    return s;
}

std::string overall(const std::vector<CheckReport>& rs)
{
    bool skipped = false;
    for (const auto& r : rs) {
        if (r.verdict == "fail")
            return "fail";
        if (r.verdict != "pass")
            skipped = true;
    }
    return skipped ? "skipped" : "pass";
}

std::vector<Rational> parse_rationals(const std::vector<std::string>& v)
{
    std::vector<Rational> out;
    for (const auto& s : v)
        out.push_back(parse_rational(s));
    return out;
}

// "e=p/q" pairs
EdgeLabeling parse_labels(const std::vector<std::string>& v)
{
    EdgeLabeling x;
    for (const auto& s : v) {
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ParseError("label expects edge=value, got '" + s + "'");
        x[std::stoi(s.substr(0, eq))] = parse_rational(s.substr(eq + 1));
    }
    return x;
}

SurgeryPlan surgery_from(const std::string& kind, int disk, int d, int upper, int lower, int position,
                         const std::vector<std::string>& parts, int incidence)
{
    SurgeryPlan s;
    s.kind = parse_surgery(kind);
    s.disk = disk;
    s.d = d;
    s.upper = upper;
    s.lower = lower;
    s.position = position;
    s.incidence = incidence;
    for (const auto& p : parts) {
        auto x = p.find('x');
        if (x == std::string::npos)
            throw ParseError("--part expects multiplicity x maslov, e.g. 2x2");
        s.parts.push_back({std::stoi(p.substr(0, x)), std::stoi(p.substr(x + 1))});
    }
    return s;
}

} // namespace

int main(int argc, char** argv)
{
    Ctx ctx;
    for (int i = 1; i < argc; ++i)
        ctx.argv.push_back(argv[i]);

    CLI::App app{"clx: exact combinatorics of cluster moduli, signs, index bookkeeping and bar complexes"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", ctx.json, "emit a machine-readable run report");
    app.add_flag("--timing", ctx.timing, "include wall time in the JSON report");
    app.add_option("--seed", ctx.seed, "seed for randomized property checks");
    app.add_option("--jobs", ctx.jobs, "worker threads for relation checks")->check(CLI::PositiveNumber);

    std::function<int()> run;

    // ------------------------------------------------------------ strata
    std::string fam = "K";
    int l = 3, k = 0, codim = -1;
    auto add_flk = [&](CLI::App* s) {
        s->add_option("--family", fam, "K, Q or Bullet")->check(CLI::IsMember({"K", "Q", "Bullet"}));
        s->add_option("--l", l, "boundary markings")->required();
        s->add_option("--k", k, "interior markings");
    };

    auto* strata = app.add_subcommand("strata", "list the strata of a moduli family");
    add_flk(strata);
    strata->add_option("--codim", codim, "only this codimension");
    strata->callback([&] {
        run = [&] {
            const FacePoset p = face_poset(parse_family(fam), l, k);
            Json list = Json::array();
            std::string text;
            for (const auto& s : p.strata) {
                if (codim >= 0 && s.codim != codim)
                    continue;
                list.push_back(Json{{"tree", to_text(s.tree)}, {"dim", s.dim}, {"codim", s.codim}});
                text += to_text(s.tree) + "  dim " + std::to_string(s.dim) + "\n";
            }
            return emit(ctx, "pass", list, text);
        };
    });

    auto* fvec = app.add_subcommand("fvector", "f-vector of a face poset, by dimension");
    add_flk(fvec);
    fvec->callback([&] {
        run = [&] {
            const auto f = f_vector(parse_family(fam), l, k);
            return emit(ctx, "pass", f, join(f) + "\n");
        };
    });

    std::string format = "json", outpath;
    auto* exp = app.add_subcommand("export", "write the face poset as JSON or DOT");
    add_flk(exp);
    exp->add_option("--format", format)->check(CLI::IsMember({"json", "dot"}));
    exp->add_option("-o,--output", outpath, "file instead of stdout");
    exp->callback([&] {
        run = [&] {
            const FacePoset p = face_poset(parse_family(fam), l, k);
            const std::string body = format == "dot" ? poset_to_dot(p) : poset_to_json(p).dump(2) + "\n";
            if (!outpath.empty()) {
                std::ofstream(outpath) << body;
                return emit(ctx, "pass", Json{{"written", outpath}}, "wrote " + outpath + "\n");
            }
            std::cout << body;
            return int(kOk);
        };
    });

    auto* collar = app.add_subcommand("collar", "collar cells of K(l,k) and their gluings");
    collar->add_option("--l", l)->required();
    collar->add_option("--k", k);
    collar->callback([&] {
        run = [&] {
            const Collar c = collar_cells(l, k);
            const bool conn = collar_connected(c);
            Json cells = Json::array();
            for (const auto& cell : c.cells)
                cells.push_back(Json{{"tree", to_text(cell.tree)}, {"labeled_edges", cell.labeled_edges},
                                     {"dim", cell.dim}});
            return emit(ctx, conn ? "pass" : "fail",
                        Json{{"cells", cells}, {"gluings", c.gluings.size()}, {"connected", conn}},
                        std::to_string(c.cells.size()) + " cells, " + std::to_string(c.gluings.size()) +
                            " gluings, " + (conn ? "connected" : "disconnected") + "\n");
        };
    });

    auto* tiles = app.add_subcommand("tiles", "symmetric tile complex and its identification strata");
    tiles->add_option("--l", l)->required();
    tiles->add_option("--k", k);
    tiles->callback([&] {
        run = [&] {
            const TileComplex tc = tile_complex(l, k);
            std::string why;
            const bool ok = orientation_consistency(tc, &why);
            int by_type[4] = {0, 0, 0, 0};
            for (const auto& p : tc.pairs)
                ++by_type[p.type];
            Json r{{"tiles", tc.tiles.size()},
                   {"pairs", Json{{"I", by_type[1]}, {"II", by_type[2]}, {"III", by_type[3]}}},
                   {"orientation_consistent", ok}};
            if (!ok)
                r["witness"] = why;
            std::string text = std::to_string(tc.tiles.size()) + " tiles; identification pairs I " +
                               std::to_string(by_type[1]) + ", II " + std::to_string(by_type[2]) + ", III " +
                               std::to_string(by_type[3]) + "; orientation " +
                               (ok ? "consistent" : "inconsistent: " + why) + "\n";
            return emit(ctx, ok ? "pass" : "fail", r, text);
        };
    });

    // ------------------------------------------------------------ signs
    auto* sign = app.add_subcommand("sign", "evaluate a sign formula");
    sign->require_subcommand(1);
    int l1 = 1, j = 1, l2 = 1, pmin = 1;
    std::vector<int> ls, perm, degrees;
    auto sign_out = [&](int s) { return emit(ctx, "pass", s, std::to_string(s) + "\n"); };
    for (const char* name : {"concat", "lower"}) {
        auto* s = sign->add_subcommand(name, std::string(name) == "concat" ? "(-1)^{(l1-j) l2 + (j-1)}"
                                                                           : "(-1)^{(l1-j) l2 + j}");
        s->add_option("--l1", l1)->required();
        s->add_option("--j", j)->required();
        s->add_option("--l2", l2)->required();
        const bool concat = std::string(name) == "concat";
        s->callback([&, concat] {
            run = [&, concat] { return sign_out(concat ? sign_concat(l1, j, l2) : sign_lower_quilt(l1, j, l2)); };
        });
    }
    auto* up = sign->add_subcommand("upper", "(-1)^{sum (q-i)(l_i - 1)}");
    up->add_option("--ls", ls, "block sizes")->required()->delimiter(',');
    up->callback([&] { run = [&] { return sign_out(sign_upper_quilt(ls)); }; });
    auto* bul = sign->add_subcommand("bullet", "symmetric concatenation sign");
    bul->add_option("--l1", l1)->required();
    bul->add_option("--pmin", pmin)->required();
    bul->add_option("--l2", l2)->required();
    bul->add_option("--sigma", perm, "shuffle, images of 1..l1+l2-1")->required()->delimiter(',');
    bul->callback([&] { run = [&] { return sign_out(sign_bullet(l1, pmin, l2, perm)); }; });
    auto* ps = sign->add_subcommand("perm", "sign of a permutation");
    ps->add_option("--sigma", perm)->required()->delimiter(',');
    ps->callback([&] { run = [&] { return sign_out(permutation_sign(perm)); }; });
    auto* gj = sign->add_subcommand("gj", "Getzler-Jones sign of m_l1(.., m_l2(x_j..), ..)");
    gj->add_option("--l1", l1)->required();
    gj->add_option("--j", j)->required();
    gj->add_option("--l2", l2)->required();
    gj->add_option("--degrees", degrees, "mu of the inputs")->required()->delimiter(',');
    gj->callback([&] { run = [&] { return sign_out(parity_sign(epsilon_gj(l1, j, l2, degrees))); }; });
    auto* su = sign->add_subcommand("suspension", "sign relating b_l and m_l constants");
    su->add_option("--degrees", degrees)->required()->delimiter(',');
    su->callback([&] { run = [&] { return sign_out(suspension_sign(degrees)); }; });

    // ------------------------------------------------------------ labelings
    std::string tree_text;
    std::vector<std::string> xs, zs, label_args;
    std::string seam, eps = "1/16";
    auto* chart = app.add_subcommand("chart", "simple-ratio labels of a configuration on a maximal tree");
    chart->add_option("--tree", tree_text, "tree in text form")->required();
    chart->add_option("--x", xs, "boundary markings")->delimiter(',');
    chart->add_option("--z", zs, "interior marks as re:im")->delimiter(',');
    chart->add_option("--seam", seam, "seam height (colored trees)");
    chart->callback([&] {
        run = [&] {
            const Tree t = parse_text(tree_text);
            DiskCoords d;
            d.x = parse_rationals(xs);
            for (const auto& z : zs) {
                auto c = z.find(':');
                if (c == std::string::npos)
                    throw ParseError("--z expects re:im");
                d.z.push_back({parse_rational(z.substr(0, c)), parse_rational(z.substr(c + 1))});
            }
            if (!seam.empty())
                d.seam = parse_rational(seam);
            const EdgeLabeling x = simple_ratio_chart(d, t);
            std::string text;
            for (const auto& [e, v] : x)
                text += "X(" + std::to_string(e) + ") = " + to_string(v) + "\n";
            return emit(ctx, "pass", labeling_to_json(x), text);
        };
    });

    bool quilted = false;
    int samples = 0;
    auto* chi = app.add_subcommand("chi", "smoothing map on an edge labeling");
    chi->add_option("--tree", tree_text)->required();
    chi->add_option("--labels", label_args, "edge=value pairs")->delimiter(',');
    chi->add_option("--eps", eps);
    chi->add_flag("--quilted", quilted, "balanced version on a colored tree");
    chi->add_option("--samples", samples, "also test injectivity on this many seeded labelings");
    chi->callback([&] {
        run = [&] {
            const Tree t = parse_text(tree_text);
            const Rational e = parse_rational(eps);
            const EdgeLabeling x = parse_labels(label_args);
            Json r;
            std::string text;
            if (quilted) {
                const SymLabeling s = chi_quilted(t, x, e);
                r["D"] = s.D;
                Json v = Json::object();
                for (const auto& [ed, f] : s.value) {
                    v[std::to_string(ed)] = f.to_string();
                    text += "chi(" + std::to_string(ed) + ") = " + f.to_string() + "\n";
                }
                r["u_labels"] = v;
                text = "u = eps^(1/" + std::to_string(s.D) + ")\n" + text;
                if (auto ev = s.evaluate())
                    r["values"] = labeling_to_json(*ev);
                r["balanced"] = is_balanced(t, s);
            } else {
                const EdgeLabeling y = chi_unquilted(x, e);
                r["values"] = labeling_to_json(y);
                for (const auto& [ed, v] : y)
                    text += "chi(" + std::to_string(ed) + ") = " + to_string(v) + "\n";
            }
            std::string verdict = "pass";
            if (samples > 0) {
                std::mt19937_64 rng(ctx.seed);
                std::set<std::map<int, std::string>> images;
                std::set<std::map<int, std::string>> inputs;
                const int ne = edge_count(t);
                for (int i = 0; i < samples; ++i) {
                    EdgeLabeling s;
                    for (int ed = 1; ed <= ne; ++ed)
                        s[ed] = Rational(static_cast<long>(rng() % 17), 16);
                    std::map<int, std::string> key_in, key_out;
                    for (auto& [ed, v] : s)
                        key_in[ed] = to_string(v);
                    if (!inputs.insert(key_in).second)
                        continue;
                    if (quilted) {
                        for (auto& [ed, f] : chi_quilted(t, s, e).value)
                            key_out[ed] = f.to_string();
                    } else {
                        for (auto& [ed, v] : chi_unquilted(s, e))
                            key_out[ed] = to_string(v);
                    }
                    images.insert(key_out);
                }
                const bool inj = images.size() == inputs.size();
                r["injective_on_samples"] = inj;
                r["distinct_samples"] = inputs.size();
                text += std::string("injective on ") + std::to_string(inputs.size()) + " samples: " +
                        (inj ? "yes" : "no") + "\n";
                if (!inj)
                    verdict = "fail";
            }
            return emit(ctx, verdict, r, text);
        };
    });

    std::string lab_family = "otimes";
    int c = 1;
    auto* labs = app.add_subcommand("labelings", "end labelings of length l");
    labs->add_option("--family", lab_family)->check(CLI::IsMember({"otimes", "bullet"}));
    labs->add_option("--l", l)->required();
    labs->add_option("--c", c)->required();
    labs->callback([&] {
        run = [&] {
            Json list = Json::array();
            std::string text;
            if (lab_family == "otimes") {
                for (const auto& x : enumerate_otimes_labelings(l, c)) {
                    list.push_back(x.a);
                    text += (x.trivial() ? std::string("trivial") : join(x.a)) + "\n";
                }
            } else {
                for (const auto& x : enumerate_bullet_labelings(l, c)) {
                    list.push_back(x);
                    text += join(x) + "\n";
                }
            }
            return emit(ctx, "pass", Json{{"count", list.size()}, {"labelings", list}},
                        text + std::to_string(list.size()) + " labelings\n");
        };
    });

    // ------------------------------------------------------------ algebra
    int qmax = 4, emax = 4, lmax = 8;
    auto add_window = [&](CLI::App* s) {
        s->add_option("--qmax", qmax, "largest word cardinality checked");
        s->add_option("--emax", emax, "largest energy compared");
        s->add_option("--lmax", lmax, "largest operation arity accepted");
    };
    std::vector<std::string> sets;
    std::string file0, file1, fileh, fileh1, filek, unit, sides = "zero-left";
    bool with_susp = false;

    auto* ainf = app.add_subcommand("check-ainf", "A-infinity relations and delta^2 = 0 on a window");
    ainf->add_option("file", file0, "structure-constant file")->required()->check(CLI::ExistingFile);
    add_window(ainf);
    ainf->add_option("--set", sets, "fill a template slot: name=value");
    ainf->add_option("--unit", unit, "also check this generator as a strict unit");
    ainf->add_flag("--suspension", with_susp, "also compare signed and suspended residue supports");
    ainf->callback([&] {
        run = [&] {
            const OperationFamily m = load_family(file0, sets);
            const Window w = window_from(qmax, emax, lmax, ctx.jobs);
            std::vector<CheckReport> rs{check_a_infinity(m, w)};
            if (with_susp)
                rs.push_back(check_suspension(m, w));
            if (!unit.empty())
                rs.push_back(check_unit(m, unit, w));
            Json list = Json::array();
            std::string text;
            for (const auto& r : rs) {
                list.push_back(report_to_json(r, m.gens, m.gens));
                text += report_text(r, m.gens, m.gens);
            }
            return emit(ctx, overall(rs), list, text);
        };
    });

    auto* morph = app.add_subcommand("check-morphism", "chain-map relation H o delta1 = delta0 o H");
    morph->add_option("f0", file0, "target family")->required()->check(CLI::ExistingFile);
    morph->add_option("f1", file1, "source family")->required()->check(CLI::ExistingFile);
    morph->add_option("morphism", fileh, "morphism family")->required()->check(CLI::ExistingFile);
    add_window(morph);
    morph->callback([&] {
        run = [&] {
            const OperationFamily m0 = load_family(file0, {}), m1 = load_family(file1, {});
            const OperationFamily h = load_family(fileh, {}, &m1, &m0);
            const CheckReport r = check_chain_map(h, m0, m1, window_from(qmax, emax, lmax, ctx.jobs));
            return emit(ctx, r.verdict, Json::array({report_to_json(r, m1.gens, m0.gens)}),
                        report_text(r, m1.gens, m0.gens));
        };
    });

    auto* homo = app.add_subcommand("check-homotopy", "H1 - H0 = K o delta1 + delta0 o K");
    homo->add_option("f0", file0)->required()->check(CLI::ExistingFile);
    homo->add_option("f1", file1)->required()->check(CLI::ExistingFile);
    homo->add_option("h0", fileh)->required()->check(CLI::ExistingFile);
    homo->add_option("h1", fileh1)->required()->check(CLI::ExistingFile);
    homo->add_option("homotopy", filek, "k family")->required()->check(CLI::ExistingFile);
    homo->add_option("--sides", sides, "which morphism sits left of k")
        ->check(CLI::IsMember({"zero-left", "one-left"}));
    add_window(homo);
    homo->callback([&] {
        run = [&] {
            const OperationFamily m0 = load_family(file0, {}), m1 = load_family(file1, {});
            const OperationFamily h0 = load_family(fileh, {}, &m1, &m0);
            const OperationFamily h1 = load_family(fileh1, {}, &m1, &m0);
            const OperationFamily kk = load_family(filek, {}, &m1, &m0);
            const CheckReport r = check_homotopy(h0, h1, kk, m0, m1, window_from(qmax, emax, lmax, ctx.jobs),
                                                 sides == "one-left" ? KSides::OneLeft : KSides::ZeroLeft);
            return emit(ctx, r.verdict, Json::array({report_to_json(r, m1.gens, m0.gens)}),
                        report_text(r, m1.gens, m0.gens));
        };
    });

    // ------------------------------------------------------------ index
    std::string cluster_file, surgery = "III";
    int disk = 0, d = 1, upper = 0, lower = 0, position = -1, incidence = 0, assumed = 0, n_override = -1;
    std::vector<std::string> parts;

    auto* idx = app.add_subcommand("index", "Fredholm index and cokernel dimension of a cluster type");
    idx->add_option("cluster", cluster_file, "cluster-type JSON")->required()->check(CLI::ExistingFile);
    idx->add_option("--n", n_override, "target dimension (overrides the file)");
    idx->callback([&] {
        run = [&] {
            ClusterInput ci = cluster_from_json(read_json_file(cluster_file));
            if (n_override >= 0)
                ci.n = n_override;
            const int ind = index_cr(ci.ct, ci.ec, ci.mu, ci.n);
            const int ll = leaf_count(ci.ct.tree), kk = mark_count(ci.ct.tree);
            const int cok = coker_dim(ci.ct, ll, kk);
            const int cod = cluster_codim(ci.ct);
            Json r{{"index", ind}, {"coker_dim", cok}, {"codim", cod}, {"l", ll}, {"k", kk}, {"n", ci.n}};
            return emit(ctx, "pass", r,
                        "index " + std::to_string(ind) + "\ncoker " + std::to_string(cok) + "\ncodim " +
                            std::to_string(cod) + "\n");
        };
    });

    auto add_surgery = [&](CLI::App* s) {
        s->add_option("cluster", cluster_file)->required()->check(CLI::ExistingFile);
        s->add_option("--surgery", surgery, "I, IIa, IIb, III, gen-I, gen-II, gen-III");
        s->add_option("--disk", disk, "preorder id of the disk (I, gen-I, gen-II)");
        s->add_option("--d", d, "covering degree (I)");
        s->add_option("--upper", upper, "upper disk (IIa: removed, IIb: kept)");
        s->add_option("--lower", lower, "lower disk (IIa: kept, IIb: removed)");
        s->add_option("--position", position, "slot receiving the reattached ends");
        s->add_option("--part", parts, "gen-I piece as multiplicity x maslov, e.g. 2x2");
        s->add_option("--incidence", incidence, "gen-II interior incidence points");
    };

    auto* red = app.add_subcommand("reduce", "apply a reduction surgery to a cluster type");
    add_surgery(red);
    red->callback([&] {
        run = [&] {
            const ClusterInput ci = cluster_from_json(read_json_file(cluster_file));
            const auto rec =
                reduce(ci.ct, ci.mu, surgery_from(surgery, disk, d, upper, lower, position, parts, incidence));
            return emit(ctx, "pass", surgery_to_json(rec),
                        to_text(rec.before.tree) + " -> " + to_text(rec.after.tree) + "  (removed marks " +
                            std::to_string(rec.removed_marks) + ", Maslov " + std::to_string(rec.mu_before.total()) +
                            " -> " + std::to_string(rec.mu_after.total()) + ", N " + std::to_string(rec.N) + ")\n");
        };
    });

    auto* aud = app.add_subcommand("audit", "index-drop inequalities of a reduction");
    add_surgery(aud);
    aud->add_option("--assumed", assumed, "index of the trajectory before reduction")->required();
    aud->add_option("--n", n_override, "target dimension (overrides the file)");
    aud->callback([&] {
        run = [&] {
            ClusterInput ci = cluster_from_json(read_json_file(cluster_file));
            if (n_override >= 0)
                ci.n = n_override;
            const auto rec =
                reduce(ci.ct, ci.mu, surgery_from(surgery, disk, d, upper, lower, position, parts, incidence));
            const AuditReport a = reduction_index_audit(rec, assumed, ci.n);
            Json r = audit_to_json(a);
            r["surgery"] = surgery_to_json(rec);
            std::string text = "Maslov drop " + std::to_string(a.maslov_drop) + ", index after " +
                               std::to_string(a.index_after) + ", cluster index after >= " +
                               std::to_string(a.cluster_index_after) + "\nbound " + a.formula + " = " +
                               std::to_string(a.closed_form) + " (evaluated " + std::to_string(a.quotient_bound) +
                               ")\n" + (a.applies ? "contradiction argument applies\n" : "bound not triggered\n");
            return emit(ctx, "pass", r, text);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    try {
        return run();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}

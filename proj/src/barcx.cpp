#include "clx/barcx.hpp"
#include "clx/errors.hpp"
#include "clx/signs.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace clx {

// ---------------------------------------------------------------- Laurent

Laurent Laurent::mono(long long coef, int d)
{
    Laurent r;
    if (coef != 0)
        r.c[d] = coef;
    return r;
}

Laurent Laurent::operator+(const Laurent& o) const
{
    Laurent r = *this;
    for (auto& [d, v] : o.c) {
        long long& s = r.c[d];
        s += v;
        if (s == 0)
            r.c.erase(d);
    }
    return r;
}

Laurent Laurent::operator*(const Laurent& o) const
{
    Laurent r;
    for (auto& [a, x] : c)
        for (auto& [b, y] : o.c)
            r = r + mono(x * y, a + b);
    return r;
}

std::optional<int> Laurent::degree(int NL) const
{
    if (c.size() != 1)
        return std::nullopt;
    return c.begin()->first * NL;
}

// ---------------------------------------------------------------- words

void add_term(LinComb& a, const Word& w, long long c)
{
    if (c == 0)
        return;
    auto it = a.find(w);
    if (it == a.end()) {
        a.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second == 0)
        a.erase(it);
}

void add_into(LinComb& a, const LinComb& b, long long scale)
{
    for (auto& [w, c] : b)
        add_term(a, w, c * scale);
}

std::string role_name(Role r)
{
    switch (r) {
    case Role::M: return "m";
    case Role::H: return "h";
    case Role::K: return "k";
    }
    return "?";
}

int OperationFamily::find(const std::string& sym) const
{
    for (size_t i = 0; i < gens.size(); ++i)
        if (gens[i].sym == sym)
            return static_cast<int>(i);
    return -1;
}

int OperationFamily::find_target(const std::string& sym) const
{
    for (size_t i = 0; i < targets.size(); ++i)
        if (targets[i].sym == sym)
            return static_cast<int>(i);
    return -1;
}

int OperationFamily::max_arity() const
{
    int a = 0;
    for (auto& [in, out] : ops)
        if (!out.empty())
            a = std::max(a, static_cast<int>(in.size()));
    return a;
}

int OperationFamily::op_degree(int arity) const
{
    switch (role) {
    case Role::M: return 2 - arity;
    case Role::H: return 1 - arity;
    case Role::K: return -arity;
    }
    return 0;
}

int word_mu(const std::vector<Generator>& alphabet, const Word& w, int NL)
{
    int mu = w.d * NL;
    for (int g : w.g)
        mu += alphabet[static_cast<size_t>(g)].coidx;
    return mu;
}

namespace {

int mu_of(const std::vector<Generator>& alphabet, const std::vector<int>& g, size_t from, size_t to)
{
    int s = 0;
    for (size_t i = from; i < to; ++i)
        s += alphabet[static_cast<size_t>(g[i])].coidx;
    return s;
}

std::vector<int> degrees_of(const std::vector<Generator>& alphabet, const std::vector<int>& g)
{
    std::vector<int> d;
    for (int x : g)
        d.push_back(alphabet[static_cast<size_t>(x)].coidx);
    return d;
}

const std::vector<OutTerm>* lookup(const OperationFamily& f, const std::vector<int>& g, size_t from,
                                   size_t len)
{
    std::vector<int> key(g.begin() + static_cast<long>(from), g.begin() + static_cast<long>(from + len));
    auto it = f.ops.find(key);
    return it == f.ops.end() ? nullptr : &it->second;
}

std::vector<int> splice(const std::vector<int>& g, size_t from, size_t len, int y)
{
    std::vector<int> out(g.begin(), g.begin() + static_cast<long>(from));
    out.push_back(y);
    out.insert(out.end(), g.begin() + static_cast<long>(from + len), g.end());
    return out;
}

std::string label_str(const Generator& g)
{
    return g.is_f() ? "f" : "(" + std::to_string(g.j1) + "," + std::to_string(g.j2) + ")";
}

} // namespace

std::pair<int, int> merged_label(const std::vector<Generator>& alphabet, const std::vector<int>& g)
{
    int a = -1, b = -1;
    for (int x : g) {
        const Generator& G = alphabet[static_cast<size_t>(x)];
        if (G.is_f())
            continue;
        if (a < 0) {
            a = G.j1;
            b = G.j2;
        } else if (G.j1 != b) {
            throw BlockError("label " + label_str(G) + " of " + G.sym + " does not continue the chain ending at " +
                             std::to_string(b));
        } else {
            b = G.j2;
        }
    }
    return {a, b};
}

void check_block(const std::vector<Generator>& alphabet, const Word& w)
{
    for (int x : w.g)
        if (x < 0 || x >= static_cast<int>(alphabet.size()))
            throw BlockError("generator index out of range");
    merged_label(alphabet, w.g);
}

void validate(const OperationFamily& f)
{
    if (f.NL <= 0 || f.NL % 2 != 0)
        throw ValidationError("NL must be positive and even, got " + std::to_string(f.NL));
    auto check_gens = [&](const std::vector<Generator>& gs) {
        std::set<std::string> seen;
        for (const auto& g : gs) {
            if (!seen.insert(g.sym).second)
                throw ValidationError("duplicate generator " + g.sym);
            if (g.coidx < 0 || g.coidx > f.n)
                throw ValidationError("coindex of " + g.sym + " outside 0..n");
            if (!g.is_f() && !(0 <= g.j1 && g.j1 < g.j2 && g.j2 <= f.c))
                throw ValidationError("label of " + g.sym + " must satisfy j1 < j2 <= c");
        }
    };
    check_gens(f.gens);
    check_gens(f.targets);
    for (auto& [in, outs] : f.ops) {
        if (in.empty())
            throw ValidationError("operations of arity 0 are not supported");
        const auto lab = merged_label(f.gens, in);
        const int mu_in = mu_of(f.gens, in, 0, in.size());
        for (const auto& t : outs) {
            const Generator& y = f.targets[static_cast<size_t>(t.out)];
            if (std::make_pair(y.j1, y.j2) != lab)
                throw BlockError("output " + y.sym + " of " + role_name(f.role) + std::to_string(in.size()) +
                                 " does not carry the merged input label");
            if (f.positive && t.d < 0)
                throw ValidationError("negative energy in a positive family");
            const int shift = y.coidx + t.d * f.NL - mu_in;
            if (shift != f.op_degree(static_cast<int>(in.size())))
                throw ValidationError("constant " + role_name(f.role) + std::to_string(in.size()) + "(" +
                                      word_to_string(f.gens, Word{in, 0}) + ") -> " + y.sym + " t^" +
                                      std::to_string(t.d) + " breaks the degree law");
        }
    }
}

std::vector<Word> window_words(const std::vector<Generator>& alphabet, int qmax)
{
    std::vector<Word> out;
    const int n = static_cast<int>(alphabet.size());
    std::function<void(std::vector<int>&, int)> rec = [&](std::vector<int>& cur, int len) {
        if (static_cast<int>(cur.size()) == len) {
            try {
                merged_label(alphabet, cur);
                out.push_back(Word{cur, 0});
            } catch (const BlockError&) {
            }
            return;
        }
        for (int g = 0; g < n; ++g) {
            cur.push_back(g);
            rec(cur, len);
            cur.pop_back();
        }
    };
    for (int q = 1; q <= qmax; ++q) {
        std::vector<int> cur;
        rec(cur, q);
    }
    return out;
}

// ---------------------------------------------------------------- delta

LinComb delta(const OperationFamily& m, const Word& w)
{
    check_block(m.gens, w);
    LinComb out;
    const size_t q = w.g.size();
    int prefix_mu = 0;
    for (size_t s = 0; s < q; ++s) {
        for (size_t l = 1; s + l <= q; ++l) {
            const auto* terms = lookup(m, w.g, s, l);
            if (!terms)
                continue;
            const long long qout = static_cast<long long>(q - l + 1);
            const long long j = static_cast<long long>(s + 1);
            const int sign = parity_sign((qout - j) * static_cast<long long>(l) + (j - 1)) *
                             parity_sign(static_cast<long long>(l) * prefix_mu);
            for (const auto& t : *terms)
                add_term(out, Word{splice(w.g, s, l, t.out), w.d + t.d}, sign * t.coef);
        }
        prefix_mu += m.gens[static_cast<size_t>(w.g[s])].coidx;
    }
    return out;
}

LinComb delta(const OperationFamily& m, const LinComb& x)
{
    LinComb out;
    for (auto& [w, c] : x)
        add_into(out, delta(m, w), c);
    return out;
}

namespace {

// m_{l1}(x_1, .., inner(x_j..), ..) summed over inner arity and position
template <class SignFn>
LinComb two_level(const OperationFamily& f, const Word& w, SignFn sign_of)
{
    LinComb out;
    const size_t q = w.g.size();
    const auto deg = degrees_of(f.gens, w.g);
    for (size_t l2 = 1; l2 <= q; ++l2) {
        const size_t l1 = q - l2 + 1;
        for (size_t j = 1; j <= l1; ++j) {
            const auto* inner = lookup(f, w.g, j - 1, l2);
            if (!inner)
                continue;
            const int sg = sign_of(static_cast<int>(l1), static_cast<int>(j), static_cast<int>(l2), deg);
            for (const auto& a : *inner) {
                const auto mid = splice(w.g, j - 1, l2, a.out);
                const auto* outer = lookup(f, mid, 0, mid.size());
                if (!outer)
                    continue;
                for (const auto& b : *outer)
                    add_term(out, Word{{b.out}, w.d + a.d + b.d}, sg * a.coef * b.coef);
            }
        }
    }
    return out;
}

LinComb truncate(const LinComb& x, int base_d, int emax)
{
    LinComb out;
    for (auto& [w, c] : x)
        if (w.d - base_d <= emax)
            out.emplace(w, c);
    return out;
}

template <class Fn>
void parallel_for(size_t n, int jobs, Fn fn)
{
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    if (jobs == 1) {
        for (size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&, t] {
            for (size_t i = static_cast<size_t>(t); i < n; i += static_cast<size_t>(jobs))
                fn(i);
        });
    for (auto& th : pool)
        th.join();
}

// residue per word; first nonzero (in enumeration order) becomes the witness
CheckReport run_words(const std::string& name, const std::vector<Word>& words, const Window& win,
                      const std::function<LinComb(const Word&)>& residue)
{
    CheckReport r;
    r.check = name;
    r.window = win;
    std::vector<LinComb> res(words.size());
    parallel_for(words.size(), win.jobs,
                 [&](size_t i) { res[i] = truncate(residue(words[i]), words[i].d, win.emax); });
    r.words_checked = static_cast<long long>(words.size());
    for (size_t i = 0; i < words.size(); ++i)
        if (!res[i].empty()) {
            r.verdict = "fail";
            r.witness = Witness{words[i], res[i]};
            break;
        }
    r.notes.push_back("finite window: cardinality <= " + std::to_string(win.qmax) + ", energy <= " +
                      std::to_string(win.emax) + "; terms beyond it are not examined");
    return r;
}

CheckReport skipped(const std::string& name, const Window& win, const std::string& why)
{
    CheckReport r;
    r.check = name;
    r.window = win;
    r.verdict = "skipped";
    r.notes.push_back(why);
    return r;
}

} // namespace

LinComb gj_relation(const OperationFamily& m, const Word& w)
{
    return two_level(m, w, [](int l1, int j, int l2, const std::vector<int>& deg) {
        return parity_sign(epsilon_gj(l1, j, l2, deg));
    });
}

LinComb b_relation(const OperationFamily& b, const Word& w)
{
    return two_level(b, w, [](int, int j, int, const std::vector<int>& deg) {
        return parity_sign(epsilon_bar(j, deg));
    });
}

namespace {
OperationFamily resign(const OperationFamily& f, bool flag)
{
    OperationFamily out = f;
    out.suspended = flag;
    for (auto& [in, outs] : out.ops) {
        const int s = suspension_sign(degrees_of(f.gens, in));
        for (auto& t : outs)
            t.coef *= s;
    }
    return out;
}
} // namespace

OperationFamily suspend(const OperationFamily& m)
{
    if (m.suspended)
        throw ValidationError("family is already suspended");
    return resign(m, true);
}

OperationFamily unsuspend(const OperationFamily& b)
{
    if (!b.suspended)
        throw ValidationError("family is not suspended");
    return resign(b, false);
}

CheckReport check_a_infinity(const OperationFamily& m, const Window& win)
{
    if (m.max_arity() > win.lmax)
        return skipped("a-infinity", win, "family has operations beyond arity " + std::to_string(win.lmax));
    const auto words = window_words(m.gens, win.qmax);
    CheckReport dd = run_words("a-infinity", words, win, [&](const Word& w) { return delta(m, delta(m, w)); });
    CheckReport gj = run_words("a-infinity", words, win, [&](const Word& w) { return gj_relation(m, w); });
    if (dd.pass() != gj.pass())
        dd.notes.push_back("delta^2 and the GJ relations disagree");
    if (dd.pass() && !gj.pass())
        return gj;
    return dd;
}

CheckReport check_suspension(const OperationFamily& m, const Window& win)
{
    if (m.max_arity() > win.lmax)
        return skipped("suspension", win, "family has operations beyond arity " + std::to_string(win.lmax));
    const OperationFamily b = suspend(m);
    const auto words = window_words(m.gens, win.qmax);
    return run_words("suspension", words, win, [&](const Word& w) {
        const LinComb rm = gj_relation(m, w), rb = b_relation(b, w);
        LinComb diff;
        for (auto& [x, c] : rm)
            if (!rb.count(x))
                add_term(diff, x, c);
        for (auto& [x, c] : rb)
            if (!rm.count(x))
                add_term(diff, x, c);
        return diff;
    });
}

CheckReport check_unit(const OperationFamily& m, const std::string& unit, const Window& win)
{
    const int u = m.find(unit);
    if (u < 0)
        throw ValidationError("unknown unit generator " + unit);
    CheckReport r;
    r.check = "unit";
    r.window = win;
    auto fail = [&](Word in, LinComb res, const std::string& why) {
        r.verdict = "fail";
        r.witness = Witness{std::move(in), std::move(res)};
        r.notes.push_back(why);
        return r;
    };
    for (int x = 0; x < static_cast<int>(m.gens.size()); ++x) {
        Word in{{u, x}, 0};
        LinComb res;
        if (const auto* t = lookup(m, in.g, 0, 2))
            for (const auto& o : *t)
                add_term(res, Word{{o.out}, o.d}, o.coef);
        add_term(res, Word{{x}, 0}, -1);
        if (!res.empty())
            return fail(in, res, "m2(" + unit + ", " + m.gens[static_cast<size_t>(x)].sym + ") is not " +
                                     m.gens[static_cast<size_t>(x)].sym);
    }
    for (auto& [in, outs] : m.ops) {
        if (in.front() != u || in.size() == 2 || outs.empty())
            continue;
        LinComb res;
        for (const auto& o : outs)
            add_term(res, Word{{o.out}, o.d}, o.coef);
        if (!res.empty())
            return fail(Word{in, 0}, res, "operation of arity " + std::to_string(in.size()) +
                                              " does not vanish with the unit in front");
    }
    const auto words = window_words(m.gens, std::max(0, win.qmax - 1));
    CheckReport h = run_words("unit", words, win, [&](const Word& w) {
        Word uw = w;
        uw.g.insert(uw.g.begin(), u);
        LinComb res = delta(m, uw);
        for (auto& [x, c] : delta(m, w)) {
            Word ux = x;
            ux.g.insert(ux.g.begin(), u);
            add_term(res, ux, c);
        }
        add_term(res, w, -1);
        return res;
    });
    if (!h.pass())
        h.notes.push_back("delta(M w) + M delta(w) differs from w");
    return h;
}

// ---------------------------------------------------------------- H and K

namespace {

struct Block {
    const OperationFamily* f;
    size_t arity;
};

// (f_1 (x) .. (x) f_r)(w) with Koszul signs
LinComb apply_blocks(const std::vector<Block>& blocks, const Word& w, long long scale)
{
    LinComb out;
    const auto& alpha = blocks.front().f->gens;
    std::vector<int> acc;
    std::function<void(size_t, size_t, int, int, long long)> rec = [&](size_t b, size_t pos, int prefix_mu,
                                                                        int d, long long coef) {
        if (b == blocks.size()) {
            add_term(out, Word{acc, w.d + d}, coef);
            return;
        }
        const Block& B = blocks[b];
        const auto* terms = lookup(*B.f, w.g, pos, B.arity);
        if (!terms)
            return;
        const int sg = parity_sign(static_cast<long long>(B.f->op_degree(static_cast<int>(B.arity))) * prefix_mu);
        const int next_mu = prefix_mu + mu_of(alpha, w.g, pos, pos + B.arity);
        for (const auto& t : *terms) {
            acc.push_back(t.out);
            rec(b + 1, pos + B.arity, next_mu, d + t.d, coef * sg * t.coef);
            acc.pop_back();
        }
    };
    rec(0, 0, 0, 0, scale);
    return out;
}

void compositions(size_t q, size_t maxpart, std::vector<size_t>& cur,
                  const std::function<void(const std::vector<size_t>&)>& fn)
{
    if (q == 0) {
        fn(cur);
        return;
    }
    for (size_t p = 1; p <= std::min(q, maxpart); ++p) {
        cur.push_back(p);
        compositions(q - p, maxpart, cur, fn);
        cur.pop_back();
    }
}

} // namespace

LinComb morphism_H(const OperationFamily& h, const Word& w, int lmax)
{
    check_block(h.gens, w);
    LinComb out;
    std::vector<size_t> cur;
    compositions(w.g.size(), static_cast<size_t>(std::max(1, lmax)), cur, [&](const std::vector<size_t>& parts) {
        std::vector<int> ls(parts.begin(), parts.end());
        std::vector<Block> blocks;
        for (size_t p : parts)
            blocks.push_back({&h, p});
        add_into(out, apply_blocks(blocks, w, sign_upper_quilt(ls)));
    });
    return out;
}

LinComb morphism_H(const OperationFamily& h, const LinComb& x, int lmax)
{
    LinComb out;
    for (auto& [w, c] : x)
        add_into(out, morphism_H(h, w, lmax), c);
    return out;
}

CheckReport check_chain_map(const OperationFamily& h, const OperationFamily& m0, const OperationFamily& m1,
                            const Window& win)
{
    const int top = std::max({h.max_arity(), m0.max_arity(), m1.max_arity()});
    if (top > win.lmax)
        return skipped("chain-map", win, "families have operations beyond arity " + std::to_string(win.lmax));
    const auto words = window_words(h.gens, win.qmax);
    return run_words("chain-map", words, win, [&](const Word& w) {
        LinComb r = morphism_H(h, delta(m1, w), win.lmax);
        add_into(r, delta(m0, morphism_H(h, w, win.lmax)), -1);
        return r;
    });
}

LinComb homotopy_K(const OperationFamily& h0, const OperationFamily& h1, const OperationFamily& k, const Word& w,
                   KSides sides, int lmax)
{
    check_block(k.gens, w);
    const OperationFamily& left = sides == KSides::ZeroLeft ? h0 : h1;
    const OperationFamily& right = sides == KSides::ZeroLeft ? h1 : h0;
    LinComb out;
    std::vector<size_t> cur;
    compositions(w.g.size(), static_cast<size_t>(std::max(1, lmax)), cur, [&](const std::vector<size_t>& parts) {
        const size_t q = parts.size();
        long long e = static_cast<long long>(q);
        for (size_t i = 1; i <= q; ++i)
            e += static_cast<long long>(q - i) * static_cast<long long>(parts[i - 1] - 1);
        long long before = 0;
        for (size_t p = 1; p <= q; ++p) {
            std::vector<Block> blocks;
            for (size_t i = 1; i <= q; ++i)
                blocks.push_back({i < p ? &left : (i == p ? &k : &right), parts[i - 1]});
            add_into(out, apply_blocks(blocks, w, parity_sign(e + before)));
            before += static_cast<long long>(parts[p - 1] - 1);
        }
    });
    return out;
}

CheckReport check_homotopy(const OperationFamily& h0, const OperationFamily& h1, const OperationFamily& k,
                           const OperationFamily& m0, const OperationFamily& m1, const Window& win, KSides sides)
{
    const int top = std::max({h0.max_arity(), h1.max_arity(), k.max_arity(), m0.max_arity(), m1.max_arity()});
    if (top > win.lmax)
        return skipped("homotopy", win, "families have operations beyond arity " + std::to_string(win.lmax));
    const auto words = window_words(k.gens, win.qmax);
    return run_words("homotopy", words, win, [&](const Word& w) {
        LinComb r = morphism_H(h1, w, win.lmax);
        add_into(r, morphism_H(h0, w, win.lmax), -1);
        for (auto& [x, c] : delta(m1, w))
            add_into(r, homotopy_K(h0, h1, k, x, sides, win.lmax), -c);
        for (auto& [x, c] : homotopy_K(h0, h1, k, w, sides, win.lmax))
            add_into(r, delta(m0, x), -c);
        return r;
    });
}

// ---------------------------------------------------------------- opposite

OppositeFamily opposite(const OperationFamily& m)
{
    if (m.role != Role::M)
        throw ValidationError("opposite needs an m family");
    OppositeFamily op;
    op.NL = m.NL;
    op.gens = m.gens;
    for (auto& [in, outs] : m.ops) {
        const int s = m.suspended ? 1 : suspension_sign(degrees_of(m.gens, in));
        for (const auto& t : outs)
            op.coops[t.out].push_back({Word{in, t.d}, s * t.coef});
    }
    for (auto& [y, v] : op.coops)
        std::sort(v.begin(), v.end());
    return op;
}

OperationFamily transpose_back(const OppositeFamily& op, const OperationFamily& shape)
{
    OperationFamily m = shape;
    m.ops.clear();
    for (auto& [y, v] : op.coops)
        for (auto& [x, c] : v) {
            const int s = shape.suspended ? 1 : suspension_sign(degrees_of(op.gens, x.g));
            m.ops[x.g].push_back(OutTerm{y, x.d, s * c});
        }
    for (auto& [in, outs] : m.ops)
        std::sort(outs.begin(), outs.end());
    return m;
}

namespace {
int mubar(const std::vector<Generator>& a, const std::vector<int>& g, size_t from, size_t to)
{
    return mu_of(a, g, from, to) - static_cast<int>(to - from);
}
} // namespace

LinComb dga_differential(const OppositeFamily& op, const Word& w)
{
    LinComb out;
    for (size_t j = 0; j < w.g.size(); ++j) {
        auto it = op.coops.find(w.g[j]);
        if (it == op.coops.end())
            continue;
        const int sg = parity_sign(mubar(op.gens, w.g, 0, j));
        for (auto& [x, c] : it->second) {
            std::vector<int> g(w.g.begin(), w.g.begin() + static_cast<long>(j));
            g.insert(g.end(), x.g.begin(), x.g.end());
            g.insert(g.end(), w.g.begin() + static_cast<long>(j + 1), w.g.end());
            add_term(out, Word{g, w.d + x.d}, sg * c);
        }
    }
    return out;
}

CheckReport check_leibniz(const OppositeFamily& op, const Window& win)
{
    const auto words = window_words(op.gens, win.qmax);
    return run_words("leibniz", words, win, [&](const Word& w) {
        LinComb res;
        const LinComb whole = dga_differential(op, w);
        for (size_t cut = 1; cut < w.g.size(); ++cut) {
            Word a{{w.g.begin(), w.g.begin() + static_cast<long>(cut)}, 0};
            Word b{{w.g.begin() + static_cast<long>(cut), w.g.end()}, 0};
            LinComb r = whole;
            for (auto& [x, c] : dga_differential(op, a)) {
                Word y = x;
                y.g.insert(y.g.end(), b.g.begin(), b.g.end());
                y.d += w.d;
                add_term(r, y, -c);
            }
            const int sg = parity_sign(mubar(op.gens, a.g, 0, a.g.size()));
            for (auto& [x, c] : dga_differential(op, b)) {
                Word y = a;
                y.g.insert(y.g.end(), x.g.begin(), x.g.end());
                y.d = w.d + x.d;
                add_term(r, y, -sg * c);
            }
            add_into(res, r);
        }
        return res;
    });
}

CheckReport check_dga_square(const OppositeFamily& op, const Window& win)
{
    const auto words = window_words(op.gens, win.qmax);
    return run_words("dga-square", words, win, [&](const Word& w) {
        LinComb r;
        for (auto& [x, c] : dga_differential(op, w))
            add_into(r, dga_differential(op, x), c);
        return r;
    });
}

// ---------------------------------------------------------------- library

namespace {

struct Builder {
    OperationFamily f;
    Builder(int n, std::vector<std::pair<std::string, int>> gens)
    {
        f.n = n;
        for (auto& [s, c] : gens)
            f.gens.push_back(Generator{s, c});
        f.targets = f.gens;
    }
    Builder& op(std::vector<std::string> in, const std::string& out, long long coef, int d = 0)
    {
        std::vector<int> key;
        for (auto& s : in)
            key.push_back(f.find(s));
        f.ops[key].push_back(OutTerm{f.find_target(out), d, coef});
        return *this;
    }
};

} // namespace

std::map<std::string, OperationFamily> example_library()
{
    std::map<std::string, OperationFamily> lib;

    Builder poly(1, {{"1", 0}, {"x", 0}, {"x2", 0}});
    const char* pn[] = {"1", "x", "x2"};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; a + b < 3; ++b)
            poly.op({pn[a], pn[b]}, pn[a + b], 1);
    lib["poly"] = poly.f;

    Builder ext(1, {{"1", 0}, {"e", 1}});
    ext.op({"1", "1"}, "1", 1).op({"1", "e"}, "e", 1).op({"e", "1"}, "e", 1);
    lib["exterior"] = ext.f;

    Builder ext2(2, {{"1", 0}, {"e", 1}, {"f", 1}, {"ef", 2}});
    for (const char* x : {"1", "e", "f", "ef"}) {
        ext2.op({"1", x}, x, 1);
        if (std::string(x) != "1")
            ext2.op({x, "1"}, x, 1);
    }
    ext2.op({"e", "f"}, "ef", 1).op({"f", "e"}, "ef", -1);
    lib["exterior2"] = ext2.f;

    // perfect Morse function on the circle: maximum M (mu+ 0), minimum m (mu+ 1);
    // the two flow lines M -> m cancel, so m1 = 0
    Builder circ(1, {{"M", 0}, {"m", 1}});
    circ.op({"M", "M"}, "M", 1).op({"M", "m"}, "m", 1).op({"m", "M"}, "m", 1);
    lib["circle"] = circ.f;

    for (auto& [name, f] : lib)
        for (auto& [in, outs] : f.ops)
            std::sort(outs.begin(), outs.end());
    return lib;
}

FamilyTemplate quantum_circle_template()
{
    FamilyTemplate t;
    t.base = example_library().at("circle");
    const int M = t.base.find("M"), m = t.base.find("m");
    t.open.push_back({{m, m}, M, 1, "m2(m,m)->M t"});
    t.open.push_back({{m, m, m}, m, 1, "m3(m,m,m)->m t"});
    return t;
}

OperationFamily instantiate(const FamilyTemplate& t, const std::map<std::string, long long>& values)
{
    std::vector<std::string> missing;
    OperationFamily f = t.base;
    for (const auto& s : t.open) {
        auto it = values.find(s.name);
        if (it == values.end()) {
            missing.push_back(s.name);
            continue;
        }
        if (it->second != 0)
            f.ops[s.in].push_back(OutTerm{s.out, s.d, it->second});
    }
    if (!missing.empty()) {
        std::string msg = "missing entries:";
        for (auto& s : missing)
            msg += " " + s + ";";
        msg.pop_back();
        throw ValidationError(msg);
    }
    for (auto& [in, outs] : f.ops)
        std::sort(outs.begin(), outs.end());
    validate(f);
    return f;
}

OperationFamily identity_morphism(const OperationFamily& m)
{
    OperationFamily h = zero_family(m, Role::H);
    for (int x = 0; x < static_cast<int>(m.gens.size()); ++x)
        h.ops[{x}].push_back(OutTerm{x, 0, 1});
    return h;
}

OperationFamily zero_family(const OperationFamily& m, Role role)
{
    OperationFamily z = m;
    z.role = role;
    z.suspended = false;
    z.ops.clear();
    return z;
}

OperationFamily random_family(unsigned long long seed, int ngens, int lmax, int emax)
{
    std::mt19937_64 rng(seed);
    OperationFamily f;
    f.n = 2;
    for (int i = 0; i < ngens; ++i)
        f.gens.push_back(Generator{"g" + std::to_string(i), static_cast<int>(rng() % 3)});
    f.targets = f.gens;
    std::uniform_int_distribution<int> coef(-1, 1);
    for (int l = 1; l <= lmax; ++l) {
        std::vector<int> in(static_cast<size_t>(l), 0);
        while (true) {
            const int mu_in = mu_of(f.gens, in, 0, in.size());
            for (int y = 0; y < ngens; ++y)
                for (int d = 0; d <= emax; ++d)
                    if (f.gens[static_cast<size_t>(y)].coidx + d * f.NL - mu_in == 2 - l) {
                        const int c = coef(rng);
                        if (c != 0)
                            f.ops[in].push_back(OutTerm{y, d, c});
                    }
            size_t i = 0;
            while (i < in.size() && ++in[i] == ngens)
                in[i++] = 0;
            if (i == in.size())
                break;
        }
    }
    return f;
}

std::string word_to_string(const std::vector<Generator>& alphabet, const Word& w)
{
    std::string s;
    for (size_t i = 0; i < w.g.size(); ++i) {
        if (i)
            s += "*";
        s += alphabet[static_cast<size_t>(w.g[i])].sym;
    }
    if (w.d != 0)
        s += " t^" + std::to_string(w.d);
    return s;
}

std::string comb_to_string(const std::vector<Generator>& alphabet, const LinComb& x)
{
    if (x.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [w, c] : x) {
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        first = false;
        const long long a = c < 0 ? -c : c;
        if (a != 1)
            os << a << " ";
        os << word_to_string(alphabet, w);
    }
    return os.str();
}

} // namespace clx

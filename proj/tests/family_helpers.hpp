#pragma once
#include "clx/barcx.hpp"
#include "oracles.hpp"

// bridges between library families and the oracle's multiplication tables

inline oracle::Table table_of(const clx::OperationFamily& f)
{
    oracle::Table t;
    for (const auto& [in, outs] : f.ops) {
        if (in.size() != 2)
            continue;
        for (const auto& o : outs)
            t[{f.gens[static_cast<size_t>(in[0])].sym, f.gens[static_cast<size_t>(in[1])].sym}]
             [f.targets[static_cast<size_t>(o.out)].sym] += o.coef;
    }
    return t;
}

// an m-family carrying only the binary products of `t`
inline clx::OperationFamily family_of(const oracle::Table& t, const clx::OperationFamily& shape)
{
    clx::OperationFamily f = shape;
    f.ops.clear();
    for (const auto& [in, outs] : t)
        for (const auto& [o, c] : outs)
            if (c != 0)
                f.ops[{f.find(in.first), f.find(in.second)}].push_back({f.find(o), 0, c});
    for (auto& [in, outs] : f.ops)
        std::sort(outs.begin(), outs.end());
    return f;
}

inline clx::OperationFamily morphism_of(const oracle::SignedPerm& phi, const clx::OperationFamily& m)
{
    clx::OperationFamily h = clx::zero_family(m, clx::Role::H);
    for (const auto& [s, v] : phi.map)
        h.ops[{m.find(s)}].push_back({m.find(v.first), 0, v.second});
    return h;
}

// h1 fitted arity by arity so that the single-output part of the homotopy
// relation holds; used to build nontrivial homotopy data by brute force
inline clx::OperationFamily solve_h1(const clx::OperationFamily& m, const clx::OperationFamily& h0,
                                     const clx::OperationFamily& k, clx::KSides s, int L)
{
    using namespace clx;
    OperationFamily h1 = zero_family(m, Role::H);
    for (int l = 1; l <= L; ++l)
        for (const auto& w : window_words(m.gens, l)) {
            if (static_cast<int>(w.g.size()) != l)
                continue;
            LinComb r = morphism_H(h0, w);
            for (const auto& [x, c] : delta(m, w))
                add_into(r, homotopy_K(h0, h1, k, x, s), c);
            for (const auto& [x, c] : homotopy_K(h0, h1, k, w, s))
                add_into(r, delta(m, x), c);
            for (const auto& [x, c] : morphism_H(h1, w))
                add_term(r, x, -c);
            for (const auto& [x, c] : r)
                if (x.g.size() == 1)
                    h1.ops[w.g].push_back({x.g[0], x.d, c});
        }
    for (auto& [in, outs] : h1.ops)
        std::sort(outs.begin(), outs.end());
    return h1;
}

#pragma once

#include "free_operad.hpp"

namespace opalg {

/// Per-arity, per-degree subspaces of an operad's components.
template <class F>
struct ComponentSubspaces {
    std::vector<std::map<int, RowSpace<F>>> spaces;  // [arity][degree]

    explicit ComponentSubspaces(int max_arity) : spaces(max_arity + 1) {}

    RowSpace<F>& at(const Operad<F>& o, int n, int deg) {
        auto it = spaces[n].find(deg);
        if (it == spaces[n].end())
            it = spaces[n].emplace(deg, RowSpace<F>(o.comp(n).dim(deg))).first;
        return it->second;
    }

    bool contains(const OpElem<F>& e) const {
        for (auto& [deg, v] : e.parts) {
            if (is_zero_vec(v)) continue;
            auto it = spaces[e.arity].find(deg);
            if (it == spaces[e.arity].end()) return false;
            if (!it->second.contains(v)) return false;
        }
        return true;
    }

    int rank(int n, int deg) const {
        auto it = spaces[n].find(deg);
        return it == spaces[n].end() ? 0 : it->second.rank();
    }
};

/// Saturate the span of `gens` under the Σ-actions and all available ∘_k
/// (both sides) within the operad's arity bound. The differential is NOT
/// part of the closure; use the d-stability check afterwards.
template <class F>
ComponentSubspaces<F> saturate_ideal(const Operad<F>& o, const std::vector<OpElem<F>>& gens) {
    ComponentSubspaces<F> ideal(o.max_arity());
    std::vector<OpElem<F>> work;

    auto push = [&](const OpElem<F>& e) {
        bool grew = false;
        for (auto& [deg, v] : e.parts) {
            if (is_zero_vec(v)) continue;
            if (ideal.at(o, e.arity, deg).add(v)) grew = true;
        }
        if (grew) work.push_back(e);
    };

    for (auto& g : gens) push(g);

    while (!work.empty()) {
        OpElem<F> z = std::move(work.back());
        work.pop_back();
        int n = z.arity;
        for (int t = 0; t + 1 < n; ++t)
            push(o.act(z, Permutation::transposition(n, t)));
        for (int m = 1; m <= o.max_arity(); ++m) {
            if (o.comp(m).total_dim() == 0) continue;
            if (n + m - 1 > o.max_arity()) continue;
            for (int k = 1; k <= n; ++k) {
                if (!o.circ.count({n, m, k})) continue;
                o.for_each_basis(m, [&](int deg, int idx) {
                    push(o.compose(z, k, o.basis_elem(m, deg, idx)));
                });
            }
            for (int k = 1; k <= m; ++k) {
                if (!o.circ.count({m, n, k})) continue;
                o.for_each_basis(m, [&](int deg, int idx) {
                    push(o.compose(o.basis_elem(m, deg, idx), k, z));
                });
            }
        }
    }
    return ideal;
}

/// Quotient operad together with the per-arity projection and a chosen
/// linear section (non-pivot coordinates of the ideal's row echelon form).
template <class F>
struct QuotientOperad {
    Operad<F> op;
    std::vector<std::map<int, Matrix<F>>> proj;     // [arity][degree]: O -> Q
    std::vector<std::map<int, Matrix<F>>> section;  // [arity][degree]: Q -> O

    Matrix<F> projection(int n, int deg) const {
        auto it = proj[n].find(deg);
        if (it != proj[n].end()) return it->second;
        return Matrix<F>(op.comp(n).dim(deg), 0);
    }
};

template <class F>
QuotientOperad<F> quotient(const Operad<F>& o, const std::vector<OpElem<F>>& gens,
                           const std::string& name = "") {
    ComponentSubspaces<F> ideal = saturate_ideal(o, gens);

    // d-stability of the saturated ideal (signals a non-d-stable relation set)
    for (int n = 0; n <= o.max_arity(); ++n)
        for (auto& [deg, sp] : ideal.spaces[n])
            for (auto& row : sp.basis()) {
                OpElem<F> z;
                z.arity = n;
                z.parts[deg] = row;
                if (!ideal.contains(o.diff(z)))
                    throw error("quotient: differential does not preserve the ideal at arity " +
                                std::to_string(n) + ", degree " + std::to_string(deg));
            }

    QuotientOperad<F> q;
    q.op.name = name.empty() ? o.name + "/I" : name;
    q.op.truncated = o.truncated;
    q.proj.resize(o.max_arity() + 1);
    q.section.resize(o.max_arity() + 1);

    // per (arity, degree): pivot coords die, non-pivot coords survive;
    // projection reduces against the echelon rows and reads off survivors
    for (int n = 0; n <= o.max_arity(); ++n) {
        const Complex<F>& c = o.comp(n);
        Complex<F> qc;
        std::map<int, std::vector<int>> survivors;
        for (auto& [deg, k] : c.dims) {
            std::set<int> pivots;
            auto it = ideal.spaces[n].find(deg);
            if (it != ideal.spaces[n].end())
                for (int p : it->second.pivots()) pivots.insert(p);
            std::vector<int> keep;
            for (int i = 0; i < k; ++i)
                if (!pivots.count(i)) keep.push_back(i);
            survivors[deg] = keep;
            if (!keep.empty()) {
                qc.dims[deg] = (int)keep.size();
                std::vector<std::string> lab;
                for (int i : keep) lab.push_back(c.label_of(deg, i));
                qc.labels[deg] = std::move(lab);
            }

            Matrix<F> P((int)keep.size(), k);
            for (int i = 0; i < k; ++i) {
                Vec<F> e = zero_vec<F>(k);
                e[i] = F(1);
                if (it != ideal.spaces[n].end()) e = it->second.reduce(e);
                for (int j = 0; j < (int)keep.size(); ++j) P.set(j, i, e[keep[j]]);
            }
            q.proj[n][deg] = std::move(P);
            Matrix<F> S(k, (int)keep.size());
            for (int j = 0; j < (int)keep.size(); ++j) S.set(keep[j], j, F(1));
            q.section[n][deg] = std::move(S);
        }
        q.op.coll.components.push_back(std::move(qc));
        q.op.coll.actions.push_back(nullptr);
    }

    // induced differential, actions
    for (int n = 0; n <= o.max_arity(); ++n) {
        Complex<F>& qc = q.op.coll.components[n];
        for (auto& [deg, k] : qc.dims) {
            if (qc.dim(deg + 1) == 0) continue;
            qc.set_d(deg, q.proj[n][deg + 1] * (o.comp(n).d(deg) * q.section[n][deg]));
        }
        qc.validate();
        std::vector<ChainMap<F>> gens_maps;
        for (int g = 0; g + 1 < n; ++g) {
            ChainMap<F> a = ChainMap<F>::zero(qc, qc, 0);
            const ChainMap<F>& orig = o.coll.action(n).act(Permutation::transposition(n, g));
            for (auto& [deg, k] : qc.dims)
                a.set(deg, q.proj[n][deg] * (orig.at(deg) * q.section[n][deg]));
            gens_maps.push_back(std::move(a));
        }
        q.op.coll.actions[n] =
            std::make_shared<SigmaAction<F>>(SigmaAction<F>(qc, std::move(gens_maps)));
    }

    // unit
    {
        const Matrix<F>& P = q.proj[1][0];
        q.op.unit = P.apply(o.unit);
    }

    // induced compositions
    for (auto& [key, cm] : o.circ) {
        auto [n, m, k] = key;
        const Complex<F>&qn = q.op.comp(n), &qm = q.op.comp(m), &qr = q.op.comp(n + m - 1);
        ChainMap<F> out = ChainMap<F>::zero(tensor(qn, qm), qr, 0);
        TensorIndex<F> qt(qn, qm);
        TensorIndex<F> ot(o.comp(n), o.comp(m));
        for (auto& [deg, dim] : out.source.dims) {
            Matrix<F> mat(qr.dim(deg), dim);
            for (auto& [p, kn] : qn.dims) {
                int qdeg = deg - p;
                if (qm.dim(qdeg) == 0) continue;
                for (int i = 0; i < kn; ++i)
                    for (int j = 0; j < qm.dim(qdeg); ++j) {
                        Vec<F> oi = q.section[n][p].column(i);
                        Vec<F> oj = q.section[m][qdeg].column(j);
                        Vec<F> big(ot.dim(deg), F());
                        for (int a = 0; a < (int)oi.size(); ++a) {
                            if (oi[a].is_zero()) continue;
                            for (int b = 0; b < (int)oj.size(); ++b)
                                if (!oj[b].is_zero())
                                    big[ot.index(deg, p, a, b)] += oi[a] * oj[b];
                        }
                        Vec<F> res = q.proj[n + m - 1][deg].apply(cm.at(deg).apply(big));
                        for (int r = 0; r < (int)res.size(); ++r)
                            if (!res[r].is_zero())
                                mat.add_to(r, qt.index(deg, p, i, j), res[r]);
                    }
            }
            out.set(deg, std::move(mat));
        }
        q.op.circ[key] = std::move(out);
    }
    return q;
}

/// Lie: free operad on an antisymmetric degree-0 binary bracket modulo the
/// Jacobi relation. dim Lie(n) = (n−1)!.
template <class F>
Operad<F> builtin_lie(int max_arity) {
    Collection<F> v = Collection<F>::empty_through(2);
    Complex<F> b;
    b.dims[0] = 1;
    b.labels[0] = {"b"};
    ChainMap<F> sign_gen = ChainMap<F>::id(b).scaled(F(-1));
    v.components[2] = b;
    v.actions[2] = std::make_shared<SigmaAction<F>>(SigmaAction<F>(b, {sign_gen}));

    FreeOperad<F> fo = free_operad(v, max_arity, std::max(0, max_arity - 1));
    OpElem<F> bb = fo.op.basis_elem(2, 0, 0);
    OpElem<F> comb = fo.op.compose(bb, 1, bb);  // [[1,2],3]
    Permutation cyc({1, 2, 0});
    OpElem<F> jac = comb;
    OpElem<F> t1 = fo.op.act(comb, cyc);
    OpElem<F> t2 = fo.op.act(t1, cyc);
    for (auto& [deg, vv] : t1.parts) axpy(jac.parts[deg], F(1), vv);
    for (auto& [deg, vv] : t2.parts) axpy(jac.parts[deg], F(1), vv);
    jac.prune();

    QuotientOperad<F> q = quotient(fo.op, {jac}, "Lie");
    return q.op;
}

}  // namespace opalg

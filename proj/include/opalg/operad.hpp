#pragma once

#include <functional>
#include <memory>
#include <sstream>
#include <tuple>

#include "tree.hpp"

namespace opalg {

/// Arity-indexed complexes with right symmetric-group actions.
template <class F>
struct Collection {
    // index = arity; index 0 present but zero (reduced setting)
    std::vector<Complex<F>> components;
    std::vector<std::shared_ptr<SigmaAction<F>>> actions;

    int max_arity() const { return (int)components.size() - 1; }

    const Complex<F>& at(int n) const {
        static const Complex<F> empty{};
        if (n < 0 || n > max_arity()) return empty;
        return components[n];
    }

    const SigmaAction<F>& action(int n) const {
        if (n < 1 || n > max_arity() || !actions[n])
            throw error("Collection: no action at arity " + std::to_string(n));
        return *actions[n];
    }

    void push(Complex<F> c, std::shared_ptr<SigmaAction<F>> a) {
        components.push_back(std::move(c));
        actions.push_back(std::move(a));
    }

    static Collection empty_through(int max_arity) {
        Collection v;
        for (int n = 0; n <= max_arity; ++n) {
            Complex<F> c;
            v.components.push_back(c);
            v.actions.push_back(std::make_shared<SigmaAction<F>>(SigmaAction<F>::trivial(c, n)));
        }
        return v;
    }
};

/// Homogeneous element of one operad component: graded coordinate vector.
template <class F>
struct OpElem {
    int arity = 0;
    std::map<int, Vec<F>> parts;  // degree -> coordinates in O(arity)^degree

    bool is_zero() const {
        for (auto& [d, v] : parts)
            if (!is_zero_vec(v)) return false;
        return true;
    }

    void add(int deg, int idx, const F& c, int dim) {
        auto it = parts.find(deg);
        if (it == parts.end()) it = parts.emplace(deg, zero_vec<F>(dim)).first;
        it->second[idx] += c;
    }

    void prune() {
        for (auto it = parts.begin(); it != parts.end();)
            it = is_zero_vec(it->second) ? parts.erase(it) : std::next(it);
    }

    static OpElem single(int arity, int deg, int idx, int dim, const F& c = F(1)) {
        OpElem e;
        e.arity = arity;
        e.parts[deg] = zero_vec<F>(dim);
        e.parts[deg][idx] = c;
        return e;
    }
};

/// σ ⋄_k τ: the permutation of n+m−1 letters obtained by substituting the
/// block ⟨m⟩, rearranged by τ, for the letter k of σ (k 0-based here).
/// Governs the equivariance of ∘_{k+1}: (xσ) ∘ y at slot σ(k), etc.
inline Permutation block_substitution(const Permutation& sigma, int k, const Permutation& tau) {
    int n = sigma.n(), m = tau.n();
    std::vector<int> img(n + m - 1);
    auto shifted = [&](int v) { return v > sigma(k) ? v + m - 1 : v; };
    for (int j = 0; j < n + m - 1; ++j) {
        if (j < k) img[j] = shifted(sigma(j));
        else if (j < k + m) img[j] = sigma(k) + tau(j - k);
        else img[j] = shifted(sigma(j - m + 1));
    }
    return Permutation(std::move(img));
}

struct CheckReport {
    bool ok = true;
    std::vector<std::string> checked;   // identity classes verified
    std::vector<std::string> failures;  // named failures

    void note(const std::string& what) { checked.push_back(what); }
    void fail(const std::string& what) {
        ok = false;
        failures.push_back(what);
    }
    std::string summary() const {
        if (ok) return "ok (" + std::to_string(checked.size()) + " identity classes)";
        std::string s = "FAILED:";
        for (auto& f : failures) s += " " + f;
        return s;
    }
};

/// dg operad with Σ-actions and ∘_k compositions stored as structure
/// constants on basis pairs. Reduced: O(0) = 0. Compositions are present
/// for n+m−1 <= max_arity(); constructions that cannot close record
/// truncation.
template <class F>
struct Operad {
    Collection<F> coll;
    Vec<F> unit;  // coordinates in O(1), degree 0
    // circ[(n,m,k)]: chain map tensor(O(n), O(m)) -> O(n+m-1); k is 1-based
    std::map<std::tuple<int, int, int>, ChainMap<F>> circ;
    std::string name = "operad";
    bool truncated = false;
    std::vector<std::string> notices;

    int max_arity() const { return coll.max_arity(); }
    const Complex<F>& comp(int n) const { return coll.at(n); }

    OpElem<F> unit_elem() const {
        OpElem<F> e;
        e.arity = 1;
        e.parts[0] = unit;
        e.prune();
        return e;
    }

    const ChainMap<F>& circ_map(int n, int m, int k) const {
        auto it = circ.find({n, m, k});
        if (it == circ.end())
            throw error(name + ": composition (" + std::to_string(n) + "," + std::to_string(m) +
                        ",∘_" + std::to_string(k) + ") not available (truncated or out of range)");
        return it->second;
    }

    /// x ∘_k y for homogeneous-by-degree elements (k 1-based).
    OpElem<F> compose(const OpElem<F>& x, int k, const OpElem<F>& y) const {
        int n = x.arity, m = y.arity;
        OpElem<F> out;
        out.arity = n + m - 1;
        const ChainMap<F>& c = circ_map(n, m, k);
        TensorIndex<F> ti(comp(n), comp(m));
        for (auto& [p, xv] : x.parts)
            for (auto& [q, yv] : y.parts) {
                int deg = p + q;
                if (ti.dim(deg) == 0) continue;
                Vec<F> big(ti.dim(deg), F());
                for (int i = 0; i < (int)xv.size(); ++i) {
                    if (xv[i].is_zero()) continue;
                    for (int j = 0; j < (int)yv.size(); ++j) {
                        if (yv[j].is_zero()) continue;
                        big[ti.index(deg, p, i, j)] += xv[i] * yv[j];
                    }
                }
                Vec<F> res = c.at(deg).apply(big);
                auto it = out.parts.find(deg);
                if (it == out.parts.end()) out.parts[deg] = std::move(res);
                else axpy(it->second, F(1), Vec<F>(res));
            }
        out.prune();
        return out;
    }

    /// Full multiplication γ(x; y_1, ..., y_n), derived from ∘_k by plugging
    /// arguments left to right (no Koszul signs in this order).
    OpElem<F> gamma(const OpElem<F>& x, const std::vector<OpElem<F>>& ys) const {
        if ((int)ys.size() != x.arity) throw error("gamma: arity mismatch");
        OpElem<F> acc = x;
        int slot = 1;
        for (auto& y : ys) {
            acc = compose(acc, slot, y);
            slot += y.arity;
        }
        return acc;
    }

    OpElem<F> act(const OpElem<F>& x, const Permutation& s) const {
        OpElem<F> out;
        out.arity = x.arity;
        const ChainMap<F>& a = coll.action(x.arity).act(s);
        for (auto& [p, v] : x.parts) out.parts[p] = a.at(p).apply(v);
        out.prune();
        return out;
    }

    OpElem<F> diff(const OpElem<F>& x) const {
        OpElem<F> out;
        out.arity = x.arity;
        for (auto& [p, v] : x.parts) {
            if (comp(x.arity).dim(p + 1) == 0) continue;
            Vec<F> dv = comp(x.arity).d(p).apply(v);
            auto it = out.parts.find(p + 1);
            if (it == out.parts.end()) out.parts[p + 1] = std::move(dv);
            else axpy(it->second, F(1), dv);
        }
        out.prune();
        return out;
    }

    OpElem<F> basis_elem(int n, int deg, int idx) const {
        return OpElem<F>::single(n, deg, idx, comp(n).dim(deg));
    }

    std::string basis_label(int n, int deg, int idx) const {
        std::string l = comp(n).label_of(deg, idx);
        if (!l.empty()) return l;
        std::ostringstream os;
        os << name << "(" << n << ")[" << deg << ";" << idx << "]";
        return os.str();
    }

    void for_each_basis(int n, const std::function<void(int deg, int idx)>& f) const {
        for (auto& [deg, k] : comp(n).dims)
            for (int i = 0; i < k; ++i) f(deg, i);
    }
};

namespace detail {

template <class F>
bool elems_equal(const OpElem<F>& a, const OpElem<F>& b) {
    OpElem<F> d = a;
    for (auto& [p, v] : b.parts) {
        auto it = d.parts.find(p);
        if (it == d.parts.end()) d.parts[p] = zero_vec<F>((int)v.size());
        axpy(d.parts[p], F(-1), v);
    }
    return d.is_zero();
}

}  // namespace detail

/// Verify unit, associativity (nested and disjoint), equivariance and
/// chain-map property of all ∘_k within max_arity. The certificate lists
/// each identity class and names the first failing (n, m, k) and basis pair.
template <class F>
CheckReport check_operad(const Operad<F>& o, int max_arity) {
    CheckReport rep;
    int top = std::min(max_arity, o.max_arity());

    // reduced + unit is a degree-0 cycle
    if (o.comp(0).total_dim() != 0) rep.fail("O(0) != 0");
    rep.note("reduced");
    {
        OpElem<F> u = o.unit_elem();
        if (u.is_zero()) rep.fail("unit is zero");
        if (!o.diff(u).is_zero()) rep.fail("d(unit) != 0");
        rep.note("unit cycle");
    }

    // actions are genuine chain-level group actions
    for (int n = 2; n <= top; ++n) {
        if (o.comp(n).total_dim() == 0) continue;
        o.coll.action(n).validate();
    }
    rep.note("Σ-action relations");

    // chain-map property of the stored circ tables
    for (auto& [key, cm] : o.circ) {
        auto [n, m, k] = key;
        if (n > top || m > top || n + m - 1 > top) continue;
        if (!cm.commutes())
            rep.fail("∘ not a chain map at (" + std::to_string(n) + "," + std::to_string(m) + "," +
                     std::to_string(k) + ")");
    }
    rep.note("∘_k chain maps");

    // unit laws
    for (int n = 1; n <= top; ++n) {
        bool bad = false;
        o.for_each_basis(n, [&](int deg, int idx) {
            if (bad) return;
            OpElem<F> x = o.basis_elem(n, deg, idx);
            if (!detail::elems_equal(o.compose(o.unit_elem(), 1, x), x)) {
                rep.fail("1∘x != x at arity " + std::to_string(n) + " " + o.basis_label(n, deg, idx));
                bad = true;
            }
            for (int k = 1; k <= n && !bad; ++k)
                if (!detail::elems_equal(o.compose(x, k, o.unit_elem()), x)) {
                    rep.fail("x∘1 != x at arity " + std::to_string(n) + ", slot " + std::to_string(k));
                    bad = true;
                }
        });
    }
    rep.note("unit laws");

    // associativity, nested: (x ∘_k y) ∘_{k-1+j} z = x ∘_k (y ∘_j z)
    for (int n = 1; n <= top; ++n)
        for (int m = 1; m <= top; ++m)
            for (int l = 1; n + m + l - 2 <= top && l <= top; ++l) {
                if (o.comp(n).total_dim() == 0 || o.comp(m).total_dim() == 0 ||
                    o.comp(l).total_dim() == 0)
                    continue;
                for (int k = 1; k <= n; ++k)
                    for (int j = 1; j <= m; ++j) {
                        bool bad = false;
                        o.for_each_basis(n, [&](int dx, int ix) {
                            o.for_each_basis(m, [&](int dy, int iy) {
                                o.for_each_basis(l, [&](int dz, int iz) {
                                    if (bad) return;
                                    OpElem<F> x = o.basis_elem(n, dx, ix);
                                    OpElem<F> y = o.basis_elem(m, dy, iy);
                                    OpElem<F> z = o.basis_elem(l, dz, iz);
                                    OpElem<F> lhs = o.compose(o.compose(x, k, y), k - 1 + j, z);
                                    OpElem<F> rhs = o.compose(x, k, o.compose(y, j, z));
                                    if (!detail::elems_equal(lhs, rhs)) {
                                        rep.fail("nested associativity fails at (n,m,l)=(" +
                                                 std::to_string(n) + "," + std::to_string(m) + "," +
                                                 std::to_string(l) + ") slots (" + std::to_string(k) +
                                                 "," + std::to_string(j) + ") on " +
                                                 o.basis_label(n, dx, ix) + "," +
                                                 o.basis_label(m, dy, iy) + "," +
                                                 o.basis_label(l, dz, iz));
                                        bad = true;
                                    }
                                });
                            });
                        });
                    }
            }
    rep.note("nested associativity");

    // associativity, disjoint: i < k:
    // (x ∘_k y) ∘_i z = (−1)^{|y||z|} (x ∘_i z) ∘_{k+l-1} y
    for (int n = 2; n <= top; ++n)
        for (int m = 1; m <= top; ++m)
            for (int l = 1; n + m + l - 2 <= top && l <= top; ++l) {
                if (o.comp(n).total_dim() == 0 || o.comp(m).total_dim() == 0 ||
                    o.comp(l).total_dim() == 0)
                    continue;
                for (int k = 2; k <= n; ++k)
                    for (int i = 1; i < k; ++i) {
                        bool bad = false;
                        o.for_each_basis(n, [&](int dx, int ix) {
                            o.for_each_basis(m, [&](int dy, int iy) {
                                o.for_each_basis(l, [&](int dz, int iz) {
                                    if (bad) return;
                                    OpElem<F> x = o.basis_elem(n, dx, ix);
                                    OpElem<F> y = o.basis_elem(m, dy, iy);
                                    OpElem<F> z = o.basis_elem(l, dz, iz);
                                    OpElem<F> lhs = o.compose(o.compose(x, k, y), i, z);
                                    F sgn = ((dy * dz) % 2 == 0) ? F(1) : F(-1);
                                    OpElem<F> rhs = o.compose(o.compose(x, i, z), k + l - 1, y);
                                    for (auto& [p, v] : rhs.parts)
                                        for (auto& c : v) c *= sgn;
                                    if (!detail::elems_equal(lhs, rhs)) {
                                        rep.fail("disjoint associativity fails at (n,m,l)=(" +
                                                 std::to_string(n) + "," + std::to_string(m) + "," +
                                                 std::to_string(l) + ") slots (" + std::to_string(k) +
                                                 "," + std::to_string(i) + ")");
                                        bad = true;
                                    }
                                });
                            });
                        });
                    }
            }
    rep.note("disjoint associativity");

    // equivariance on transposition generators:
    // (xσ) ∘_k y = (x ∘_{σ(k)} y)·(σ ⋄_k id)   and   x ∘_k (yτ) = (x ∘_k y)·(id ⋄_k τ)
    for (int n = 1; n <= top; ++n)
        for (int m = 1; n + m - 1 <= top && m <= top; ++m) {
            if (o.comp(n).total_dim() == 0 || o.comp(m).total_dim() == 0) continue;
            for (int k = 1; k <= n; ++k) {
                bool bad = false;
                std::vector<Permutation> sigmas, taus;
                for (int t = 0; t + 1 < n; ++t) sigmas.push_back(Permutation::transposition(n, t));
                for (int t = 0; t + 1 < m; ++t) taus.push_back(Permutation::transposition(m, t));
                o.for_each_basis(n, [&](int dx, int ix) {
                    o.for_each_basis(m, [&](int dy, int iy) {
                        if (bad) return;
                        OpElem<F> x = o.basis_elem(n, dx, ix);
                        OpElem<F> y = o.basis_elem(m, dy, iy);
                        for (auto& s : sigmas) {
                            OpElem<F> lhs = o.compose(o.act(x, s), k, y);
                            Permutation big = block_substitution(s, k - 1, Permutation::identity(m));
                            OpElem<F> rhs = o.act(o.compose(x, s(k - 1) + 1, y), big);
                            if (!detail::elems_equal(lhs, rhs)) {
                                rep.fail("left equivariance fails at (n,m,k)=(" + std::to_string(n) +
                                         "," + std::to_string(m) + "," + std::to_string(k) + ") on " +
                                         o.basis_label(n, dx, ix) + "," + o.basis_label(m, dy, iy));
                                bad = true;
                                return;
                            }
                        }
                        for (auto& t : taus) {
                            OpElem<F> lhs = o.compose(x, k, o.act(y, t));
                            Permutation big =
                                block_substitution(Permutation::identity(n), k - 1, t);
                            OpElem<F> rhs = o.act(o.compose(x, k, y), big);
                            if (!detail::elems_equal(lhs, rhs)) {
                                rep.fail("right equivariance fails at (n,m,k)=(" + std::to_string(n) +
                                         "," + std::to_string(m) + "," + std::to_string(k) + ")");
                                bad = true;
                                return;
                            }
                        }
                    });
                });
            }
        }
    rep.note("equivariance");
    return rep;
}

/// Operad with trivial symmetric structure: components, unit, compositions,
/// no Σ-actions (an operad "without the symmetric group").
template <class F>
struct AsymOperad {
    std::vector<Complex<F>> components;  // index = arity
    Vec<F> unit;
    std::map<std::tuple<int, int, int>, ChainMap<F>> circ;
    std::string name = "asym";

    int max_arity() const { return (int)components.size() - 1; }
    const Complex<F>& comp(int n) const {
        static const Complex<F> empty{};
        if (n < 0 || n > max_arity()) return empty;
        return components[n];
    }
};

/// Com as an asymmetric operad: every component k in degree 0.
template <class F>
AsymOperad<F> asym_com(int max_arity) {
    AsymOperad<F> t;
    t.name = "com";
    for (int n = 0; n <= max_arity; ++n) {
        Complex<F> c;
        if (n >= 1) {
            c.dims[0] = 1;
            c.labels[0] = {n == 1 ? std::string("1") : "m" + std::to_string(n)};
        }
        t.components.push_back(c);
    }
    t.unit = {F(1)};
    for (int n = 1; n <= max_arity; ++n)
        for (int m = 1; n + m - 1 <= max_arity; ++m)
            for (int k = 1; k <= n; ++k) {
                ChainMap<F> cm =
                    ChainMap<F>::zero(tensor(t.comp(n), t.comp(m)), t.comp(n + m - 1), 0);
                Matrix<F> one(1, 1);
                one.set(0, 0, F(1));
                cm.set(0, one);
                t.circ[{n, m, k}] = cm;
            }
    return t;
}

/// T^Σ: components T(n) ⊗ kΣ_n with the free right action on the group
/// factor; multiplication is the unique Σ-compatible extension:
/// (u⊗σ) ∘_k (v⊗τ) = (u ∘_{σ(k)} v) ⊗ (σ ⋄_k τ).
template <class F>
Operad<F> symmetrize(const AsymOperad<F>& t) {
    Operad<F> o;
    o.name = t.name + "^Σ";
    int top = t.max_arity();
    for (int n = 0; n <= top; ++n) {
        Complex<F> c = tensor_with_group_algebra(t.comp(n), n);
        // labels: base ⊗ permutation
        long fact = 1;
        for (int i = 2; i <= n; ++i) fact *= i;
        auto perms = all_permutations(n);
        for (auto& [deg, k] : c.dims) {
            std::vector<std::string> lab;
            for (int i = 0; i < t.comp(n).dim(deg); ++i)
                for (auto& s : perms) {
                    std::string base = t.comp(n).label_of(deg, i);
                    lab.push_back(n <= 1 ? base : base + s.str());
                }
            c.labels[deg] = std::move(lab);
        }
        // free right action on the group factor
        std::vector<ChainMap<F>> gens;
        for (int g = 0; g + 1 < n; ++g) {
            Permutation tr = Permutation::transposition(n, g);
            ChainMap<F> a = ChainMap<F>::zero(c, c, 0);
            for (auto& [deg, k] : c.dims) {
                Matrix<F> m(k, k);
                for (int i = 0; i < t.comp(n).dim(deg); ++i)
                    for (auto& s : perms)
                        m.set((int)(i * fact + permutation_index(s.compose(tr))),
                              (int)(i * fact + permutation_index(s)), F(1));
                a.set(deg, std::move(m));
            }
            gens.push_back(std::move(a));
        }
        auto action = std::make_shared<SigmaAction<F>>(SigmaAction<F>(c, std::move(gens)));
        o.coll.push(std::move(c), std::move(action));
    }
    o.unit = zero_vec<F>(o.comp(1).dim(0));
    for (int i = 0; i < (int)t.unit.size(); ++i) o.unit[i] = t.unit[i];

    for (int n = 1; n <= top; ++n)
        for (int m = 1; n + m - 1 <= top; ++m)
            for (int k = 1; k <= n; ++k) {
                auto perms_n = all_permutations(n);
                auto perms_m = all_permutations(m);
                long fn = 1, fm = 1, fr = 1;
                for (int i = 2; i <= n; ++i) fn *= i;
                for (int i = 2; i <= m; ++i) fm *= i;
                for (int i = 2; i <= n + m - 1; ++i) fr *= i;
                const Complex<F>&cn = o.comp(n), &cm = o.comp(m), &cr = o.comp(n + m - 1);
                ChainMap<F> out = ChainMap<F>::zero(tensor(cn, cm), cr, 0);
                TensorIndex<F> ti(cn, cm);
                for (auto& [deg, dim] : out.source.dims) {
                    Matrix<F> mat(cr.dim(deg), dim);
                    for (auto& [p, kn] : cn.dims) {
                        int q = deg - p;
                        if (cm.dim(q) == 0) continue;
                        for (int bi = 0; bi < t.comp(n).dim(p); ++bi)
                            for (auto& s : perms_n)
                                for (int bj = 0; bj < t.comp(m).dim(q); ++bj)
                                    for (auto& tau : perms_m) {
                                        int col = ti.index(deg, p,
                                                           (int)(bi * fn + permutation_index(s)),
                                                           (int)(bj * fm + permutation_index(tau)));
                                        // asym composition at slot σ(k)
                                        const ChainMap<F>& base =
                                            t.circ.at({n, m, s(k - 1) + 1});
                                        TensorIndex<F> bti(t.comp(n), t.comp(m));
                                        Vec<F> bvec(bti.dim(deg), F());
                                        bvec[bti.index(deg, p, bi, bj)] = F(1);
                                        Vec<F> res = base.at(deg).apply(bvec);
                                        Permutation big = block_substitution(s, k - 1, tau);
                                        int gidx = permutation_index(big);
                                        for (int r = 0; r < (int)res.size(); ++r)
                                            if (!res[r].is_zero())
                                                mat.add_to((int)(r * fr + gidx), col, res[r]);
                                    }
                    }
                    out.set(deg, std::move(mat));
                }
                o.circ[{n, m, k}] = std::move(out);
            }
    return o;
}

/// The adjunction morphism π : O^{#Σ} → O, π(u⊗σ) = uσ, as per-arity chain
/// maps (an operad morphism; verified in tests).
template <class F>
std::vector<ChainMap<F>> adjunction_pi(const Operad<F>& o, const Operad<F>& osym) {
    std::vector<ChainMap<F>> out;
    for (int n = 0; n <= osym.max_arity(); ++n) {
        const Complex<F>& src = osym.comp(n);
        const Complex<F>& tgt = o.comp(n);
        ChainMap<F> pi = ChainMap<F>::zero(src, tgt, 0);
        long fact = 1;
        for (int i = 2; i <= n; ++i) fact *= i;
        auto perms = all_permutations(n);
        for (auto& [deg, k] : src.dims) {
            Matrix<F> m(tgt.dim(deg), k);
            for (int i = 0; i < tgt.dim(deg); ++i)
                for (auto& s : perms) {
                    const Matrix<F>& a = o.coll.action(n).act(s).at(deg);
                    for (int r = 0; r < a.rows(); ++r) {
                        const F v = a.get(r, i);
                        if (!v.is_zero())
                            m.add_to(r, (int)(i * fact + permutation_index(s)), v);
                    }
                }
            pi.set(deg, std::move(m));
        }
        out.push_back(std::move(pi));
    }
    return out;
}

/// Com: every component k in degree 0, trivial actions, all compositions 1.
template <class F>
Operad<F> builtin_com(int max_arity) {
    AsymOperad<F> t = asym_com<F>(max_arity);
    Operad<F> o;
    o.name = "Com";
    for (int n = 0; n <= max_arity; ++n) {
        Complex<F> c = t.comp(n);
        o.coll.push(c, std::make_shared<SigmaAction<F>>(SigmaAction<F>::trivial(c, n)));
    }
    o.unit = {F(1)};
    o.circ = t.circ;
    return o;
}

/// Ass = Com^{#Σ}: dim Ass(n) = n!.
template <class F>
Operad<F> builtin_ass(int max_arity) {
    Operad<F> o = symmetrize(asym_com<F>(max_arity));
    o.name = "Ass";
    return o;
}

}  // namespace opalg

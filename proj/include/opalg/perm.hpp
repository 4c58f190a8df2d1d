#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <vector>

#include "complex.hpp"

namespace opalg {

/// Permutation of {0, ..., n-1}. Composition convention, fixed engine-wide:
/// (σ τ)(i) = σ(τ(i)). Actions on operad components are right actions,
/// u(στ) = (uσ)τ.
struct Permutation {
    std::vector<int> img;

    Permutation() = default;
    explicit Permutation(std::vector<int> images) : img(std::move(images)) {
        std::vector<bool> seen(img.size(), false);
        for (int v : img) {
            if (v < 0 || v >= (int)img.size() || seen[v])
                throw error("Permutation: images not a bijection");
            seen[v] = true;
        }
    }

    static Permutation identity(int n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 0);
        return Permutation(std::move(v));
    }

    /// Adjacent transposition s_k = (k, k+1), 0-based.
    static Permutation transposition(int n, int k) {
        Permutation p = identity(n);
        std::swap(p.img[k], p.img[k + 1]);
        return p;
    }

    int n() const { return (int)img.size(); }
    int operator()(int i) const { return img[i]; }

    Permutation compose(const Permutation& t) const {  // (*this) ∘ t
        if (n() != t.n()) throw error("Permutation: size mismatch");
        std::vector<int> v(n());
        for (int i = 0; i < n(); ++i) v[i] = img[t.img[i]];
        Permutation p;
        p.img = std::move(v);
        return p;
    }

    Permutation inverse() const {
        std::vector<int> v(n());
        for (int i = 0; i < n(); ++i) v[img[i]] = i;
        Permutation p;
        p.img = std::move(v);
        return p;
    }

    bool is_identity() const {
        for (int i = 0; i < n(); ++i)
            if (img[i] != i) return false;
        return true;
    }

    int sign() const {
        int inv = 0;
        for (int i = 0; i < n(); ++i)
            for (int j = i + 1; j < n(); ++j)
                if (img[i] > img[j]) ++inv;
        return inv % 2 == 0 ? 1 : -1;
    }

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.img == b.img; }
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.img < b.img; }

    std::string str() const {
        std::string s = "(";
        for (int i = 0; i < n(); ++i) s += (i ? "," : "") + std::to_string(img[i] + 1);
        return s + ")";
    }
};

inline std::vector<Permutation> all_permutations(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation(v));
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

inline int permutation_index(const Permutation& p) {
    // lexicographic rank of the image word
    int n = p.n();
    std::vector<int> avail(n);
    std::iota(avail.begin(), avail.end(), 0);
    long rank = 0;
    long fact = 1;
    for (int i = 2; i < n; ++i) fact *= i;  // (n-1)!
    for (int i = 0; i < n; ++i) {
        auto it = std::find(avail.begin(), avail.end(), p.img[i]);
        rank += (it - avail.begin()) * fact;
        avail.erase(it);
        if (n - 1 - i > 0) fact /= (n - 1 - i);
    }
    return (int)rank;
}

/// Koszul sign of letting σ act on a word of homogeneous factors with the
/// given degrees (factor i moves to position σ(i)):
/// (−1)^{Σ_{i<j, σ(i)>σ(j)} d_i d_j}.
inline int koszul_sign(const Permutation& s, const std::vector<int>& degrees) {
    int n = s.n();
    if ((int)degrees.size() != n) throw error("koszul_sign: size mismatch");
    int acc = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (s.img[i] > s.img[j]) acc += degrees[i] * degrees[j];
    return acc % 2 == 0 ? 1 : -1;
}

/// Left action of σ on a word: result[σ(i)] = w[i], i.e. result[j] = w[σ^{-1}(j)].
template <class T>
std::vector<T> permute_word(const Permutation& s, const std::vector<T>& w) {
    std::vector<T> out(w.size());
    for (int i = 0; i < s.n(); ++i) out[s.img[i]] = w[i];
    return out;
}

/// Strictly increasing injection ⟨s⟩ → ⟨n⟩ (0-based values).
struct MonotoneInjection {
    int n = 0;
    std::vector<int> values;  // size s, strictly increasing, within [0, n)

    MonotoneInjection() = default;
    MonotoneInjection(int target, std::vector<int> vals) : n(target), values(std::move(vals)) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] < 0 || values[i] >= n || (i > 0 && values[i] <= values[i - 1]))
                throw error("MonotoneInjection: not strictly increasing into range");
        }
    }

    int s() const { return (int)values.size(); }
    int operator()(int i) const { return values[i]; }
    bool in_image(int v) const {
        return std::binary_search(values.begin(), values.end(), v);
    }
};

inline std::vector<MonotoneInjection> all_monotone_injections(int s, int n) {
    std::vector<MonotoneInjection> out;
    std::vector<int> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    if (s > n) return out;
    while (true) {
        out.push_back(MonotoneInjection(n, idx));
        int i = s - 1;
        while (i >= 0 && idx[i] == n - s + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

/// ι_f : Σ_s → Σ_n. Fixes points outside f(⟨s⟩) and maps f(j) ↦ f(ρ(j)).
inline Permutation iota_f(const MonotoneInjection& f, const Permutation& rho) {
    if (rho.n() != f.s()) throw error("iota_f: size mismatch");
    Permutation p = Permutation::identity(f.n);
    for (int j = 0; j < f.s(); ++j) p.img[f(j)] = f(rho(j));
    return Permutation(p.img);
}

/// ρ_f : Σ_n → Σ_s, defined by ρ(i) < ρ(j) ⇔ σ(f(i)) < σ(f(j)).
inline Permutation rho_f(const MonotoneInjection& f, const Permutation& sigma) {
    if (sigma.n() != f.n) throw error("rho_f: size mismatch");
    int s = f.s();
    std::vector<int> vals(s);
    for (int i = 0; i < s; ++i) vals[i] = sigma(f(i));
    std::vector<int> rank(s);
    std::iota(rank.begin(), rank.end(), 0);
    std::sort(rank.begin(), rank.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    std::vector<int> img(s);
    for (int r = 0; r < s; ++r) img[rank[r]] = r;
    return Permutation(std::move(img));
}

inline bool in_T_f(const MonotoneInjection& f, const Permutation& sigma) {
    for (int i = 1; i < f.s(); ++i)
        if (sigma(f(i)) <= sigma(f(i - 1))) return false;
    return true;
}

/// The unique presentation σ = τ ι_f(ρ) with τ ∈ T_f, ρ ∈ Σ_s.
inline std::pair<Permutation, Permutation> factorize(const MonotoneInjection& f,
                                                     const Permutation& sigma) {
    Permutation rho = rho_f(f, sigma);
    Permutation tau = sigma.compose(iota_f(f, rho).inverse());
    if (!in_T_f(f, tau)) throw error("factorize: internal error, τ not in T_f");
    return {tau, rho};
}

/// Finitely supported element of kΣ_n.
template <class F>
struct GroupAlgebraElement {
    int n = 0;
    std::map<Permutation, F> terms;

    explicit GroupAlgebraElement(int arity = 0) : n(arity) {}

    void add(const Permutation& p, const F& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms.try_emplace(p, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    GroupAlgebraElement operator*(const GroupAlgebraElement& o) const {
        GroupAlgebraElement out(n);
        for (auto& [p, c] : terms)
            for (auto& [q, d] : o.terms) out.add(p.compose(q), c * d);
        return out;
    }
};

/// Right Σ_n-action on a complex, supplied as one chain map per adjacent
/// transposition; arbitrary permutations are composed lazily and memoized
/// (concurrent readers, exclusive fill).
template <class F>
class SigmaAction {
  public:
    SigmaAction() = default;
    SigmaAction(Complex<F> carrier, std::vector<ChainMap<F>> transposition_maps)
        : carrier_(std::move(carrier)), gens_(std::move(transposition_maps)) {
        n_ = (int)gens_.size() + 1;
    }

    static SigmaAction trivial(const Complex<F>& carrier, int n) {
        std::vector<ChainMap<F>> gens;
        for (int k = 0; k + 1 < n; ++k) gens.push_back(ChainMap<F>::id(carrier));
        return SigmaAction(carrier, std::move(gens));
    }

    int arity() const { return n_; }
    const Complex<F>& carrier() const { return carrier_; }

    /// u ↦ uσ as a chain map.
    const ChainMap<F>& act(const Permutation& s) const {
        if (s.n() != n_) throw error("SigmaAction: arity mismatch");
        std::scoped_lock lk(*mu_);
        return act_locked(s);
    }

    /// Generator maps must be involutions, satisfy the braid relations and
    /// commute with the differential.
    void validate() const {
        for (int k = 0; k + 1 < n_; ++k) {
            const ChainMap<F>& g = gens_[k];
            g.require_chain_map("SigmaAction");
            ChainMap<F> sq = g.compose(g);
            for (auto& [deg, d] : carrier_.dims)
                if (!(sq.at(deg) == Matrix<F>::identity(d)))
                    throw error("SigmaAction: generator not an involution");
        }
        for (int k = 0; k + 2 < n_; ++k) {
            ChainMap<F> aba = gens_[k].compose(gens_[k + 1]).compose(gens_[k]);
            ChainMap<F> bab = gens_[k + 1].compose(gens_[k]).compose(gens_[k + 1]);
            for (auto& [deg, d] : carrier_.dims)
                if (!(aba.at(deg) == bab.at(deg)))
                    throw error("SigmaAction: braid relation fails");
        }
        for (int k = 0; k + 1 < n_; ++k)
            for (int l = k + 2; l + 1 < n_; ++l) {
                ChainMap<F> ab = gens_[k].compose(gens_[l]);
                ChainMap<F> ba = gens_[l].compose(gens_[k]);
                for (auto& [deg, d] : carrier_.dims)
                    if (!(ab.at(deg) == ba.at(deg)))
                        throw error("SigmaAction: distant transpositions do not commute");
            }
    }

  private:
    const ChainMap<F>& act_locked(const Permutation& s) const {
        auto it = memo_.find(s);
        if (it != memo_.end()) return it->second;
        ChainMap<F> m;
        if (s.is_identity()) {
            m = ChainMap<F>::id(carrier_);
        } else {
            // find a descent: σ(k) > σ(k+1); then σ = σ' s_k with σ' shorter,
            // and A_σ = A_{s_k} A_{σ'}
            int k = -1;
            for (int i = 0; i + 1 < n_; ++i)
                if (s.img[i] > s.img[i + 1]) { k = i; break; }
            Permutation shorter = s.compose(Permutation::transposition(n_, k));
            m = gens_[k].compose(act_locked(shorter));
        }
        return memo_.emplace(s, std::move(m)).first->second;
    }

    Complex<F> carrier_;
    std::vector<ChainMap<F>> gens_;
    int n_ = 0;
    mutable std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
    mutable std::map<Permutation, ChainMap<F>> memo_;
};

/// Complex carrier ⊗ kΣ_n with basis pairs (i, σ); σ enumerated in the
/// fixed lexicographic order. Pair index = i * n! + rank(σ).
template <class F>
Complex<F> tensor_with_group_algebra(const Complex<F>& carrier, int n) {
    long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    Complex<F> c;
    for (auto& [deg, k] : carrier.dims) c.dims[deg] = (int)(k * fact);
    for (auto& [deg, k] : carrier.dims) {
        int kt = carrier.dim(deg + 1);
        if (kt == 0) continue;
        Matrix<F> m((int)(kt * fact), (int)(k * fact));
        Matrix<F> d = carrier.d(deg);
        for (int r = 0; r < kt; ++r)
            for (auto& [cc, v] : d.row(r))
                for (long g = 0; g < fact; ++g)
                    m.add_to((int)(r * fact + g), (int)(cc * fact + g), v);
        c.set_d(deg, std::move(m));
    }
    return c;
}

/// The map M ⊗ Σ_n → M ⊗ Σ_s carrying m⊗σ to mτ ⊗ ρ_f(σ), where
/// σ = τ ι_f(ρ_f(σ)) is the unique factorization. Right Σ_s-equivariant.
template <class F>
ChainMap<F> rho_f_module(const MonotoneInjection& f, const SigmaAction<F>& action) {
    if (action.arity() != f.n) throw error("rho_f_module: arity mismatch");
    action.validate();
    const Complex<F>& M = action.carrier();
    int n = f.n, s = f.s();
    Complex<F> src = tensor_with_group_algebra(M, n);
    Complex<F> tgt = tensor_with_group_algebra(M, s);
    long nfact = 1, sfact = 1;
    for (int i = 2; i <= n; ++i) nfact *= i;
    for (int i = 2; i <= s; ++i) sfact *= i;
    auto perms = all_permutations(n);
    ChainMap<F> out = ChainMap<F>::zero(src, tgt, 0);
    for (auto& [deg, k] : M.dims) {
        Matrix<F> comp(tgt.dim(deg), src.dim(deg));
        for (auto& sigma : perms) {
            auto [tau, rho] = factorize(f, sigma);
            int gsrc = permutation_index(sigma);
            int gtgt = permutation_index(rho);
            const Matrix<F>& mt = action.act(tau).at(deg);
            for (int r = 0; r < mt.rows(); ++r)
                for (auto& [cc, v] : mt.row(r))
                    comp.add_to((int)(r * sfact + gtgt), (int)(cc * nfact + gsrc), v);
        }
        out.set(deg, std::move(comp));
    }
    return out;
}

/// Closure of a generating set inside Σ_n.
inline std::set<Permutation> subgroup_closure(int n, std::vector<Permutation> gens) {
    std::set<Permutation> g;
    g.insert(Permutation::identity(n));
    for (auto& p : gens)
        if (p.n() != n) throw error("subgroup_closure: arity mismatch");
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Permutation> current(g.begin(), g.end());
        for (auto& a : current)
            for (auto& b : gens)
                if (g.insert(a.compose(b)).second) grew = true;
    }
    return g;
}

}  // namespace opalg

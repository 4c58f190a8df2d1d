#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace opalg {

struct DegreeWindow {
    int lo, hi;
    DegreeWindow(int l, int h) : lo(l), hi(h) {
        if (l > h) throw error("DegreeWindow: lo > hi");
    }
    bool contains(int n) const { return lo <= n && n <= hi; }
    /// Truncation can create or destroy homology at window edges; only the
    /// interior is ever certified.
    DegreeWindow interior() const { return DegreeWindow(lo + 1, hi - 1); }
};

/// Finitely supported cochain complex (differential raises degree by 1).
/// Basis labels and weights are optional metadata carried through the
/// constructions that preserve bases.
template <class F>
struct Complex {
    std::map<int, int> dims;                             // degree -> dim (> 0 entries only)
    std::map<int, Matrix<F>> diff;                       // d^n : C^n -> C^{n+1}
    std::map<int, std::vector<std::string>> labels;
    std::map<int, std::vector<int>> weights;

    int dim(int n) const {
        auto it = dims.find(n);
        return it == dims.end() ? 0 : it->second;
    }

    Matrix<F> d(int n) const {
        auto it = diff.find(n);
        if (it != diff.end()) return it->second;
        return Matrix<F>(dim(n + 1), dim(n));
    }

    void set_dim(int n, int k) {
        if (k > 0) dims[n] = k;
        else dims.erase(n);
    }

    void set_d(int n, Matrix<F> m) {
        if (m.rows() != dim(n + 1) || m.cols() != dim(n))
            throw error("Complex::set_d: shape mismatch at degree " + std::to_string(n));
        if (!m.is_zero()) diff[n] = std::move(m);
        else diff.erase(n);
    }

    int lowest_degree() const { return dims.empty() ? 0 : dims.begin()->first; }
    int highest_degree() const { return dims.empty() ? 0 : dims.rbegin()->first; }
    int total_dim() const {
        int t = 0;
        for (auto& [n, k] : dims) t += k;
        return t;
    }

    int weight_of(int n, int i) const {
        auto it = weights.find(n);
        if (it == weights.end()) return 0;
        return it->second[i];
    }

    std::string label_of(int n, int i) const {
        auto it = labels.find(n);
        if (it == labels.end() || i >= (int)it->second.size()) return "";
        return it->second[i];
    }

    void validate() const {
        for (auto& [n, k] : dims)
            if (k < 0) throw error("Complex: negative dimension");
        for (auto& [n, m] : diff) {
            if (m.rows() != dim(n + 1) || m.cols() != dim(n))
                throw error("Complex: differential shape mismatch at degree " + std::to_string(n));
        }
        for (auto& [n, k] : dims) {
            Matrix<F> dd = d(n + 1) * d(n);
            if (!dd.is_zero())
                throw error("Complex: d∘d != 0 at degree " + std::to_string(n));
        }
    }

    static Complex zero() { return Complex{}; }

    /// k placed in a single degree.
    static Complex point(int degree, const std::string& label = "e") {
        Complex c;
        c.dims[degree] = 1;
        c.labels[degree] = {label};
        return c;
    }

    /// k = k concentrated in degrees d, d+1 (the (H1)-style contractible
    /// two-term complex).
    static Complex contractible_pair(int degree) {
        Complex c;
        c.dims[degree] = 1;
        c.dims[degree + 1] = 1;
        Matrix<F> m(1, 1);
        m.set(0, 0, F(1));
        c.diff[degree] = m;
        return c;
    }
};

/// Graded map between complexes. degree_shift = 0 plus commuting with the
/// differentials makes it a chain map; otherwise it is a raw element of
/// CHom(X, Y).
template <class F>
struct ChainMap {
    Complex<F> source, target;
    std::map<int, Matrix<F>> components;  // at degree n: X^n -> Y^{n+shift}
    int degree_shift = 0;

    Matrix<F> at(int n) const {
        auto it = components.find(n);
        if (it != components.end()) return it->second;
        return Matrix<F>(target.dim(n + degree_shift), source.dim(n));
    }

    void set(int n, Matrix<F> m) {
        if (m.rows() != target.dim(n + degree_shift) || m.cols() != source.dim(n))
            throw error("ChainMap::set: shape mismatch at degree " + std::to_string(n));
        if (!m.is_zero()) components[n] = std::move(m);
        else components.erase(n);
    }

    static ChainMap zero(const Complex<F>& x, const Complex<F>& y, int shift = 0) {
        ChainMap f;
        f.source = x;
        f.target = y;
        f.degree_shift = shift;
        return f;
    }

    static ChainMap id(const Complex<F>& x) {
        ChainMap f = zero(x, x, 0);
        for (auto& [n, k] : x.dims) f.components[n] = Matrix<F>::identity(k);
        return f;
    }

    /// D(f) = d_Y ∘ f − (−1)^shift f ∘ d_X, the CHom differential.
    ChainMap chom_d() const {
        ChainMap g = zero(source, target, degree_shift + 1);
        F sign = (degree_shift % 2 == 0) ? F(1) : F(-1);
        for (auto& [n, k] : source.dims) {
            Matrix<F> m = target.d(n + degree_shift) * at(n) - (at(n + 1) * source.d(n)).scaled(sign);
            if (!m.is_zero()) g.components[n] = std::move(m);
        }
        return g;
    }

    bool commutes() const {
        for (auto& [n, m] : chom_d().components)
            if (!m.is_zero()) return false;
        return true;
    }

    void require_chain_map(const char* who) const {
        if (degree_shift != 0 || !commutes())
            throw error(std::string(who) + ": not a chain map");
    }

    ChainMap compose(const ChainMap& inner) const {  // (*this) ∘ inner
        ChainMap g = zero(inner.source, target, degree_shift + inner.degree_shift);
        for (auto& [n, k] : inner.source.dims) {
            Matrix<F> m = at(n + inner.degree_shift) * inner.at(n);
            if (!m.is_zero()) g.components[n] = std::move(m);
        }
        return g;
    }

    ChainMap operator+(const ChainMap& o) const { return combined(o, F(1)); }
    ChainMap operator-(const ChainMap& o) const { return combined(o, F(-1)); }

    ChainMap scaled(const F& a) const {
        ChainMap g = zero(source, target, degree_shift);
        for (auto& [n, m] : components) {
            Matrix<F> s = m.scaled(a);
            if (!s.is_zero()) g.components[n] = std::move(s);
        }
        return g;
    }

    bool is_zero_map() const {
        for (auto& [n, m] : components)
            if (!m.is_zero()) return false;
        return true;
    }

  private:
    ChainMap combined(const ChainMap& o, const F& sign) const {
        if (degree_shift != o.degree_shift)
            throw error("ChainMap: degree shift mismatch in +/-");
        ChainMap g = zero(source, target, degree_shift);
        for (auto& [n, k] : source.dims) {
            Matrix<F> m = at(n) + o.at(n).scaled(sign);
            if (!m.is_zero()) g.components[n] = std::move(m);
        }
        return g;
    }
};

/// Cone of a chain map: underlying module X[1] ⊕ Y with the standard cone
/// differential d(x, y) = (−dx, f(x) + dy). Basis order: X-part first.
template <class F>
Complex<F> cone(const ChainMap<F>& f) {
    f.require_chain_map("cone");
    const Complex<F>&X = f.source, &Y = f.target;
    Complex<F> c;
    std::map<int, int> xoff;  // offset of X-part (always 0) kept implicit
    for (int n = std::min(X.lowest_degree() - 1, Y.lowest_degree());
         n <= std::max(X.highest_degree(), Y.highest_degree()); ++n) {
        int k = X.dim(n + 1) + Y.dim(n);
        if (k > 0) c.dims[n] = k;
    }
    for (auto& [n, k] : c.dims) {
        int xs = X.dim(n + 1), ys = Y.dim(n);
        int xt = X.dim(n + 2), yt = Y.dim(n + 1);
        Matrix<F> m(xt + yt, xs + ys);
        Matrix<F> dx = X.d(n + 1), dy = Y.d(n), fm = f.at(n + 1);
        for (int r = 0; r < xt; ++r)
            for (const auto& [cc, v] : dx.row(r)) m.add_to(r, cc, -v);
        for (int r = 0; r < yt; ++r) {
            for (const auto& [cc, v] : fm.row(r)) m.add_to(xt + r, cc, v);
            for (const auto& [cc, v] : dy.row(r)) m.add_to(xt + r, xs + cc, v);
        }
        c.set_d(n, std::move(m));
        // carry labels/weights for trusted-window bookkeeping downstream
        std::vector<std::string> lab;
        std::vector<int> wt;
        for (int i = 0; i < xs; ++i) {
            lab.push_back("s[" + X.label_of(n + 1, i) + "]");
            wt.push_back(X.weight_of(n + 1, i));
        }
        for (int i = 0; i < ys; ++i) {
            lab.push_back(Y.label_of(n, i));
            wt.push_back(Y.weight_of(n, i));
        }
        c.labels[n] = std::move(lab);
        c.weights[n] = std::move(wt);
    }
    c.validate();
    return c;
}

/// shift(X, n)^d = X^{d+n}; the differential picks up (−1)^n.
template <class F>
Complex<F> shift(const Complex<F>& x, int n) {
    Complex<F> c;
    for (auto& [d, k] : x.dims) c.dims[d - n] = k;
    F sign = (n % 2 == 0) ? F(1) : F(-1);
    for (auto& [d, m] : x.diff) {
        Matrix<F> s = m.scaled(sign);
        if (!s.is_zero()) c.diff[d - n] = std::move(s);
    }
    for (auto& [d, l] : x.labels) c.labels[d - n] = l;
    for (auto& [d, w] : x.weights) c.weights[d - n] = w;
    return c;
}

/// Index bookkeeping for X ⊗ Y: at total degree n the basis is blocks of
/// pairs (i, j), X-degree p ascending, i major.
template <class F>
struct TensorIndex {
    const Complex<F>&X, &Y;
    TensorIndex(const Complex<F>& x, const Complex<F>& y) : X(x), Y(y) {}

    int block_offset(int n, int p) const {
        int off = 0;
        for (auto& [q, kx] : X.dims) {
            if (q >= p) break;
            off += kx * Y.dim(n - q);
        }
        return off;
    }
    int index(int n, int p, int i, int j) const {
        return block_offset(n, p) + i * Y.dim(n - p) + j;
    }
    int dim(int n) const {
        int t = 0;
        for (auto& [p, kx] : X.dims) t += kx * Y.dim(n - p);
        return t;
    }
};

template <class F>
Complex<F> tensor(const Complex<F>& x, const Complex<F>& y) {
    Complex<F> c;
    TensorIndex<F> ix(x, y);
    int lo = x.lowest_degree() + y.lowest_degree();
    int hi = x.highest_degree() + y.highest_degree();
    if (x.dims.empty() || y.dims.empty()) return c;
    for (int n = lo; n <= hi; ++n) {
        int k = ix.dim(n);
        if (k > 0) c.dims[n] = k;
    }
    for (auto& [n, k] : c.dims) {
        Matrix<F> m(ix.dim(n + 1), k);
        for (auto& [p, kx] : x.dims) {
            int q = n - p;
            int ky = y.dim(q);
            if (ky == 0) continue;
            Matrix<F> dx = x.d(p), dy = y.d(q);
            F sgn = (p % 2 == 0) ? F(1) : F(-1);
            for (int i = 0; i < kx; ++i)
                for (int j = 0; j < ky; ++j) {
                    int col = ix.index(n, p, i, j);
                    // dx ⊗ id
                    for (int r = 0; r < dx.rows(); ++r) {
                        const F v = dx.get(r, i);
                        if (!v.is_zero()) m.add_to(ix.index(n + 1, p + 1, r, j), col, v);
                    }
                    // (−1)^p id ⊗ dy
                    for (int r = 0; r < dy.rows(); ++r) {
                        const F v = dy.get(r, j);
                        if (!v.is_zero()) m.add_to(ix.index(n + 1, p, i, r), col, sgn * v);
                    }
                }
        }
        c.set_d(n, std::move(m));
        std::vector<std::string> lab;
        std::vector<int> wt;
        for (auto& [p, kx] : x.dims) {
            int ky = y.dim(n - p);
            for (int i = 0; i < kx && ky > 0; ++i)
                for (int j = 0; j < ky; ++j) {
                    lab.push_back(x.label_of(p, i) + "⊗" + y.label_of(n - p, j));
                    wt.push_back(x.weight_of(p, i) + y.weight_of(n - p, j));
                }
        }
        c.labels[n] = std::move(lab);
        c.weights[n] = std::move(wt);
    }
    c.validate();
    return c;
}

/// Index bookkeeping for CHom(X, Y): degree-n basis elements E_{p,i,j} send
/// the i-th basis vector of X^p to the j-th basis vector of Y^{p+n};
/// ordered p ascending, i major, j minor.
template <class F>
struct ChomIndex {
    const Complex<F>&X, &Y;
    int n;
    ChomIndex(const Complex<F>& x, const Complex<F>& y, int deg) : X(x), Y(y), n(deg) {}

    int dim() const {
        int t = 0;
        for (auto& [p, kx] : X.dims) t += kx * Y.dim(p + n);
        return t;
    }
    int index(int p, int i, int j) const {
        int off = 0;
        for (auto& [q, kx] : X.dims) {
            if (q >= p) break;
            off += kx * Y.dim(q + n);
        }
        return off + i * Y.dim(p + n) + j;
    }
};

template <class F>
Complex<F> chom(const Complex<F>& x, const Complex<F>& y) {
    Complex<F> c;
    if (x.dims.empty() || y.dims.empty()) return c;
    int lo = y.lowest_degree() - x.highest_degree();
    int hi = y.highest_degree() - x.lowest_degree();
    for (int n = lo; n <= hi; ++n) {
        int k = ChomIndex<F>(x, y, n).dim();
        if (k > 0) c.dims[n] = k;
    }
    for (auto& [n, k] : c.dims) {
        ChomIndex<F> src(x, y, n), tgt(x, y, n + 1);
        Matrix<F> m(tgt.dim(), k);
        F sgn = (n % 2 == 0) ? F(-1) : F(1);  // −(−1)^n
        for (auto& [p, kx] : x.dims) {
            int ky = y.dim(p + n);
            if (ky == 0) continue;
            Matrix<F> dy = y.d(p + n);
            Matrix<F> dxm = x.d(p - 1);  // X^{p-1} -> X^p
            for (int i = 0; i < kx; ++i)
                for (int j = 0; j < ky; ++j) {
                    int col = src.index(p, i, j);
                    // d_Y ∘ f : E_{p,i,j} -> sum_r dy[r][j] E_{p,i,r}
                    for (int r = 0; r < dy.rows(); ++r) {
                        const F v = dy.get(r, j);
                        if (!v.is_zero()) m.add_to(tgt.index(p, i, r), col, v);
                    }
                    // −(−1)^n f ∘ d_X : contributes at source degree p−1
                    if (x.dim(p - 1) > 0 && y.dim(p + n) > 0) {
                        for (int s = 0; s < dxm.cols(); ++s) {
                            const F v = dxm.get(i, s);
                            if (!v.is_zero()) m.add_to(tgt.index(p - 1, s, j), col, sgn * v);
                        }
                    }
                }
        }
        c.set_d(n, std::move(m));
    }
    c.validate();
    return c;
}

template <class F>
struct HomologyAt {
    int betti = 0;
    std::vector<Vec<F>> basis;  // cycle representatives, independent in homology
};

template <class F>
std::map<int, HomologyAt<F>> homology(const Complex<F>& x, const DegreeWindow& w) {
    std::map<int, HomologyAt<F>> out;
    for (int n = w.lo; n <= w.hi; ++n) {
        HomologyAt<F> h;
        int k = x.dim(n);
        if (k == 0) { out[n] = h; continue; }
        auto kr = rref(x.d(n));
        RowSpace<F> bd(k);
        if (x.dim(n - 1) > 0) {
            Matrix<F> prev = x.d(n - 1);
            for (int c = 0; c < prev.cols(); ++c) bd.add(prev.column(c));
        }
        for (auto& z : kr.kernel_basis) {
            Vec<F> r = bd.reduce(z);
            if (!is_zero_vec(r)) {
                bd.add(r);
                h.basis.push_back(z);
            }
        }
        h.betti = (int)h.basis.size();
        out[n] = h;
    }
    return out;
}

template <class F>
int betti(const Complex<F>& x, int n) {
    auto h = homology(x, DegreeWindow(n, n));
    return h[n].betti;
}

/// Trusted homology of a weight-truncated complex: cycles restricted to
/// basis weight <= wstar, killed by all boundaries of the truncation.
/// Sound for complexes truncated at weight wstar + J where J bounds the
/// weight jump of d.
template <class F>
std::map<int, HomologyAt<F>> homology_trusted(const Complex<F>& x, const DegreeWindow& w,
                                              int wstar) {
    std::map<int, HomologyAt<F>> out;
    for (int n = w.lo; n <= w.hi; ++n) {
        HomologyAt<F> h;
        int k = x.dim(n);
        if (k == 0) { out[n] = h; continue; }
        std::vector<int> low;  // indices with weight <= wstar
        for (int i = 0; i < k; ++i)
            if (x.weight_of(n, i) <= wstar) low.push_back(i);
        if (low.empty()) { out[n] = h; continue; }
        // cycles supported on the low-weight columns
        Matrix<F> dn = x.d(n);
        Matrix<F> sub(dn.rows(), (int)low.size());
        for (int c = 0; c < (int)low.size(); ++c) sub.set_column(c, dn.column(low[c]));
        auto kr = rref(sub);
        RowSpace<F> bd(k);
        if (x.dim(n - 1) > 0) {
            Matrix<F> prev = x.d(n - 1);
            for (int c = 0; c < prev.cols(); ++c) bd.add(prev.column(c));
        }
        for (auto& zs : kr.kernel_basis) {
            Vec<F> z(k, F());
            for (int c = 0; c < (int)low.size(); ++c) z[low[c]] = zs[c];
            Vec<F> r = bd.reduce(z);
            if (!is_zero_vec(r)) {
                bd.add(r);
                h.basis.push_back(z);
            }
        }
        h.betti = (int)h.basis.size();
        out[n] = h;
    }
    return out;
}

struct QuasiIsoCertificate {
    bool verdict = false;
    int trusted_lo = 0, trusted_hi = 0;   // degrees in which the verdict holds
    std::map<int, int> cone_betti;        // evidence
    std::string detail;
};

/// f is certified a quasi-isomorphism on [lo+1, hi-1] iff cone(f) has zero
/// homology there. Boundary degrees of the window are never trusted.
template <class F>
QuasiIsoCertificate is_quasi_iso(const ChainMap<F>& f, const DegreeWindow& w) {
    f.require_chain_map("is_quasi_iso");
    Complex<F> c = cone(f);
    QuasiIsoCertificate cert;
    cert.trusted_lo = w.lo + 1;
    cert.trusted_hi = w.hi - 1;
    cert.verdict = true;
    for (int n = cert.trusted_lo; n <= cert.trusted_hi; ++n) {
        int b = betti(c, n);
        cert.cone_betti[n] = b;
        if (b != 0) {
            cert.verdict = false;
            cert.detail = "cone homology nonzero in degree " + std::to_string(n);
        }
    }
    return cert;
}

/// Trusted-weight variant for weight-truncated complexes.
template <class F>
QuasiIsoCertificate is_quasi_iso_trusted(const ChainMap<F>& f, const DegreeWindow& w,
                                         int wstar) {
    f.require_chain_map("is_quasi_iso");
    Complex<F> c = cone(f);
    QuasiIsoCertificate cert;
    cert.trusted_lo = w.lo + 1;
    cert.trusted_hi = w.hi - 1;
    cert.verdict = true;
    auto hh = homology_trusted(c, DegreeWindow(cert.trusted_lo, cert.trusted_hi), wstar);
    for (auto& [n, h] : hh) {
        cert.cone_betti[n] = h.betti;
        if (h.betti != 0) {
            cert.verdict = false;
            cert.detail = "cone homology nonzero in degree " + std::to_string(n) +
                          " (weight <= " + std::to_string(wstar) + ")";
        }
    }
    return cert;
}

/// Find h of degree −1 with D(h) = d∘h + h∘d = f − g, exactly; nullopt when
/// the linear system has no solution on the given support.
template <class F>
std::optional<ChainMap<F>> find_homotopy(const ChainMap<F>& f, const ChainMap<F>& g) {
    f.require_chain_map("find_homotopy");
    g.require_chain_map("find_homotopy");
    const Complex<F>&X = f.source, &Y = f.target;
    ChainMap<F> rhs = f - g;

    // unknowns: entries of H^p : X^p -> Y^{p-1}
    std::vector<std::tuple<int, int, int>> vars;  // (p, row in Y^{p-1}, col in X^p)
    std::map<std::tuple<int, int, int>, int> var_id;
    for (auto& [p, kx] : X.dims) {
        int ky = Y.dim(p - 1);
        for (int i = 0; i < kx; ++i)
            for (int j = 0; j < ky; ++j) {
                var_id[{p, j, i}] = (int)vars.size();
                vars.push_back({p, j, i});
            }
    }
    // equations: per degree p, per (row r of Y^p, col i of X^p):
    //   (d_Y H^p)[r][i] + (H^{p+1} d_X)[r][i] = rhs[r][i]
    std::vector<std::tuple<int, int, int>> eqs;
    for (auto& [p, kx] : X.dims) {
        int ky = Y.dim(p);
        for (int r = 0; r < ky; ++r)
            for (int i = 0; i < kx; ++i) eqs.push_back({p, r, i});
    }
    Matrix<F> sys((int)eqs.size(), (int)vars.size());
    Vec<F> b((int)eqs.size(), F());
    for (int e = 0; e < (int)eqs.size(); ++e) {
        auto [p, r, i] = eqs[e];
        b[e] = rhs.at(p).get(r, i);
        Matrix<F> dy = Y.d(p - 1);
        for (int j = 0; j < Y.dim(p - 1); ++j) {
            const F v = dy.get(r, j);
            if (!v.is_zero()) sys.add_to(e, var_id[{p, j, i}], v);
        }
        Matrix<F> dx = X.d(p);
        if (X.dim(p + 1) > 0 && Y.dim(p) > 0) {
            for (int s = 0; s < X.dim(p + 1); ++s) {
                const F v = dx.get(s, i);
                if (!v.is_zero()) {
                    auto it = var_id.find({p + 1, r, s});
                    if (it != var_id.end()) sys.add_to(e, it->second, v);
                    else if (!v.is_zero() && Y.dim(p) > 0) {
                        // variable absent means H^{p+1} row dim 0; coefficient
                        // multiplies a forced-zero unknown: nothing to add
                    }
                }
            }
        }
    }
    auto sol = solve(sys, b);
    if (!sol) return std::nullopt;
    ChainMap<F> h = ChainMap<F>::zero(X, Y, -1);
    for (auto& [p, kx] : X.dims) {
        int ky = Y.dim(p - 1);
        if (ky == 0) continue;
        Matrix<F> m(ky, kx);
        for (int i = 0; i < kx; ++i)
            for (int j = 0; j < ky; ++j) m.set(j, i, (*sol)[var_id[{p, j, i}]]);
        if (!m.is_zero()) h.components[p] = std::move(m);
    }
    return h;
}

/// Euler characteristic over a window (cross-check for homology).
template <class F>
long euler_characteristic(const Complex<F>& x, const DegreeWindow& w) {
    long chi = 0;
    for (int n = w.lo; n <= w.hi; ++n) chi += (n % 2 == 0 ? 1 : -1) * (long)x.dim(n);
    return chi;
}

template <class F>
Complex<F> direct_sum(const Complex<F>& x, const Complex<F>& y) {
    Complex<F> c;
    for (int n = std::min(x.lowest_degree(), y.lowest_degree());
         n <= std::max(x.highest_degree(), y.highest_degree()); ++n) {
        int k = x.dim(n) + y.dim(n);
        if (k > 0) c.dims[n] = k;
    }
    for (auto& [n, k] : c.dims) {
        Matrix<F> m(x.dim(n + 1) + y.dim(n + 1), k);
        Matrix<F> dx = x.d(n), dy = y.d(n);
        for (int r = 0; r < dx.rows(); ++r)
            for (auto& [cc, v] : dx.row(r)) m.add_to(r, cc, v);
        for (int r = 0; r < dy.rows(); ++r)
            for (auto& [cc, v] : dy.row(r)) m.add_to(x.dim(n + 1) + r, x.dim(n) + cc, v);
        c.set_d(n, std::move(m));
        std::vector<std::string> lab;
        std::vector<int> wt;
        for (int i = 0; i < x.dim(n); ++i) { lab.push_back(x.label_of(n, i)); wt.push_back(x.weight_of(n, i)); }
        for (int i = 0; i < y.dim(n); ++i) { lab.push_back(y.label_of(n, i)); wt.push_back(y.weight_of(n, i)); }
        c.labels[n] = std::move(lab);
        c.weights[n] = std::move(wt);
    }
    return c;
}

}  // namespace opalg

#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "field.hpp"

namespace opalg {

template <class F>
using Vec = std::vector<F>;

template <class F>
inline Vec<F> zero_vec(int n) { return Vec<F>(n, F()); }

template <class F>
inline bool is_zero_vec(const Vec<F>& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

template <class F>
inline Vec<F>& axpy(Vec<F>& y, const F& a, const Vec<F>& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!x[i].is_zero()) y[i] += a * x[i];
    }
    return y;
}

/// Sparse exact matrix, rows stored as sorted (col, value) pairs with no
/// explicit zeros. Rows index the target, columns the source: a map
/// X -> Y with dim X = cols, dim Y = rows, acting on column vectors.
template <class F>
class Matrix {
  public:
    using Row = std::vector<std::pair<int, F>>;

    Matrix() = default;
    Matrix(int rows, int cols) : nrows_(rows), ncols_(cols), rows_(rows) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.rows_[i].push_back({i, F(1)});
        return m;
    }

    int rows() const { return nrows_; }
    int cols() const { return ncols_; }
    const Row& row(int r) const { return rows_[r]; }

    void set(int r, int c, const F& v) {
        check_index(r, c);
        Row& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const std::pair<int, F>& e, int col) { return e.first < col; });
        if (it != row.end() && it->first == c) {
            if (v.is_zero()) row.erase(it);
            else it->second = v;
        } else if (!v.is_zero()) {
            row.insert(it, {c, v});
        }
    }

    void add_to(int r, int c, const F& v) {
        if (v.is_zero()) return;
        check_index(r, c);
        Row& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const std::pair<int, F>& e, int col) { return e.first < col; });
        if (it != row.end() && it->first == c) {
            it->second += v;
            if (it->second.is_zero()) row.erase(it);
        } else {
            row.insert(it, {c, v});
        }
    }

    F get(int r, int c) const {
        check_index(r, c);
        const Row& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const std::pair<int, F>& e, int col) { return e.first < col; });
        if (it != row.end() && it->first == c) return it->second;
        return F();
    }

    bool is_zero() const {
        for (const auto& r : rows_)
            if (!r.empty()) return false;
        return true;
    }

    Vec<F> apply(const Vec<F>& x) const {
        if ((int)x.size() != ncols_) throw error("Matrix::apply: dimension mismatch");
        Vec<F> y(nrows_, F());
        for (int r = 0; r < nrows_; ++r) {
            F acc{};
            for (const auto& [c, v] : rows_[r])
                if (!x[c].is_zero()) acc += v * x[c];
            y[r] = acc;
        }
        return y;
    }

    Matrix operator*(const Matrix& o) const {
        if (ncols_ != o.nrows_) throw error("Matrix::operator*: dimension mismatch");
        Matrix out(nrows_, o.ncols_);
        for (int r = 0; r < nrows_; ++r) {
            // accumulate sparse row: this row times o
            std::vector<F> acc(o.ncols_, F());
            std::vector<bool> used(o.ncols_, false);
            for (const auto& [k, v] : rows_[r]) {
                for (const auto& [c, w] : o.rows_[k]) {
                    acc[c] += v * w;
                    used[c] = true;
                }
            }
            for (int c = 0; c < o.ncols_; ++c)
                if (used[c] && !acc[c].is_zero()) out.rows_[r].push_back({c, acc[c]});
        }
        return out;
    }

    Matrix operator+(const Matrix& o) const { return combined(o, F(1)); }
    Matrix operator-(const Matrix& o) const { return combined(o, F(-1)); }

    Matrix scaled(const F& a) const {
        Matrix out(nrows_, ncols_);
        if (a.is_zero()) return out;
        for (int r = 0; r < nrows_; ++r)
            for (const auto& [c, v] : rows_[r]) out.rows_[r].push_back({c, a * v});
        return out;
    }

    Matrix transpose() const {
        Matrix out(ncols_, nrows_);
        for (int r = 0; r < nrows_; ++r)
            for (const auto& [c, v] : rows_[r]) out.rows_[c].push_back({r, v});
        for (auto& row : out.rows_)
            std::sort(row.begin(), row.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.nrows_ == b.nrows_ && a.ncols_ == b.ncols_ && a.rows_ == b.rows_;
    }

    void set_column(int c, const Vec<F>& v) {
        if ((int)v.size() != nrows_) throw error("Matrix::set_column: dimension mismatch");
        for (int r = 0; r < nrows_; ++r) set(r, c, v[r]);
    }

    Vec<F> column(int c) const {
        Vec<F> v(nrows_, F());
        for (int r = 0; r < nrows_; ++r) v[r] = get(r, c);
        return v;
    }

  private:
    void check_index(int r, int c) const {
        if (r < 0 || r >= nrows_ || c < 0 || c >= ncols_)
            throw error("Matrix: index out of range");
    }

    Matrix combined(const Matrix& o, const F& sign) const {
        if (nrows_ != o.nrows_ || ncols_ != o.ncols_)
            throw error("Matrix: shape mismatch in +/-");
        Matrix out(nrows_, ncols_);
        for (int r = 0; r < nrows_; ++r) {
            for (const auto& [c, v] : rows_[r]) out.add_to(r, c, v);
            for (const auto& [c, v] : o.rows_[r]) out.add_to(r, c, sign * v);
        }
        return out;
    }

    int nrows_ = 0, ncols_ = 0;
    std::vector<Row> rows_;
};

/// Incrementally row-reduced subspace of F^n. Deterministic: pivots are the
/// first nonzero coordinate of each reduced vector, rows kept fully reduced
/// against each other.
template <class F>
class RowSpace {
  public:
    explicit RowSpace(int dim = 0) : dim_(dim) {}

    int dim() const { return dim_; }
    int rank() const { return (int)rows_.size(); }

    /// Reduce v against the current basis (returns the remainder).
    Vec<F> reduce(Vec<F> v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const F& c = v[pivots_[i]];
            if (!c.is_zero()) axpy(v, -c, rows_[i]);
        }
        return v;
    }

    /// Insert v; returns true when the span grew.
    bool add(Vec<F> v) {
        v = reduce(std::move(v));
        int p = -1;
        for (int i = 0; i < (int)v.size(); ++i)
            if (!v[i].is_zero()) { p = i; break; }
        if (p < 0) return false;
        F inv = v[p].inverse();
        for (auto& x : v) x *= inv;
        // back-substitute into existing rows
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const F& c = rows_[i][p];
            if (!c.is_zero()) axpy(rows_[i], -c, v);
        }
        // keep rows ordered by pivot
        auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
        std::size_t pos = it - pivots_.begin();
        pivots_.insert(it, p);
        rows_.insert(rows_.begin() + pos, std::move(v));
        return true;
    }

    bool contains(const Vec<F>& v) const { return is_zero_vec(reduce(v)); }

    const std::vector<Vec<F>>& basis() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

  private:
    int dim_;
    std::vector<Vec<F>> rows_;       // reduced echelon rows, unit pivots
    std::vector<int> pivots_;        // increasing
};

template <class F>
struct RrefResult {
    int rank = 0;
    std::vector<int> pivot_cols;          // increasing
    std::vector<Vec<F>> kernel_basis;     // vectors in F^cols with m v = 0
    std::vector<Vec<F>> image_basis;      // pivot columns of the input
};

/// Row reduction with deterministic pivoting: columns scanned left to
/// right, first nonzero row below the current one is the pivot.
template <class F>
RrefResult<F> rref(const Matrix<F>& m) {
    int nr = m.rows(), nc = m.cols();
    // dense working rows (desk-scale dimensions)
    std::vector<Vec<F>> a(nr, Vec<F>(nc, F()));
    for (int r = 0; r < nr; ++r)
        for (const auto& [c, v] : m.row(r)) a[r][c] = v;

    RrefResult<F> out;
    int row = 0;
    for (int col = 0; col < nc && row < nr; ++col) {
        int sel = -1;
        for (int r = row; r < nr; ++r)
            if (!a[r][col].is_zero()) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(a[row], a[sel]);
        F inv = a[row][col].inverse();
        for (auto& x : a[row]) x *= inv;
        for (int r = 0; r < nr; ++r) {
            if (r == row) continue;
            const F& c = a[r][col];
            if (!c.is_zero()) axpy(a[r], -c, a[row]);
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    out.rank = (int)out.pivot_cols.size();

    // kernel: one vector per free column
    std::vector<int> pivot_of_col(nc, -1);
    for (int i = 0; i < out.rank; ++i) pivot_of_col[out.pivot_cols[i]] = i;
    for (int col = 0; col < nc; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        Vec<F> v(nc, F());
        v[col] = F(1);
        for (int i = 0; i < out.rank; ++i) {
            const F& c = a[i][col];
            if (!c.is_zero()) v[out.pivot_cols[i]] = -c;
        }
        out.kernel_basis.push_back(std::move(v));
    }

    for (int col : out.pivot_cols) out.image_basis.push_back(m.column(col));
    return out;
}

template <class F>
inline int rank(const Matrix<F>& m) { return rref(m).rank; }

/// Exact solve m x = b; empty when b is outside the column space.
template <class F>
std::optional<Vec<F>> solve(const Matrix<F>& m, const Vec<F>& b) {
    if ((int)b.size() != m.rows()) throw error("solve: dimension mismatch");
    int nr = m.rows(), nc = m.cols();
    std::vector<Vec<F>> a(nr, Vec<F>(nc + 1, F()));
    for (int r = 0; r < nr; ++r) {
        for (const auto& [c, v] : m.row(r)) a[r][c] = v;
        a[r][nc] = b[r];
    }
    std::vector<int> pivot_cols;
    int row = 0;
    for (int col = 0; col < nc && row < nr; ++col) {
        int sel = -1;
        for (int r = row; r < nr; ++r)
            if (!a[r][col].is_zero()) { sel = r; break; }
        if (sel < 0) continue;
        std::swap(a[row], a[sel]);
        F inv = a[row][col].inverse();
        for (auto& x : a[row]) x *= inv;
        for (int r = 0; r < nr; ++r) {
            if (r == row) continue;
            const F& c = a[r][col];
            if (!c.is_zero()) axpy(a[r], -c, a[row]);
        }
        pivot_cols.push_back(col);
        ++row;
    }
    // inconsistent iff a reduced row is (0,...,0 | nonzero)
    for (int r = row; r < nr; ++r)
        if (!a[r][nc].is_zero()) return std::nullopt;
    Vec<F> x(nc, F());
    for (int i = 0; i < (int)pivot_cols.size(); ++i) x[pivot_cols[i]] = a[i][nc];
    return x;
}

/// Solve with several right-hand sides at once; nullopt if any fails.
template <class F>
std::optional<Matrix<F>> solve_matrix(const Matrix<F>& m, const Matrix<F>& rhs) {
    if (rhs.rows() != m.rows()) throw error("solve_matrix: dimension mismatch");
    Matrix<F> x(m.cols(), rhs.cols());
    for (int c = 0; c < rhs.cols(); ++c) {
        auto col = solve(m, rhs.column(c));
        if (!col) return std::nullopt;
        x.set_column(c, *col);
    }
    return x;
}

/// Matrix whose columns are the given vectors.
template <class F>
Matrix<F> from_columns(int dim, const std::vector<Vec<F>>& cols) {
    Matrix<F> m(dim, (int)cols.size());
    for (int c = 0; c < (int)cols.size(); ++c) m.set_column(c, cols[c]);
    return m;
}

}  // namespace opalg

#pragma once

// Dense exact linear algebra over a Field context: matrices, incremental
// reduced row echelon forms, null spaces and quotient coordinates.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace curvedual {

template <Field F>
using Vec = std::vector<Scalar<F>>;

template <Field F>
Vec<F> zero_vec(const F& field, std::size_t n)
{
    return Vec<F>(n, field.zero());
}

template <Field F>
bool is_zero_vec(const F& field, const Vec<F>& v)
{
    return std::all_of(v.begin(), v.end(), [&](const auto& x) { return field.is_zero(x); });
}

// v -= c * w
template <Field F>
void axpy_sub(const F& field, Vec<F>& v, const Scalar<F>& c, const Vec<F>& w)
{
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!field.is_zero(w[i])) field.sub_mul(v[i], c, w[i]);
}

template <Field F>
class Matrix {
public:
    using S = Scalar<F>;

    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, field_.zero())
    {
    }

    static Matrix identity(const F& field, std::size_t n)
    {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
        return m;
    }

    static Matrix from_columns(const F& field, std::size_t rows, const std::vector<Vec<F>>& cols)
    {
        Matrix m(field, rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    S& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    Vec<F> row(std::size_t i) const { return Vec<F>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }
    Vec<F> column(std::size_t j) const
    {
        Vec<F> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }

    Matrix transpose() const
    {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& b) const
    {
        if (cols_ != b.rows_) fail(ErrorKind::InvalidArgument, "matrix shape mismatch in product");
        Matrix c(field_, rows_, b.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const S& aik = (*this)(i, k);
                if (field_.is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (!field_.is_zero(b(k, j))) c(i, j) = field_.add(c(i, j), field_.mul(aik, b(k, j)));
            }
        return c;
    }

    Vec<F> apply(const Vec<F>& v) const
    {
        Vec<F> out = zero_vec(field_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!field_.is_zero((*this)(i, j)) && !field_.is_zero(v[j]))
                    out[i] = field_.add(out[i], field_.mul((*this)(i, j), v[j]));
        return out;
    }

    Matrix operator+(const Matrix& b) const
    {
        Matrix c = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] = field_.add(a_[i], b.a_[i]);
        return c;
    }

    Matrix operator-(const Matrix& b) const
    {
        Matrix c = *this;
        for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] = field_.sub(a_[i], b.a_[i]);
        return c;
    }

    Matrix scaled(const S& s) const
    {
        Matrix c = *this;
        for (auto& x : c.a_) x = field_.mul(x, s);
        return c;
    }

    bool is_zero() const
    {
        return std::all_of(a_.begin(), a_.end(), [&](const S& x) { return field_.is_zero(x); });
    }

    bool operator==(const Matrix& b) const
    {
        if (rows_ != b.rows_ || cols_ != b.cols_) return false;
        for (std::size_t i = 0; i < a_.size(); ++i)
            if (!field_.equal(a_[i], b.a_[i])) return false;
        return true;
    }

    /// Entries in row-major order, for use as an unknown vector.
    const std::vector<S>& data() const { return a_; }
    static Matrix from_data(const F& field, std::size_t rows, std::size_t cols, std::vector<S> data)
    {
        Matrix m(field, rows, cols);
        m.a_ = std::move(data);
        return m;
    }

    std::size_t rank() const;
    bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }

    /// Basis of {x : A x = 0}.
    std::vector<Vec<F>> kernel() const;

private:
    F field_;
    std::size_t rows_, cols_;
    std::vector<S> a_;
};

/// Incrementally maintained reduced row echelon form of a subspace of F^n.
/// When pivot_limit < n, pivots are only taken among the first pivot_limit
/// columns; the remaining columns are carried along as a tag, which lets a
/// reduction report the coefficients of a combination.
template <Field F>
class Echelon {
public:
    using S = Scalar<F>;

    Echelon(F field, std::size_t cols) : Echelon(std::move(field), cols, cols) {}
    Echelon(F field, std::size_t cols, std::size_t pivot_limit)
        : field_(std::move(field)), cols_(cols), limit_(pivot_limit), pivot_row_(pivot_limit, npos)
    {
    }

    const F& field() const { return field_; }
    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<Vec<F>>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }
    bool is_pivot(std::size_t c) const { return c < limit_ && pivot_row_[c] != npos; }

    /// Subtract pivot rows until v vanishes on every pivot column.
    void reduce(Vec<F>& v) const
    {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const S c = v[pivots_[r]];
            if (!field_.is_zero(c)) axpy_sub(field_, v, c, rows_[r]);
        }
    }

    bool contains(Vec<F> v) const
    {
        reduce(v);
        for (std::size_t c = 0; c < limit_; ++c)
            if (!field_.is_zero(v[c])) return false;
        return true;
    }

    /// Returns true iff v was independent of the current rows (restricted to
    /// the pivot columns).
    bool insert(Vec<F> v)
    {
        reduce(v);
        std::size_t lead = npos;
        for (std::size_t c = 0; c < limit_; ++c)
            if (!field_.is_zero(v[c])) {
                lead = c;
                break;
            }
        if (lead == npos) return false;
        const S inv = field_.inv(v[lead]);
        for (auto& x : v)
            if (!field_.is_zero(x)) x = field_.mul(x, inv);
        for (auto& row : rows_) {
            const S c = row[lead];
            if (!field_.is_zero(c)) axpy_sub(field_, row, c, v);
        }
        auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), lead) - pivots_.begin();
        pivots_.insert(pivots_.begin() + pos, lead);
        rows_.insert(rows_.begin() + pos, std::move(v));
        for (std::size_t r = 0; r < pivots_.size(); ++r) pivot_row_[pivots_[r]] = r;
        return true;
    }

    std::vector<std::size_t> free_columns() const
    {
        std::vector<std::size_t> out;
        for (std::size_t c = 0; c < limit_; ++c)
            if (pivot_row_[c] == npos) out.push_back(c);
        return out;
    }

    /// Null space of the rows viewed as linear equations on F^limit.
    std::vector<Vec<F>> null_space() const
    {
        std::vector<Vec<F>> out;
        for (std::size_t f : free_columns()) {
            Vec<F> x = zero_vec(field_, limit_);
            x[f] = field_.one();
            for (std::size_t r = 0; r < rows_.size(); ++r) x[pivots_[r]] = field_.neg(rows_[r][f]);
            out.push_back(std::move(x));
        }
        return out;
    }

    bool operator==(const Echelon& o) const
    {
        if (cols_ != o.cols_ || pivots_ != o.pivots_) return false;
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (!field_.equal(rows_[r][c], o.rows_[r][c])) return false;
        return true;
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    F field_;
    std::size_t cols_;
    std::size_t limit_;
    std::vector<Vec<F>> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<std::size_t> pivot_row_;
};

template <Field F>
std::size_t Matrix<F>::rank() const
{
    Echelon<F> e(field_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) e.insert(row(i));
    return e.rank();
}

template <Field F>
std::vector<Vec<F>> Matrix<F>::kernel() const
{
    Echelon<F> e(field_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) e.insert(row(i));
    return e.null_space();
}

/// Coordinates in a quotient V/N with respect to chosen lifts l_1..l_k.
/// Throws NotContained-style errors through the optional when the vector is
/// not in span(N, lifts).
template <Field F>
class QuotientCoordinates {
public:
    QuotientCoordinates(const F& field, std::size_t dim, const std::vector<Vec<F>>& sub,
                        const std::vector<Vec<F>>& lifts)
        : field_(field), dim_(dim), k_(lifts.size()), ech_(field, dim + lifts.size(), dim)
    {
        for (const auto& n : sub) {
            Vec<F> row = n;
            row.resize(dim_ + k_, field_.zero());
            ech_.insert(std::move(row));
        }
        sub_rank_ = ech_.rank();
        for (std::size_t j = 0; j < k_; ++j) {
            Vec<F> row = lifts[j];
            row.resize(dim_ + k_, field_.zero());
            row[dim_ + j] = field_.one();
            if (!ech_.insert(std::move(row)))
                fail(ErrorKind::InvalidArgument, "quotient lifts are dependent modulo the submodule");
        }
    }

    std::size_t quotient_dim() const { return k_; }

    std::optional<Vec<F>> coordinates(const Vec<F>& v) const
    {
        Vec<F> row = v;
        row.resize(dim_ + k_, field_.zero());
        ech_.reduce(row);
        for (std::size_t c = 0; c < dim_; ++c)
            if (!field_.is_zero(row[c])) return std::nullopt;
        Vec<F> out(row.begin() + static_cast<std::ptrdiff_t>(dim_), row.end());
        for (auto& x : out) x = field_.neg(x);
        return out;
    }

private:
    F field_;
    std::size_t dim_, k_;
    std::size_t sub_rank_ = 0;
    Echelon<F> ech_;
};

/// Basis vectors picked greedily from candidates that are independent of sub
/// and of each other: a complement of span(sub) inside span(sub, candidates).
template <Field F>
std::vector<Vec<F>> complement_basis(const F& field, std::size_t dim, const std::vector<Vec<F>>& sub,
                                     const std::vector<Vec<F>>& candidates)
{
    Echelon<F> e(field, dim);
    for (const auto& v : sub) e.insert(v);
    std::vector<Vec<F>> out;
    for (const auto& v : candidates)
        if (e.insert(v)) out.push_back(v);
    return out;
}

} // namespace curvedual

#pragma once
// Dense exact linear algebra over a prime field GF(p), p < 256.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "errors.hpp"

namespace endsbench {

using FpVector = std::vector<std::uint8_t>;

inline int mod_pow(int base, int exp, int p)
{
    long long r = 1, b = base % p;
    while (exp > 0) {
        if (exp & 1) r = r * b % p;
        b = b * b % p;
        exp >>= 1;
    }
    return static_cast<int>(r);
}

/// Inverse of a nonzero residue via Fermat's little theorem.
inline int mod_inverse(int a, int p) { return mod_pow(a, p - 2, p); }

inline int mod_reduce(long long a, int p)
{
    long long r = a % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

namespace detail {

// dst[i] = dst[i] + f * src[i] (mod p) over a contiguous range
inline void axpy(std::uint8_t* dst, const std::uint8_t* src, std::size_t n, int f, int p)
{
    if (f == 0) return;
    if (p == 2) {
        for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
    } else if (p == 3) {
        for (std::size_t i = 0; i < n; ++i) {
            int t = dst[i] + f * src[i];
            t -= 3 * (t >= 3);
            t -= 3 * (t >= 3);
            dst[i] = static_cast<std::uint8_t>(t);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            dst[i] = static_cast<std::uint8_t>((dst[i] + f * src[i]) % p);
    }
}

inline void scale(std::uint8_t* row, std::size_t n, int f, int p)
{
    if (f == 1) return;
    for (std::size_t i = 0; i < n; ++i) row[i] = static_cast<std::uint8_t>(row[i] * f % p);
}

} // namespace detail

class FpMatrix {
public:
    FpMatrix() = default;
    FpMatrix(std::size_t rows, std::size_t cols, int prime)
        : rows_(rows), cols_(cols), prime_(prime), data_(rows * cols, 0)
    {
        if (prime < 2 || prime > 251) throw SpecError("FpMatrix: prime out of range");
    }

    static FpMatrix identity(std::size_t n, int prime)
    {
        FpMatrix m(n, n, prime);
        for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
        return m;
    }

    static FpMatrix from_rows(const std::vector<std::vector<int>>& rows, int prime)
    {
        const std::size_t c = rows.empty() ? 0 : rows.front().size();
        FpMatrix m(rows.size(), c, prime);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c) throw DimensionMismatch("from_rows: ragged input");
            for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    int prime() const { return prime_; }

    std::uint8_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, long long v)
    {
        data_[r * cols_ + c] = static_cast<std::uint8_t>(mod_reduce(v, prime_));
    }
    void add(std::size_t r, std::size_t c, long long v)
    {
        set(r, c, static_cast<long long>(data_[r * cols_ + c]) + v);
    }

    std::span<std::uint8_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const std::uint8_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    void append_row(std::span<const std::uint8_t> v)
    {
        if (v.size() != cols_) throw DimensionMismatch("append_row: width mismatch");
        data_.insert(data_.end(), v.begin(), v.end());
        ++rows_;
    }

    void truncate_rows(std::size_t n)
    {
        rows_ = std::min(rows_, n);
        data_.resize(rows_ * cols_);
    }

    FpMatrix transpose() const
    {
        FpMatrix t(cols_, rows_, prime_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = data_[i * cols_ + j];
        return t;
    }

    FpMatrix operator*(const FpMatrix& o) const
    {
        if (cols_ != o.rows_ || prime_ != o.prime_) throw DimensionMismatch("matrix product shape");
        FpMatrix r(rows_, o.cols_, prime_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k)
                detail::axpy(r.data_.data() + i * o.cols_, o.data_.data() + k * o.cols_, o.cols_,
                             data_[i * cols_ + k], prime_);
        return r;
    }

    FpVector apply(std::span<const std::uint8_t> v) const
    {
        if (v.size() != cols_) throw DimensionMismatch("apply: vector length");
        FpVector out(rows_, 0);
        for (std::size_t i = 0; i < rows_; ++i) {
            long long s = 0;
            const std::uint8_t* r = data_.data() + i * cols_;
            for (std::size_t j = 0; j < cols_; ++j) s += r[j] * v[j];
            out[i] = static_cast<std::uint8_t>(s % prime_);
        }
        return out;
    }

    FpMatrix operator-(const FpMatrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix difference shape");
        FpMatrix r(*this);
        for (std::size_t i = 0; i < data_.size(); ++i)
            r.data_[i] = static_cast<std::uint8_t>((data_[i] + prime_ - o.data_[i]) % prime_);
        return r;
    }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](std::uint8_t x) { return x == 0; });
    }

    bool operator==(const FpMatrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    int prime_ = 2;
    std::vector<std::uint8_t> data_;
};

/// Gauss-Jordan elimination in place. On return the first `rank` rows hold the
/// reduced row-echelon form and the remaining rows are zero. Returns the pivot
/// columns, strictly increasing.
inline std::vector<std::size_t> reduce_to_rref(FpMatrix& m)
{
    const int p = m.prime();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m(piv, c) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r) std::swap_ranges(m.row(piv).begin(), m.row(piv).end(), m.row(r).begin());
        auto prow = m.row(r);
        detail::scale(prow.data() + c, cols - c, mod_inverse(prow[c], p), p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            auto row = m.row(i);
            if (row[c] != 0) detail::axpy(row.data() + c, prow.data() + c, cols - c, p - row[c], p);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rank(FpMatrix m) { return reduce_to_rref(m).size(); }

/// Row space of a matrix kept in canonical reduced row-echelon form, so two
/// subspaces are equal iff their bases are equal.
class Subspace {
public:
    Subspace(std::size_t ambient_dim, int prime) : basis_(0, ambient_dim, prime) {}

    static Subspace span(FpMatrix rows)
    {
        Subspace s(rows.cols(), rows.prime());
        s.pivots_ = reduce_to_rref(rows);
        rows.truncate_rows(s.pivots_.size());
        s.basis_ = std::move(rows);
        return s;
    }

    static Subspace full(std::size_t n, int prime) { return span(FpMatrix::identity(n, prime)); }

    std::size_t dim() const { return pivots_.size(); }
    std::size_t ambient_dim() const { return basis_.cols(); }
    int prime() const { return basis_.prime(); }
    const FpMatrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Residue of v after clearing every pivot coordinate.
    FpVector reduce(std::span<const std::uint8_t> v) const
    {
        if (v.size() != ambient_dim()) throw DimensionMismatch("Subspace::reduce: vector length");
        FpVector r(v.begin(), v.end());
        const int p = prime();
        for (std::size_t i = 0; i < pivots_.size(); ++i) {
            const std::size_t c = pivots_[i];
            if (r[c] != 0)
                detail::axpy(r.data() + c, basis_.row(i).data() + c, ambient_dim() - c, p - r[c], p);
        }
        return r;
    }

    bool contains(std::span<const std::uint8_t> v) const
    {
        auto r = reduce(v);
        return std::all_of(r.begin(), r.end(), [](std::uint8_t x) { return x == 0; });
    }

    bool contains(const Subspace& o) const
    {
        if (o.ambient_dim() != ambient_dim()) return false;
        for (std::size_t i = 0; i < o.dim(); ++i)
            if (!contains(o.basis_.row(i))) return false;
        return true;
    }

    /// Adds v to the span. Returns false when v was already contained.
    bool insert(std::span<const std::uint8_t> v)
    {
        FpVector r = reduce(v);
        auto lead = std::find_if(r.begin(), r.end(), [](std::uint8_t x) { return x != 0; });
        if (lead == r.end()) return false;
        const std::size_t c = static_cast<std::size_t>(lead - r.begin());
        const int p = prime();
        const std::size_t n = ambient_dim();
        detail::scale(r.data() + c, n - c, mod_inverse(r[c], p), p);
        for (std::size_t i = 0; i < pivots_.size(); ++i) {
            auto row = basis_.row(i);
            if (row[c] != 0) detail::axpy(row.data() + c, r.data() + c, n - c, p - row[c], p);
        }
        const auto pos = static_cast<std::size_t>(
            std::lower_bound(pivots_.begin(), pivots_.end(), c) - pivots_.begin());
        FpMatrix nb(0, n, p);
        for (std::size_t i = 0; i < pivots_.size(); ++i) {
            if (i == pos) nb.append_row(r);
            nb.append_row(basis_.row(i));
        }
        if (pos == pivots_.size()) nb.append_row(r);
        basis_ = std::move(nb);
        pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), c);
        return true;
    }

    bool operator==(const Subspace& o) const { return basis_ == o.basis_; }

private:
    FpMatrix basis_;
    std::vector<std::size_t> pivots_;
};

struct RankProfile {
    std::size_t rank;
    Subspace nullspace;
    Subspace row_space;
};

inline RankProfile rank_profile(const FpMatrix& m)
{
    FpMatrix r = m;
    const auto pivots = reduce_to_rref(r);
    const int p = m.prime();
    const std::size_t n = m.cols();

    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) is_pivot[c] = true;
    FpMatrix null_rows(0, n, p);
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        FpVector x(n, 0);
        x[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            x[pivots[i]] = static_cast<std::uint8_t>((p - r(i, f)) % p);
        null_rows.append_row(x);
    }
    r.truncate_rows(pivots.size());
    return {pivots.size(), Subspace::span(std::move(null_rows)), Subspace::span(std::move(r))};
}

/// Some solution of m x = rhs, or nullopt when the system is inconsistent.
inline std::optional<FpVector> solve(const FpMatrix& m, std::span<const std::uint8_t> rhs)
{
    if (rhs.size() != m.rows()) throw DimensionMismatch("solve: rhs length must equal rows");
    const std::size_t n = m.cols();
    FpMatrix aug(m.rows(), n + 1, m.prime());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.set(i, j, m(i, j));
        aug.set(i, n, rhs[i]);
    }
    const auto pivots = reduce_to_rref(aug);
    if (!pivots.empty() && pivots.back() == n) return std::nullopt;
    FpVector x(n, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, n);
    return x;
}

inline std::size_t quotient_dim(const Subspace& space, const Subspace& sub)
{
    if (space.ambient_dim() != sub.ambient_dim() || space.prime() != sub.prime())
        throw NotASubspace("quotient_dim: ambient spaces differ");
    if (!space.contains(sub)) throw NotASubspace("quotient_dim: sub is not contained in space");
    return space.dim() - sub.dim();
}

} // namespace endsbench

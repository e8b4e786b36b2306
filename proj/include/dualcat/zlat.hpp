#pragma once

// Exact integer linear algebra: Smith normal form, finitely generated abelian
// groups, integer chain complexes and their homology with explicit
// generators, and maps induced on homology by chain maps.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dualcat/error.hpp"

namespace dualcat::zlat {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

inline Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

/// Nonnegative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m)
{
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

// ---------------------------------------------------------------------------
// IntMatrix
// ---------------------------------------------------------------------------

/// Dense row-major matrix of arbitrary-precision integers. Row and column
/// labels are optional; when present they are unique per axis.
class IntMatrix {
public:
    IntMatrix() = default;

    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_)
                throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
            for (long long v : row) data_.emplace_back(v);
        }
    }

    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols_if_empty = 0)
    {
        IntMatrix m(rows.size(), rows.empty() ? cols_if_empty : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw Error(ErrorKind::DimensionMismatch, "ragged row list");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static IntMatrix column(const IntVector& v)
    {
        IntMatrix m(v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
    const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }

    void set_row_labels(std::vector<std::string> labels)
    {
        check_labels(labels, rows_);
        row_labels_ = std::move(labels);
    }
    void set_col_labels(std::vector<std::string> labels)
    {
        check_labels(labels, cols_);
        col_labels_ = std::move(labels);
    }

    IntVector column_vector(std::size_t j) const
    {
        IntVector v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    IntVector row_vector(std::size_t i) const
    {
        return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    bool is_zero() const
    {
        return std::all_of(data_.begin(), data_.end(), [](const Integer& a) { return a == 0; });
    }

    IntMatrix transpose() const
    {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        t.row_labels_ = col_labels_;
        t.col_labels_ = row_labels_;
        return t;
    }

    /// Rows [r0, r1) and columns [c0, c1).
    IntMatrix block(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const
    {
        IntMatrix b(r1 - r0, c1 - c0);
        for (std::size_t i = r0; i < r1; ++i)
            for (std::size_t j = c0; j < c1; ++j) b(i - r0, j - c0) = (*this)(i, j);
        return b;
    }

    IntVector apply(const IntVector& v) const
    {
        if (v.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "matrix-vector size mismatch");
        IntVector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            Integer acc = 0;
            for (std::size_t j = 0; j < cols_; ++j) {
                const Integer& a = (*this)(i, j);
                if (a != 0 && v[j] != 0) acc += a * v[j];
            }
            out[i] = std::move(acc);
        }
        return out;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product size mismatch");
        IntMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Integer& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Integer& bkj = b(k, j);
                    if (bkj != 0) c(i, j) += aik * bkj;
                }
            }
        return c;
    }

    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw Error(ErrorKind::DimensionMismatch, "matrix sum size mismatch");
        IntMatrix c = a;
        for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
        return c;
    }

    IntMatrix scaled(const Integer& s) const
    {
        IntMatrix c = *this;
        for (auto& a : c.data_) a *= s;
        return c;
    }

    /// Structural equality of shape and entries; labels are not compared.
    friend bool operator==(const IntMatrix& a, const IntMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Plain-text debug rendering, one bracketed row per line.
    std::string to_string() const
    {
        std::ostringstream os;
        os << rows_ << "x" << cols_;
        for (std::size_t i = 0; i < rows_; ++i) {
            os << "\n[";
            for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
            os << "]";
        }
        return os.str();
    }

    // Elementary operations used by the Smith form.
    void swap_rows(std::size_t i, std::size_t j)
    {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j)
    {
        if (i == j) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
    }
    /// row_i += k * row_j
    void add_row_multiple(std::size_t i, std::size_t j, const Integer& k)
    {
        if (k == 0) return;
        for (std::size_t c = 0; c < cols_; ++c) {
            const Integer& a = (*this)(j, c);
            if (a != 0) (*this)(i, c) += k * a;
        }
    }
    /// col_i += k * col_j
    void add_col_multiple(std::size_t i, std::size_t j, const Integer& k)
    {
        if (k == 0) return;
        for (std::size_t r = 0; r < rows_; ++r) {
            const Integer& a = (*this)(r, j);
            if (a != 0) (*this)(r, i) += k * a;
        }
    }
    void negate_row(std::size_t i)
    {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
    }

private:
    static void check_labels(const std::vector<std::string>& labels, std::size_t n)
    {
        if (labels.empty()) return;
        if (labels.size() != n) throw Error(ErrorKind::DimensionMismatch, "label count does not match axis");
        std::vector<std::string> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw Error(ErrorKind::DuplicateId, "duplicate matrix label");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    IntVector data_;
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << m.to_string(); }

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(const IntMatrix& m)
{
    if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

/// U * M * V = S with U, V unimodular and S diagonal, d_1 | d_2 | ... , d_i > 0.
/// The inverses of U and V are carried along since homology needs them.
struct SmithForm {
    IntMatrix U, S, V;
    IntMatrix U_inv, V_inv;
    std::size_t rank = 0;

    IntVector diagonal() const
    {
        IntVector d(rank);
        for (std::size_t i = 0; i < rank; ++i) d[i] = S(i, i);
        return d;
    }
};

namespace detail {

struct SmithTracking {
    bool left = true;
    bool right = true;
};

inline SmithForm smith(const IntMatrix& M, SmithTracking track)
{
    const std::size_t m = M.rows();
    const std::size_t n = M.cols();
    SmithForm f;
    f.S = M;
    if (track.left) {
        f.U = IntMatrix::identity(m);
        f.U_inv = IntMatrix::identity(m);
    }
    if (track.right) {
        f.V = IntMatrix::identity(n);
        f.V_inv = IntMatrix::identity(n);
    }
    IntMatrix& S = f.S;

    auto row_swap = [&](std::size_t i, std::size_t j) {
        S.swap_rows(i, j);
        if (track.left) {
            f.U.swap_rows(i, j);
            f.U_inv.swap_cols(i, j);
        }
    };
    auto row_add = [&](std::size_t i, std::size_t j, const Integer& k) {
        S.add_row_multiple(i, j, k);
        if (track.left) {
            f.U.add_row_multiple(i, j, k);
            f.U_inv.add_col_multiple(j, i, -k);
        }
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        S.swap_cols(i, j);
        if (track.right) {
            f.V.swap_cols(i, j);
            f.V_inv.swap_rows(i, j);
        }
    };
    auto col_add = [&](std::size_t i, std::size_t j, const Integer& k) {
        S.add_col_multiple(i, j, k);
        if (track.right) {
            f.V.add_col_multiple(i, j, k);
            f.V_inv.add_row_multiple(j, i, -k);
        }
    };

    // Minimal |a| over the trailing block, ties broken by lowest (row, col).
    auto find_pivot = [&](std::size_t t, std::size_t& pr, std::size_t& pc) {
        bool found = false;
        Integer best;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                const Integer& a = S(i, j);
                if (a == 0) continue;
                Integer v = abs_value(a);
                if (!found || v < best) {
                    best = std::move(v);
                    pr = i;
                    pc = j;
                    found = true;
                    if (best == 1) return true;
                }
            }
        return found;
    };

    std::size_t t = 0;
    const std::size_t limit = std::min(m, n);
    while (t < limit) {
        std::size_t pr = 0;
        std::size_t pc = 0;
        if (!find_pivot(t, pr, pc)) break;
        for (;;) {
            row_swap(t, pr);
            col_swap(t, pc);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (S(i, t) == 0) continue;
                Integer q = S(i, t) / S(t, t);
                row_add(i, t, -q);
                if (S(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (S(t, j) == 0) continue;
                Integer q = S(t, j) / S(t, t);
                col_add(j, t, -q);
                if (S(t, j) != 0) clean = false;
            }
            if (clean) {
                // The pivot must divide the whole trailing block.
                bool divides = true;
                for (std::size_t i = t + 1; i < m && divides; ++i)
                    for (std::size_t j = t + 1; j < n; ++j)
                        if (S(i, j) != 0 && S(i, j) % S(t, t) != 0) {
                            row_add(t, i, Integer(1));
                            divides = false;
                            break;
                        }
                if (divides) break;
            }
            find_pivot(t, pr, pc);
        }
        if (S(t, t) < 0) {
            S.negate_row(t);
            if (track.left) {
                f.U.negate_row(t);
                for (std::size_t r = 0; r < m; ++r) f.U_inv(r, t) = -f.U_inv(r, t);
            }
        }
        ++t;
    }
    f.rank = t;
    return f;
}

} // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& M) { return detail::smith(M, {true, true}); }

/// Invariant factors only (the nonzero diagonal of the Smith form).
inline IntVector invariant_factors(const IntMatrix& M) { return detail::smith(M, {false, false}).diagonal(); }

inline std::size_t rank_of(const IntMatrix& M) { return detail::smith(M, {false, false}).rank; }

/// Integer solution of A x = b, or nullopt when none exists.
inline std::optional<IntVector> solve_integer_system(const IntMatrix& A, const IntVector& b)
{
    if (b.size() != A.rows()) throw Error(ErrorKind::DimensionMismatch, "right-hand side size mismatch");
    const SmithForm f = smith_normal_form(A);
    const IntVector y = f.U.apply(b);
    IntVector xs(A.cols());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (i < f.rank) {
            if (y[i] % f.S(i, i) != 0) return std::nullopt;
            xs[i] = y[i] / f.S(i, i);
        } else if (y[i] != 0) {
            return std::nullopt;
        }
    }
    return f.V.apply(xs);
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups
// ---------------------------------------------------------------------------

/// Z^rank + Z/d_1 + ... + Z/d_k with 2 <= d_1 | d_2 | ... | d_k. The form is
/// canonical, so structural equality decides isomorphism.
class FgAbelianGroup {
public:
    FgAbelianGroup() = default;

    explicit FgAbelianGroup(std::size_t rank, IntVector torsion = {}) : rank_(rank), torsion_(std::move(torsion))
    {
        for (std::size_t i = 0; i < torsion_.size(); ++i) {
            if (torsion_[i] < 2) throw Error(ErrorKind::MalformedInput, "torsion coefficient below 2");
            if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
                throw Error(ErrorKind::MalformedInput, "torsion coefficients do not form a divisibility chain");
        }
    }

    static FgAbelianGroup free(std::size_t rank) { return FgAbelianGroup(rank); }

    /// Quotient Z^n / im(A) for an n-row matrix A.
    static FgAbelianGroup cokernel(const IntMatrix& A)
    {
        const IntVector d = invariant_factors(A);
        IntVector torsion;
        for (const auto& x : d)
            if (x > 1) torsion.push_back(x);
        return FgAbelianGroup(A.rows() - d.size(), std::move(torsion));
    }

    std::size_t rank() const noexcept { return rank_; }
    const IntVector& torsion() const noexcept { return torsion_; }
    bool is_trivial() const noexcept { return rank_ == 0 && torsion_.empty(); }
    bool is_free() const noexcept { return torsion_.empty(); }
    std::size_t generator_count() const noexcept { return rank_ + torsion_.size(); }

    friend bool operator==(const FgAbelianGroup&, const FgAbelianGroup&) = default;

    std::string to_string() const
    {
        if (is_trivial()) return "0";
        std::ostringstream os;
        bool first = true;
        if (rank_ > 0) {
            os << "Z";
            if (rank_ > 1) os << "^" << rank_;
            first = false;
        }
        for (const auto& d : torsion_) {
            os << (first ? "" : " + ") << "Z/" << d;
            first = false;
        }
        return os.str();
    }

private:
    std::size_t rank_ = 0;
    IntVector torsion_;
};

inline std::ostream& operator<<(std::ostream& os, const FgAbelianGroup& g) { return os << g.to_string(); }

inline bool group_iso_equal(const FgAbelianGroup& g, const FgAbelianGroup& h) { return g == h; }

/// Degree -> group, storing only nonzero degrees.
class GradedGroups {
public:
    void set(int degree, FgAbelianGroup g)
    {
        if (g.is_trivial())
            groups_.erase(degree);
        else
            groups_[degree] = std::move(g);
    }

    FgAbelianGroup at(int degree) const
    {
        auto it = groups_.find(degree);
        return it == groups_.end() ? FgAbelianGroup{} : it->second;
    }

    const std::map<int, FgAbelianGroup>& nonzero() const noexcept { return groups_; }
    bool is_zero() const noexcept { return groups_.empty(); }

    /// Same groups with every degree moved by `by`.
    GradedGroups shifted(int by) const
    {
        GradedGroups out;
        for (const auto& [d, g] : groups_) out.groups_[d + by] = g;
        return out;
    }

    friend bool operator==(const GradedGroups&, const GradedGroups&) = default;

    std::string to_string() const
    {
        if (groups_.empty()) return "(zero)";
        std::ostringstream os;
        bool first = true;
        for (const auto& [d, g] : groups_) {
            os << (first ? "" : ", ") << d << ": " << g;
            first = false;
        }
        return os.str();
    }

private:
    std::map<int, FgAbelianGroup> groups_;
};

inline std::ostream& operator<<(std::ostream& os, const GradedGroups& g) { return os << g.to_string(); }

// ---------------------------------------------------------------------------
// Chain complexes
// ---------------------------------------------------------------------------

enum class Direction { chain, cochain };

/// Bounded complex of free abelian groups in degrees [lo, hi]. For the chain
/// direction differentials lower the degree, for cochain they raise it.
/// Matrices act on column vectors.
class IntegerChainComplex {
public:
    IntegerChainComplex() = default;

    /// `between[k]` is the differential linking degrees lo+k and lo+k+1: it maps
    /// lo+k+1 -> lo+k for chain complexes and lo+k -> lo+k+1 for cochain ones.
    IntegerChainComplex(Direction dir, int lo, std::vector<std::size_t> dims, std::vector<IntMatrix> between,
                        std::vector<std::vector<std::string>> labels = {})
        : dir_(dir), lo_(lo), dims_(std::move(dims)), between_(std::move(between)), labels_(std::move(labels))
    {
        if (dims_.empty()) {
            if (!between_.empty()) throw Error(ErrorKind::DimensionMismatch, "differentials without groups");
            return;
        }
        if (between_.size() + 1 != dims_.size())
            throw Error(ErrorKind::DimensionMismatch, "expected one differential per adjacent degree pair");
        if (!labels_.empty() && labels_.size() != dims_.size())
            throw Error(ErrorKind::DimensionMismatch, "label list does not cover every degree");
        for (std::size_t k = 0; k < between_.size(); ++k) {
            const std::size_t rows = dir_ == Direction::chain ? dims_[k] : dims_[k + 1];
            const std::size_t cols = dir_ == Direction::chain ? dims_[k + 1] : dims_[k];
            if (between_[k].rows() != rows || between_[k].cols() != cols)
                throw Error(ErrorKind::DimensionMismatch,
                            "differential shape mismatch at degree " + std::to_string(lo_ + static_cast<int>(k)));
        }
        for (std::size_t k = 0; k + 1 < between_.size(); ++k) {
            const IntMatrix comp = dir_ == Direction::chain ? between_[k] * between_[k + 1]
                                                             : between_[k + 1] * between_[k];
            if (!comp.is_zero())
                throw Error(ErrorKind::NotAComplex,
                            "consecutive differentials do not compose to zero near degree " +
                                std::to_string(lo_ + static_cast<int>(k) + 1));
        }
    }

    Direction direction() const noexcept { return dir_; }
    int lo() const noexcept { return lo_; }
    int hi() const noexcept { return lo_ + static_cast<int>(dims_.size()) - 1; }
    bool empty() const noexcept { return dims_.empty(); }

    std::size_t dim(int n) const
    {
        if (dims_.empty() || n < lo_ || n > hi()) return 0;
        return dims_[static_cast<std::size_t>(n - lo_)];
    }

    const std::vector<std::string>& labels(int n) const
    {
        static const std::vector<std::string> none;
        if (labels_.empty() || n < lo_ || n > hi()) return none;
        return labels_[static_cast<std::size_t>(n - lo_)];
    }

    /// The differential leaving degree n.
    IntMatrix outgoing(int n) const
    {
        const int target = dir_ == Direction::chain ? n - 1 : n + 1;
        if (dim(n) == 0 || dim(target) == 0 || dims_.empty()) return IntMatrix::zero(dim(target), dim(n));
        const int k = dir_ == Direction::chain ? n - 1 - lo_ : n - lo_;
        return between_[static_cast<std::size_t>(k)];
    }

    /// The differential arriving in degree n.
    IntMatrix incoming(int n) const
    {
        const int source = dir_ == Direction::chain ? n + 1 : n - 1;
        if (dim(n) == 0 || dim(source) == 0 || dims_.empty()) return IntMatrix::zero(dim(n), dim(source));
        const int k = dir_ == Direction::chain ? n - lo_ : n - 1 - lo_;
        return between_[static_cast<std::size_t>(k)];
    }

    /// The same data read in the other direction with degrees negated
    /// (C_n becomes C^{-n}); homology is preserved degree for degree.
    IntegerChainComplex reindexed() const
    {
        if (dims_.empty()) return IntegerChainComplex(flip(dir_), 0, {}, {});
        std::vector<std::size_t> dims(dims_.rbegin(), dims_.rend());
        std::vector<IntMatrix> between(between_.rbegin(), between_.rend());
        std::vector<std::vector<std::string>> labels(labels_.rbegin(), labels_.rend());
        return IntegerChainComplex(flip(dir_), -hi(), std::move(dims), std::move(between), std::move(labels));
    }

    /// Alternating sum of group ranks.
    long long euler_characteristic() const
    {
        long long chi = 0;
        for (int n = lo_; n <= hi(); ++n) chi += ((n % 2 == 0) ? 1 : -1) * static_cast<long long>(dim(n));
        return chi;
    }

private:
    static Direction flip(Direction d) { return d == Direction::chain ? Direction::cochain : Direction::chain; }

    Direction dir_ = Direction::chain;
    int lo_ = 0;
    std::vector<std::size_t> dims_;
    std::vector<IntMatrix> between_;
    std::vector<std::vector<std::string>> labels_;
};

// ---------------------------------------------------------------------------
// Homology with canonical generators
// ---------------------------------------------------------------------------

/// Homology in one degree together with the data needed to express cycles in
/// the canonical generators. Generators are ordered free first, then torsion
/// in divisibility order; both come out of the deterministic Smith pivots.
class HomologyBasis {
public:
    HomologyBasis() = default;

    HomologyBasis(const IntegerChainComplex& X, int n)
    {
        const IntMatrix out = X.outgoing(n);
        const IntMatrix in = X.incoming(n);
        dim_ = X.dim(n);

        const SmithForm f_out = detail::smith(out, {false, true});
        out_rank_ = f_out.rank;
        const std::size_t k = dim_ - out_rank_;
        cycle_test_ = f_out.V_inv.block(0, out_rank_, 0, dim_);
        to_kernel_ = f_out.V_inv.block(out_rank_, dim_, 0, dim_);
        const IntMatrix kernel = f_out.V.block(0, dim_, out_rank_, dim_);

        const IntMatrix boundaries = to_kernel_ * in; // k x dim(n+1)
        const SmithForm f_b = detail::smith(boundaries, {true, false});
        change_ = f_b.U;
        const IntMatrix gens_all = kernel * f_b.U_inv; // dim x k
        invariants_ = f_b.diagonal();

        IntVector torsion;
        std::vector<std::size_t> chosen;
        for (std::size_t i = f_b.rank; i < k; ++i) chosen.push_back(i);
        const std::size_t rank = chosen.size();
        for (std::size_t i = 0; i < f_b.rank; ++i)
            if (invariants_[i] > 1) {
                chosen.push_back(i);
                torsion.push_back(invariants_[i]);
            }
        group_ = FgAbelianGroup(rank, torsion);
        slots_ = chosen;
        generators_ = IntMatrix(dim_, chosen.size());
        for (std::size_t c = 0; c < chosen.size(); ++c)
            for (std::size_t r = 0; r < dim_; ++r) generators_(r, c) = gens_all(r, chosen[c]);
    }

    const FgAbelianGroup& group() const noexcept { return group_; }

    /// Columns are cycle representatives of the canonical generators.
    const IntMatrix& generators() const noexcept { return generators_; }

    /// Coordinates of the homology class of cycle z; torsion coordinates are
    /// reduced to [0, d).
    IntVector coordinates(const IntVector& z) const
    {
        if (z.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "cycle has wrong length");
        for (const auto& v : cycle_test_.apply(z))
            if (v != 0) throw Error(ErrorKind::NotACycleImage, "vector is not a cycle");
        const IntVector c = change_.apply(to_kernel_.apply(z));
        IntVector out(slots_.size());
        for (std::size_t s = 0; s < slots_.size(); ++s) {
            const std::size_t i = slots_[s];
            out[s] = s < group_.rank() ? c[i] : mod_floor(c[i], invariants_[i]);
        }
        return out;
    }

private:
    std::size_t dim_ = 0;
    std::size_t out_rank_ = 0;
    IntMatrix cycle_test_;
    IntMatrix to_kernel_;
    IntMatrix change_;
    IntVector invariants_;
    std::vector<std::size_t> slots_;
    FgAbelianGroup group_;
    IntMatrix generators_;
};

/// ker/im in degree n; out-of-range degrees give the trivial group.
inline FgAbelianGroup homology(const IntegerChainComplex& X, int n)
{
    const std::size_t d = X.dim(n);
    if (d == 0) return {};
    const std::size_t r_out = rank_of(X.outgoing(n));
    const IntVector inv = invariant_factors(X.incoming(n));
    IntVector torsion;
    for (const auto& x : inv)
        if (x > 1) torsion.push_back(x);
    return FgAbelianGroup(d - r_out - inv.size(), std::move(torsion));
}

inline GradedGroups homology_all(const IntegerChainComplex& X)
{
    GradedGroups g;
    if (X.empty()) return g;
    for (int n = X.lo(); n <= X.hi(); ++n) g.set(n, homology(X, n));
    return g;
}

// ---------------------------------------------------------------------------
// Chain maps
// ---------------------------------------------------------------------------

/// Degreewise matrices between two complexes of the same direction, checked
/// to commute with the differentials.
class ChainMap {
public:
    ChainMap(IntegerChainComplex source, IntegerChainComplex target, std::map<int, IntMatrix> components)
        : source_(std::move(source)), target_(std::move(target)), components_(std::move(components))
    {
        if (source_.direction() != target_.direction())
            throw Error(ErrorKind::NotAChainMap, "complexes have different directions");
        for (const auto& [n, f] : components_)
            if (f.rows() != target_.dim(n) || f.cols() != source_.dim(n))
                throw Error(ErrorKind::DimensionMismatch, "component shape mismatch at degree " + std::to_string(n));
        const int lo = std::min(source_.lo(), target_.lo()) - 1;
        const int hi = std::max(source_.hi(), target_.hi()) + 1;
        const int step = source_.direction() == Direction::chain ? -1 : 1;
        for (int n = lo; n <= hi; ++n) {
            const IntMatrix lhs = component(n + step) * source_.outgoing(n);
            const IntMatrix rhs = target_.outgoing(n) * component(n);
            if (!(lhs == rhs))
                throw Error(ErrorKind::NotAChainMap, "square fails to commute at degree " + std::to_string(n));
        }
    }

    const IntegerChainComplex& source() const noexcept { return source_; }
    const IntegerChainComplex& target() const noexcept { return target_; }

    IntMatrix component(int n) const
    {
        auto it = components_.find(n);
        if (it != components_.end()) return it->second;
        return IntMatrix::zero(target_.dim(n), source_.dim(n));
    }

    friend ChainMap compose(const ChainMap& g, const ChainMap& f)
    {
        std::map<int, IntMatrix> comps;
        const int lo = std::min(f.source_.lo(), g.target_.lo());
        const int hi = std::max(f.source_.hi(), g.target_.hi());
        for (int n = lo; n <= hi; ++n) comps.emplace(n, g.component(n) * f.component(n));
        return ChainMap(f.source_, g.target_, std::move(comps));
    }

private:
    IntegerChainComplex source_;
    IntegerChainComplex target_;
    std::map<int, IntMatrix> components_;
};

/// Matrix of H_n(f) in canonical generators (rows: target, columns: source).
/// Torsion rows are reduced modulo their order.
inline IntMatrix induced_map(const ChainMap& f, const HomologyBasis& src, const HomologyBasis& tgt, int n)
{
    const IntMatrix fn = f.component(n);
    const IntMatrix& gens = src.generators();
    IntMatrix out(tgt.group().generator_count(), gens.cols());
    for (std::size_t j = 0; j < gens.cols(); ++j) {
        const IntVector image = fn.apply(gens.column_vector(j));
        const IntVector coords = tgt.coordinates(image);
        for (std::size_t i = 0; i < coords.size(); ++i) out(i, j) = coords[i];
    }
    return out;
}

inline IntMatrix induced_map(const ChainMap& f, int n)
{
    return induced_map(f, HomologyBasis(f.source(), n), HomologyBasis(f.target(), n), n);
}

} // namespace dualcat::zlat

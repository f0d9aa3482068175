#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hwlab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Sparse matrix over Q stored as (row, col, value) triples.
/// Stored values are nonzero; duplicate positions are rejected.
class SparseMat {
public:
    SparseMat(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("SparseMat: negative dimension");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void add(int r, int c, Rational v) {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("SparseMat::add: index out of range");
        if (v == 0) return;
        entries_.push_back({r, c, std::move(v)});
    }

    struct Entry {
        int row, col;
        Rational value;
    };
    const std::vector<Entry>& entries() const { return entries_; }

    SparseMat transpose() const;

    /// C = this * other (exact).
    SparseMat multiply(const SparseMat& other) const;

    bool is_zero() const;

private:
    int rows_, cols_;
    std::vector<Entry> entries_;
};

/// Exact rank over Q. Fraction-free (Bareiss) elimination on the
/// denominator-cleared integer matrix, pivoting for sparsity.
int rank(const SparseMat& m);

/// dim ker(d_out) - rank(d_in) for a composable chain pair
/// d_in : C'' -> C, d_out : C -> C'. Throws if d_out * d_in != 0.
int homology_dim(const SparseMat& d_in, const SparseMat& d_out);

/// Smith normal form of a dense integer matrix (dimensions <= 500).
/// Returns the nonzero invariants d_1 | d_2 | ... and, when requested,
/// unimodular U, V with U*M*V diagonal.
struct SmithResult {
    std::vector<Int> invariants;
    std::vector<std::vector<Int>> left;   // U, rows x rows
    std::vector<std::vector<Int>> right;  // V, cols x cols
};
SmithResult smith_normal_form(std::vector<std::vector<Int>> m, bool want_transforms = false);

} // namespace hwlab

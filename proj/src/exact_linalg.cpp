#include "hurwitzlab/exact_linalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

namespace hwlab {

SparseMat SparseMat::transpose() const {
    SparseMat t(cols_, rows_);
    for (const auto& e : entries_) t.add(e.col, e.row, e.value);
    return t;
}

SparseMat SparseMat::multiply(const SparseMat& other) const {
    if (cols_ != other.rows()) throw std::invalid_argument("SparseMat::multiply: shape mismatch");
    // row-indexed view of other
    std::vector<std::vector<const Entry*>> by_row(other.rows());
    for (const auto& e : other.entries()) by_row[e.row].push_back(&e);
    std::map<std::pair<int, int>, Rational> acc;
    for (const auto& e : entries_)
        for (const Entry* f : by_row[e.col]) acc[{e.row, f->col}] += e.value * f->value;
    SparseMat out(rows_, other.cols());
    for (auto& [pos, v] : acc)
        if (v != 0) out.add(pos.first, pos.second, std::move(v));
    return out;
}

bool SparseMat::is_zero() const {
    std::map<std::pair<int, int>, Rational> acc;
    for (const auto& e : entries_) acc[{e.row, e.col}] += e.value;
    for (auto& [pos, v] : acc)
        if (v != 0) return false;
    return true;
}

namespace {

// One sparse row of an integer matrix: sorted (col, value) pairs.
using IRow = std::vector<std::pair<int, Int>>;

// rows of the matrix with denominators cleared per row
std::vector<IRow> integer_rows(const SparseMat& m) {
    std::vector<std::map<int, Rational>> acc(m.rows());
    for (const auto& e : m.entries()) acc[e.row][e.col] += e.value;
    std::vector<IRow> rows(m.rows());
    for (int r = 0; r < m.rows(); ++r) {
        Int lcm = 1;
        for (auto& [c, v] : acc[r]) {
            if (v == 0) continue;
            Int den = denominator(v);
            lcm = lcm / gcd(lcm, den) * den;
        }
        for (auto& [c, v] : acc[r]) {
            if (v == 0) continue;
            rows[r].emplace_back(c, numerator(v) * (lcm / denominator(v)));
        }
    }
    return rows;
}

Int get_coeff(const IRow& row, int col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& p, int c) { return p.first < c; });
    if (it != row.end() && it->first == col) return it->second;
    return 0;
}

// r <- p*r - q*prow (exact integer combination), then divide out the row gcd
IRow combine(const IRow& r, const IRow& prow, const Int& p, const Int& q) {
    IRow out;
    out.reserve(r.size() + prow.size());
    size_t i = 0, j = 0;
    Int g = 0;
    while (i < r.size() || j < prow.size()) {
        int ci = i < r.size() ? r[i].first : INT32_MAX;
        int cj = j < prow.size() ? prow[j].first : INT32_MAX;
        int c = std::min(ci, cj);
        Int v = 0;
        if (ci == c) v += p * r[i++].second;
        if (cj == c) v -= q * prow[j++].second;
        if (v != 0) {
            g = gcd(g, v);
            out.emplace_back(c, std::move(v));
        }
    }
    if (g > 1)
        for (auto& [c, v] : out) v /= g;
    return out;
}

int rank_of_rows(std::vector<IRow> rows) {
    rows.erase(std::remove_if(rows.begin(), rows.end(), [](const IRow& r) { return r.empty(); }),
               rows.end());
    int rnk = 0;
    while (!rows.empty()) {
        // pivot row: fewest nonzeros, then smallest leading magnitude
        size_t best = 0;
        for (size_t i = 1; i < rows.size(); ++i) {
            if (rows[i].size() < rows[best].size() ||
                (rows[i].size() == rows[best].size() &&
                 abs(rows[i][0].second) < abs(rows[best][0].second)))
                best = i;
        }
        IRow prow = std::move(rows[best]);
        rows.erase(rows.begin() + best);
        // pivot column inside the row: smallest magnitude entry
        int pc = prow[0].first;
        Int pv = prow[0].second;
        for (const auto& [c, v] : prow)
            if (abs(v) < abs(pv)) { pc = c; pv = v; }
        ++rnk;
        std::vector<IRow> next;
        next.reserve(rows.size());
        for (auto& row : rows) {
            Int q = get_coeff(row, pc);
            if (q == 0) {
                next.push_back(std::move(row));
                continue;
            }
            IRow updated = combine(row, prow, pv, q);
            if (!updated.empty()) next.push_back(std::move(updated));
        }
        rows = std::move(next);
    }
    return rnk;
}

} // namespace

int rank(const SparseMat& m) { return rank_of_rows(integer_rows(m)); }

int homology_dim(const SparseMat& d_in, const SparseMat& d_out) {
    if (d_out.cols() != d_in.rows())
        throw std::invalid_argument("homology_dim: maps are not composable");
    if (!d_out.multiply(d_in).is_zero())
        throw std::invalid_argument("homology_dim: composition is nonzero");
    int dim = d_out.cols() - rank(d_out) - rank(d_in);
    if (dim < 0) throw std::logic_error("homology_dim: negative dimension");
    return dim;
}

namespace {

void ensure_identity(std::vector<std::vector<Int>>& m, size_t n) {
    m.assign(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
}

} // namespace

SmithResult smith_normal_form(std::vector<std::vector<Int>> m, bool want_transforms) {
    size_t nr = m.size();
    size_t nc = nr ? m[0].size() : 0;
    if (nr > 500 || nc > 500) throw std::invalid_argument("smith_normal_form: dimensions above 500");
    SmithResult res;
    if (want_transforms) {
        ensure_identity(res.left, nr);
        ensure_identity(res.right, nc);
    }
    size_t t = 0;
    while (t < nr && t < nc) {
        // locate smallest-magnitude nonzero in the trailing block
        size_t pr = t, pc = t;
        Int best = 0;
        for (size_t i = t; i < nr; ++i)
            for (size_t j = t; j < nc; ++j)
                if (m[i][j] != 0 && (best == 0 || abs(m[i][j]) < abs(best))) {
                    best = m[i][j];
                    pr = i;
                    pc = j;
                }
        if (best == 0) break;
        std::swap(m[pr], m[t]);
        if (want_transforms) std::swap(res.left[pr], res.left[t]);
        for (size_t i = 0; i < nr; ++i) std::swap(m[i][pc], m[i][t]);
        if (want_transforms)
            for (size_t i = 0; i < nc; ++i) std::swap(res.right[i][pc], res.right[i][t]);

        bool clean = true;
        for (size_t i = t + 1; i < nr; ++i) {
            Int q = m[i][t] / m[t][t];
            if (q != 0) {
                for (size_t j = 0; j < nc; ++j) m[i][j] -= q * m[t][j];
                if (want_transforms)
                    for (size_t j = 0; j < nr; ++j) res.left[i][j] -= q * res.left[t][j];
            }
            if (m[i][t] != 0) clean = false;
        }
        for (size_t j = t + 1; j < nc; ++j) {
            Int q = m[t][j] / m[t][t];
            if (q != 0) {
                for (size_t i = 0; i < nr; ++i) m[i][j] -= q * m[i][t];
                if (want_transforms)
                    for (size_t i = 0; i < nc; ++i) res.right[i][j] -= q * res.right[i][t];
            }
            if (m[t][j] != 0) clean = false;
        }
        if (!clean) continue; // repeat with a smaller pivot
        // enforce divisibility d_t | m[i][j]
        bool fixed = false;
        for (size_t i = t + 1; i < nr && !fixed; ++i)
            for (size_t j = t + 1; j < nc && !fixed; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    for (size_t jj = 0; jj < nc; ++jj) m[t][jj] += m[i][jj];
                    if (want_transforms)
                        for (size_t jj = 0; jj < nr; ++jj) res.left[t][jj] += res.left[i][jj];
                    fixed = true;
                }
        if (fixed) continue;
        if (m[t][t] < 0) {
            for (size_t j = 0; j < nc; ++j) m[t][j] = -m[t][j];
            if (want_transforms)
                for (size_t j = 0; j < nr; ++j) res.left[t][j] = -res.left[t][j];
        }
        res.invariants.push_back(m[t][t]);
        ++t;
    }
    return res;
}

} // namespace hwlab

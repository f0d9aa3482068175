#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "hurwitzlab/exact_linalg.hpp"

using namespace hwlab;

namespace {

// reference rank via plain rational Gaussian elimination on a dense copy
int naive_rank(const SparseMat& m) {
    std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols(), 0));
    for (const auto& e : m.entries()) a[e.row][e.col] += e.value;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        Rational inv = Rational(1) / a[r][c];
        for (auto& v : a[r]) v *= inv;
        for (int i = 0; i < m.rows(); ++i)
            if (i != r && a[i][c] != 0) {
                Rational f = a[i][c];
                for (int j = 0; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
            }
        ++r;
    }
    return r;
}

SparseMat random_matrix(std::mt19937& rng, int rows, int cols, double density) {
    SparseMat m(rows, cols);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (u(rng) < density) m.add(i, j, Rational(num(rng), den(rng)));
    return m;
}

// rank mod a large prime as an extra cross-check (lower bound that matches
// the rational rank with overwhelming probability for these small matrices)
int modular_rank(const SparseMat& m, long long p) {
    auto inv_mod = [&](long long a) {
        long long r = 1, b = a % p, e = p - 2;
        if (b < 0) b += p;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    std::vector<std::vector<long long>> a(m.rows(), std::vector<long long>(m.cols(), 0));
    for (const auto& e : m.entries()) {
        long long nu = (long long)(numerator(e.value) % p);
        long long de = (long long)(denominator(e.value) % p);
        long long v = ((nu % p) + p) % p * inv_mod(de) % p;
        a[e.row][e.col] = (a[e.row][e.col] + v) % p;
    }
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[r], a[piv]);
        long long inv = inv_mod(a[r][c]);
        for (auto& v : a[r]) v = v * inv % p;
        for (int i = 0; i < m.rows(); ++i)
            if (i != r && a[i][c] != 0) {
                long long f = a[i][c];
                for (int j = 0; j < m.cols(); ++j)
                    a[i][j] = ((a[i][j] - f * a[r][j]) % p + p) % p;
            }
        ++r;
    }
    return r;
}

} // namespace

TEST_CASE("rank matches naive elimination and modular cross-check") {
    std::mt19937 rng(12345);
    for (int trial = 0; trial < 40; ++trial) {
        int rows = 1 + (int)(rng() % 12), cols = 1 + (int)(rng() % 12);
        SparseMat m = random_matrix(rng, rows, cols, 0.4);
        int r = rank(m);
        CHECK(r == naive_rank(m));
        CHECK(r == modular_rank(m, 1000000007ll));
    }
}

TEST_CASE("rank equals rank of transpose") {
    std::mt19937 rng(999);
    for (int trial = 0; trial < 30; ++trial) {
        SparseMat m = random_matrix(rng, 2 + (int)(rng() % 10), 2 + (int)(rng() % 10), 0.35);
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("rank of identity and permutation matrices") {
    for (int n : {1, 4, 9}) {
        SparseMat id(n, n);
        SparseMat perm(n, n);
        for (int i = 0; i < n; ++i) {
            id.add(i, i, 1);
            perm.add(i, (i + 1) % n, 1);
        }
        CHECK(rank(id) == n);
        CHECK(rank(perm) == n);
    }
    CHECK(rank(SparseMat(0, 5)) == 0);
    CHECK(rank(SparseMat(5, 0)) == 0);
}

TEST_CASE("multiply agrees with dense computation and composes ranks") {
    std::mt19937 rng(77);
    SparseMat a = random_matrix(rng, 5, 7, 0.5), b = random_matrix(rng, 7, 4, 0.5);
    SparseMat c = a.multiply(b);
    REQUIRE(c.rows() == 5);
    REQUIRE(c.cols() == 4);
    // spot-check one entry densely
    std::vector<std::vector<Rational>> da(5, std::vector<Rational>(7, 0)),
        db(7, std::vector<Rational>(4, 0)), dc(5, std::vector<Rational>(4, 0));
    for (const auto& e : a.entries()) da[e.row][e.col] += e.value;
    for (const auto& e : b.entries()) db[e.row][e.col] += e.value;
    for (const auto& e : c.entries()) dc[e.row][e.col] += e.value;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 4; ++j) {
            Rational s = 0;
            for (int k = 0; k < 7; ++k) s += da[i][k] * db[k][j];
            CHECK(dc[i][j] == s);
        }
    CHECK(rank(c) <= std::min(rank(a), rank(b)));
}

TEST_CASE("homology_dim on a known chain complex") {
    // 0 -> Q --0--> Q^2 --[1 1]--> Q -> 0 : H = ker/im at the middle term
    SparseMat d_in(2, 1);               // zero map Q -> Q^2
    SparseMat d_out(1, 2);
    d_out.add(0, 0, 1);
    d_out.add(0, 1, 1);
    CHECK(homology_dim(d_in, d_out) == 1);

    SparseMat d_in2(2, 1);
    d_in2.add(0, 0, 1);
    d_in2.add(1, 0, -1);                 // im = span(1,-1) = ker d_out
    CHECK(homology_dim(d_in2, d_out) == 0);
}

TEST_CASE("homology_dim rejects non-composable pairs") {
    SparseMat d_in(2, 1);
    d_in.add(0, 0, 1);
    SparseMat d_out(1, 2);
    d_out.add(0, 0, 1);
    CHECK_THROWS(homology_dim(d_in, d_out)); // composition nonzero
}

namespace {

// SNF oracle: reduce by elementary row/col ops with naive pivoting
std::vector<Int> naive_snf(std::vector<std::vector<Int>> a) {
    size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<Int> inv;
    size_t t = 0;
    while (t < rows && t < cols) {
        // find nonzero pivot
        size_t pi = rows, pj = cols;
        for (size_t i = t; i < rows && pi == rows; ++i)
            for (size_t j = t; j < cols; ++j)
                if (a[i][j] != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == rows) break;
        std::swap(a[t], a[pi]);
        for (size_t i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);
        bool again = true;
        while (again) {
            again = false;
            for (size_t i = t + 1; i < rows; ++i)
                while (a[i][t] != 0) {
                    Int q = a[t][t] == 0 ? Int(0) : a[i][t] / a[t][t];
                    for (size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                    if (a[i][t] != 0) {
                        std::swap(a[i], a[t]);
                        again = true;
                    }
                }
            for (size_t j = t + 1; j < cols; ++j)
                while (a[t][j] != 0) {
                    Int q = a[t][t] == 0 ? Int(0) : a[t][j] / a[t][t];
                    for (size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                    if (a[t][j] != 0) {
                        for (size_t i = 0; i < rows; ++i) std::swap(a[i][j], a[i][t]);
                        again = true;
                    }
                }
        }
        // enforce divisibility: fold any bad entry into the pivot block
        for (size_t i = t + 1; i < rows && !again; ++i)
            for (size_t j = t + 1; j < cols; ++j)
                if (a[i][j] % a[t][t] != 0) {
                    for (size_t jj = t; jj < cols; ++jj) a[t][jj] += a[i][jj];
                    again = true;
                    break;
                }
        if (again) continue;
        ++t;
    }
    for (size_t i = 0; i < std::min(rows, cols); ++i)
        if (a[i][i] != 0) inv.push_back(abs(a[i][i]));
    return inv;
}

} // namespace

TEST_CASE("smith normal form on known matrices") {
    // [[2,4],[6,8]] -> invariants 2, 4 (det = -8, gcd 2)
    auto s = smith_normal_form({{2, 4}, {6, 8}});
    REQUIRE(s.invariants.size() == 2);
    CHECK(s.invariants[0] == 2);
    CHECK(s.invariants[1] == 4);
    // diag(1, 2, 0)
    auto s2 = smith_normal_form({{1, 0, 0}, {0, 2, 0}, {0, 0, 0}});
    REQUIRE(s2.invariants.size() == 2);
    CHECK(s2.invariants[0] == 1);
    CHECK(s2.invariants[1] == 2);
}

TEST_CASE("smith normal form matches elementary-operation oracle") {
    std::mt19937 rng(4242);
    std::uniform_int_distribution<int> val(-5, 5);
    for (int trial = 0; trial < 25; ++trial) {
        size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
        std::vector<std::vector<Int>> m(rows, std::vector<Int>(cols));
        for (auto& row : m)
            for (auto& x : row) x = val(rng);
        auto got = smith_normal_form(m).invariants;
        auto want = naive_snf(m);
        CHECK(got == want);
        for (size_t i = 0; i + 1 < got.size(); ++i) CHECK(got[i + 1] % got[i] == 0);
    }
}

TEST_CASE("smith transforms are unimodular and diagonalize") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> val(-4, 4);
    for (int trial = 0; trial < 10; ++trial) {
        size_t n = 2 + rng() % 3, m = 2 + rng() % 3;
        std::vector<std::vector<Int>> a(n, std::vector<Int>(m));
        for (auto& row : a)
            for (auto& x : row) x = val(rng);
        auto s = smith_normal_form(a, true);
        // U * a * V should be diagonal with the invariants
        std::vector<std::vector<Int>> ua(n, std::vector<Int>(m, 0)), uav(n, std::vector<Int>(m, 0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < m; ++j)
                for (size_t k = 0; k < n; ++k) ua[i][j] += s.left[i][k] * a[k][j];
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < m; ++j)
                for (size_t k = 0; k < m; ++k) uav[i][j] += ua[i][k] * s.right[k][j];
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < m; ++j) {
                if (i == j && i < s.invariants.size())
                    CHECK(abs(uav[i][j]) == s.invariants[i]);
                else
                    CHECK(uav[i][j] == 0);
            }
    }
}

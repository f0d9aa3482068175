#include "hurwitzlab/rack.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace hwlab {

Rack::Rack(std::vector<std::vector<int>> op) : op_(std::move(op)) {
    int m = (int)op_.size();
    if (m == 0) throw std::invalid_argument("Rack: empty");
    for (const auto& row : op_) {
        if ((int)row.size() != m) throw std::invalid_argument("Rack: ragged table");
        for (int x : row)
            if (x < 0 || x >= m) throw std::invalid_argument("Rack: entry out of range");
    }
    // each (-)^b is a bijection
    for (int b = 0; b < m; ++b) {
        std::vector<char> seen(m, 0);
        for (int a = 0; a < m; ++a) {
            if (seen[op_[a][b]]) throw std::invalid_argument("Rack: translation not bijective");
            seen[op_[a][b]] = 1;
        }
    }
    // self-distributivity
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                if (op_[op_[a][b]][c] != op_[op_[a][c]][op_[b][c]])
                    throw std::invalid_argument("Rack: not self-distributive");
    // orbits of the rack acting on itself
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            int x = find(a), y = find(op_[a][b]);
            if (x != y) parent[std::max(x, y)] = std::min(x, y);
        }
    orbit_count_ = 0;
    for (int a = 0; a < m; ++a)
        if (find(a) == a) ++orbit_count_;
}

Rack conjugation_rack(const FiniteGroup& g, const ConjClass& c) {
    int m = c.size();
    std::vector<std::vector<int>> op(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            int gb = c.elements()[b];
            op[a][b] = c.index_of(g.conj(c.elements()[a], g.inv(gb))); // b^-1 a b
        }
    return Rack(std::move(op));
}

Rack trivial_rack(int size) {
    std::vector<std::vector<int>> op(size, std::vector<int>(size));
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) op[a][b] = a;
    return Rack(std::move(op));
}

std::vector<int> face_map(const Rack& rack, const std::vector<int>& tuple, int i, int eps) {
    int n = (int)tuple.size();
    if (i < 1 || i > n) throw std::out_of_range("face_map: index out of range");
    if (eps != 0 && eps != 1) throw std::out_of_range("face_map: eps must be 0 or 1");
    std::vector<int> out;
    out.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
        if (j == i - 1) continue;
        if (eps == 1 && j < i - 1) out.push_back(rack.apply(tuple[j], tuple[i - 1]));
        else out.push_back(tuple[j]);
    }
    return out;
}

namespace {

std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::uint64_t encode(const std::vector<int>& tuple, int m) {
    std::uint64_t enc = 0;
    for (size_t i = tuple.size(); i-- > 0;) enc = enc * m + tuple[i];
    return enc;
}

std::vector<int> decode(std::uint64_t enc, int m, int n) {
    std::vector<int> t(n);
    for (int i = 0; i < n; ++i) {
        t[i] = (int)(enc % m);
        enc /= m;
    }
    return t;
}

} // namespace

SparseMat rack_boundary(const Rack& rack, int n, BoundarySign sign) {
    int m = rack.size();
    if (n <= 0) return SparseMat(n == 0 ? 0 : 0, n == 0 ? 1 : 0);
    std::uint64_t rows = pow_u64(m, n - 1), cols = pow_u64(m, n);
    std::map<std::pair<std::uint64_t, std::uint64_t>, long long> acc;
    for (std::uint64_t col = 0; col < cols; ++col) {
        auto tuple = decode(col, m, n);
        for (int i = 1; i <= n; ++i) {
            long long s = (i % 2 == 0) ? 1 : -1; // (-1)^i
            if (sign == BoundarySign::kMinusOnePowIPlusOne) s = -s;
            acc[{encode(face_map(rack, tuple, i, 0), m), col}] += s;
            acc[{encode(face_map(rack, tuple, i, 1), m), col}] -= s;
        }
    }
    SparseMat mat((int)rows, (int)cols);
    for (auto& [pos, v] : acc)
        if (v != 0) mat.add((int)pos.first, (int)pos.second, Rational(v));
    return mat;
}

std::vector<int> rack_homology_dims(const Rack& rack, int d_max, std::uint64_t budget) {
    int m = rack.size();
    std::uint64_t top = 1;
    for (int i = 0; i <= d_max + 1; ++i) {
        top *= m;
        if (top > budget)
            throw ResourceError("rack_homology_dims: basis size exceeds budget");
    }
    std::vector<int> ranks(d_max + 2, 0); // rank of del_d, d = 0..d_max+1
    for (int d = 1; d <= d_max + 1; ++d) ranks[d] = rank(rack_boundary(rack, d));
    std::vector<int> dims;
    for (int d = 0; d <= d_max; ++d)
        dims.push_back((int)pow_u64(m, d) - ranks[d] - ranks[d + 1]);
    return dims;
}

IntegralHomology rack_homology_integral(const Rack& rack, int d, std::uint64_t budget) {
    int m = rack.size();
    std::uint64_t top = 1;
    for (int i = 0; i <= d + 1; ++i) {
        top *= m;
        if (top > budget) throw ResourceError("rack_homology_integral: basis size exceeds budget");
    }
    auto dense = [&](int deg) {
        SparseMat s = rack_boundary(rack, deg);
        std::vector<std::vector<Int>> out(s.rows(), std::vector<Int>(s.cols(), 0));
        for (const auto& e : s.entries()) out[e.row][e.col] += numerator(e.value);
        return out;
    };
    int dim_cd = (int)pow_u64(m, d);
    int rank_d = d == 0 ? 0 : rank(rack_boundary(rack, d));
    auto snf = smith_normal_form(dense(d + 1));
    int rank_d1 = (int)snf.invariants.size();
    IntegralHomology h;
    h.free_rank = dim_cd - rank_d - rank_d1;
    for (const Int& v : snf.invariants)
        if (v != 1) h.torsion.push_back(v);
    return h;
}

std::vector<CoproductTerm> shuffle_coproduct(const Rack& rack, const std::vector<int>& tuple) {
    int n = (int)tuple.size();
    std::vector<CoproductTerm> terms;
    for (int p = 0; p <= n; ++p) {
        int q = n - p;
        // (p,q)-shuffles: choose the set of positions sigma(1)<...<sigma(p);
        // the complement gives sigma(p+1)<...<sigma(p+q)
        std::vector<int> pick(p);
        std::iota(pick.begin(), pick.end(), 1);
        while (true) {
            std::vector<char> in_left(n + 1, 0);
            for (int x : pick) in_left[x] = 1;
            std::vector<int> left_pos = pick, right_pos;
            for (int x = 1; x <= n; ++x)
                if (!in_left[x]) right_pos.push_back(x);
            // sign of the permutation sending slot j to sigma(j)
            std::vector<int> perm;
            perm.insert(perm.end(), left_pos.begin(), left_pos.end());
            perm.insert(perm.end(), right_pos.begin(), right_pos.end());
            int inversions = 0;
            for (size_t a = 0; a < perm.size(); ++a)
                for (size_t b = a + 1; b < perm.size(); ++b)
                    if (perm[a] > perm[b]) ++inversions;
            int sgn = inversions % 2 == 0 ? 1 : -1;
            // left factor: compose d^0 faces at positions sigma(1)..sigma(p),
            // applied largest index first so earlier indices stay valid
            std::vector<int> left = tuple;
            for (size_t j = left_pos.size(); j-- > 0;) left = face_map(rack, left, left_pos[j], 0);
            std::vector<int> right = tuple;
            for (size_t j = right_pos.size(); j-- > 0;)
                right = face_map(rack, right, right_pos[j], 1);
            terms.push_back({sgn, left, right});

            // next p-subset
            int k = p - 1;
            while (k >= 0 && pick[k] == n - (p - 1 - k)) --k;
            if (k < 0) break;
            ++pick[k];
            for (int j = k + 1; j < p; ++j) pick[j] = pick[j - 1] + 1;
        }
        if (p == 0 && n == 0) break; // single empty shuffle
    }
    return terms;
}

} // namespace hwlab

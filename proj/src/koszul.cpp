#include "hurwitzlab/koszul.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace hwlab {

namespace {

bool same_matrix(const SparseMat& a, const SparseMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    std::map<std::pair<int, int>, Rational> acc;
    for (const auto& e : a.entries()) acc[{e.row, e.col}] += e.value;
    for (const auto& e : b.entries()) acc[{e.row, e.col}] -= e.value;
    for (const auto& [pos, v] : acc)
        if (v != 0) return false;
    return true;
}

} // namespace

DiscreteModule::DiscreteModule(const BraidSystem& sys, std::vector<int> dims,
                               std::vector<std::vector<SparseMat>> act, std::string name)
    : sys_(&sys), dims_(std::move(dims)), act_(std::move(act)), name_(std::move(name)) {
    if (dims_.empty()) throw std::invalid_argument("DiscreteModule: empty grading");
    int nm = (int)dims_.size() - 1;
    if ((int)act_.size() != sys_->csize())
        throw std::invalid_argument("DiscreteModule: one action family per class element required");
    for (const auto& per_g : act_) {
        if ((int)per_g.size() != nm)
            throw std::invalid_argument("DiscreteModule: action maps must cover gradings 1..n_max");
        for (int n = 1; n <= nm; ++n)
            if (per_g[n - 1].rows() != dims_[n] || per_g[n - 1].cols() != dims_[n - 1])
                throw std::invalid_argument("DiscreteModule: action map shape mismatch");
    }
    // degree-2 relation act_g act_h = act_{g h g^-1} act_g
    for (int g = 0; g < sys_->csize(); ++g)
        for (int h = 0; h < sys_->csize(); ++h) {
            int ghg = sys_->conj_by(h, g);
            for (int n = 2; n <= nm; ++n) {
                SparseMat lhs = act_[g][n - 1].multiply(act_[h][n - 2]);
                SparseMat rhs = act_[ghg][n - 1].multiply(act_[g][n - 2]);
                if (!same_matrix(lhs, rhs))
                    throw std::invalid_argument(
                        "DiscreteModule: action violates the braid relation");
            }
        }
}

DiscreteModule module_from_ring(const BraidSystem& sys, const LevelScan& levels) {
    int nm = levels.n_max();
    std::vector<int> dims(nm + 1);
    for (int n = 0; n <= nm; ++n) dims[n] = levels.dim(n);
    std::vector<std::vector<SparseMat>> act(sys.csize());
    for (int g = 0; g < sys.csize(); ++g)
        for (int n = 1; n <= nm; ++n) {
            SparseMat m(dims[n], dims[n - 1]);
            for (int o = 0; o < dims[n - 1]; ++o) m.add(levels.act(g, n, o), o, 1);
            act[g].push_back(std::move(m));
        }
    return DiscreteModule(sys, std::move(dims), std::move(act), "ring");
}

DiscreteModule trivial_module(const BraidSystem& sys, int n_max) {
    std::vector<int> dims(n_max + 1, 0);
    dims[0] = 1;
    std::vector<std::vector<SparseMat>> act(sys.csize());
    for (int g = 0; g < sys.csize(); ++g)
        for (int n = 1; n <= n_max; ++n) act[g].emplace_back(dims[n], dims[n - 1]);
    return DiscreteModule(sys, std::move(dims), std::move(act), "trivial");
}

DiscreteModule sector_module(const BraidSystem& sys, const LevelScan& levels, int subgroup) {
    int nm = levels.n_max();
    const auto& sub_elems = sys.subgroup_table().subgroups()[subgroup];
    std::vector<char> in_h(sys.csize(), 0);
    for (int g = 0; g < sys.csize(); ++g)
        in_h[g] = std::binary_search(sub_elems.begin(), sub_elems.end(), sys.group_element(g));

    // basis = orbits generating exactly this subgroup; map orbit id -> basis id
    std::vector<int> dims(nm + 1, 0);
    std::vector<std::vector<int>> basis_id(nm + 1);
    for (int n = 0; n <= nm; ++n) {
        basis_id[n].assign(levels.dim(n), -1);
        for (int o = 0; o < levels.dim(n); ++o)
            if (levels.orbits(n)[o].subgroup == subgroup) basis_id[n][o] = dims[n]++;
    }

    std::vector<std::vector<SparseMat>> act(sys.csize());
    for (int g = 0; g < sys.csize(); ++g)
        for (int n = 1; n <= nm; ++n) {
            SparseMat m(dims[n], dims[n - 1]);
            if (in_h[g])
                for (int o = 0; o < levels.dim(n - 1); ++o) {
                    if (basis_id[n - 1][o] < 0) continue;
                    int im = basis_id[n][levels.act(g, n, o)];
                    // concatenating an element of H onto an H-generating tuple
                    // stays in the sector
                    if (im < 0)
                        throw std::logic_error("sector_module: action left the sector");
                    m.add(im, basis_id[n - 1][o], 1);
                }
            act[g].push_back(std::move(m));
        }
    return DiscreteModule(sys, std::move(dims), std::move(act), "sector");
}

SparseMat koszul_differential(const DiscreteModule& m, int n, int d) {
    const BraidSystem& sys = m.system();
    int csize = sys.csize();
    auto pw = [&](int e) {
        std::uint64_t r = 1;
        for (int i = 0; i < e; ++i) r *= (std::uint64_t)csize;
        return r;
    };
    int dim_src_m = m.dim(n - d);
    if (d <= 0) return SparseMat(0, d == 0 ? dim_src_m : 0);
    int dim_dst_m = m.dim(n - d + 1);
    std::uint64_t tuples_src = pw(d), tuples_dst = pw(d - 1);
    SparseMat out((int)(tuples_dst * dim_dst_m), (int)(tuples_src * dim_src_m));
    if (dim_src_m == 0 || n - d + 1 > m.n_max()) return out;

    std::vector<int> tuple(d);
    for (std::uint64_t t = 0; t < tuples_src; ++t) {
        std::uint64_t enc = t;
        for (int i = 0; i < d; ++i) {
            tuple[i] = (int)(enc % csize);
            enc /= csize;
        }
        for (int i = 1; i <= d; ++i) {
            // delete entry i; act by (g_i)^{g_{i+1}...g_d}, x^y = y^-1 x y
            int a = tuple[i - 1];
            for (int j = i; j < d; ++j) a = sys.conj_by_inv(a, tuple[j]);
            std::uint64_t t2 = 0;
            for (int j = d; j-- > 0;)
                if (j != i - 1) t2 = t2 * csize + tuple[j];
            int sgn = (i % 2 == 0) ? 1 : -1;
            const SparseMat& ag = m.act(a, n - d + 1);
            for (const auto& e : ag.entries())
                out.add((int)(t2 * dim_dst_m + e.row), (int)(t * dim_src_m + e.col),
                        sgn * e.value);
        }
    }
    return out;
}

int a_homology(const DiscreteModule& m, int n, int d) {
    if (d < 0 || n < 0) return 0;
    SparseMat d_out = koszul_differential(m, n, d);
    SparseMat d_in = koszul_differential(m, n, d + 1);
    return homology_dim(d_in, d_out);
}

std::vector<DegreeWithin> h_degrees(const DiscreteModule& m, int d_max, int n_max) {
    if (n_max > m.n_max()) throw std::invalid_argument("h_degrees: window exceeds module data");
    std::vector<DegreeWithin> out(d_max + 1);
    for (int d = 0; d <= d_max; ++d)
        for (int n = d; n <= n_max; ++n)
            if (a_homology(m, n, d) > 0) {
                out[d].degree = n;
                out[d].at_window_edge = (n == n_max);
            }
    return out;
}

namespace {

SparseMat u_map(const DiscreteModule& m, int N, int n) {
    // sum over g of the N-fold composite of act_g landing in grading n
    std::map<std::pair<int, int>, Rational> acc;
    const BraidSystem& sys = m.system();
    for (int g = 0; g < sys.csize(); ++g) {
        SparseMat comp = m.act(g, n - N + 1);
        for (int lvl = n - N + 2; lvl <= n; ++lvl) comp = m.act(g, lvl).multiply(comp);
        for (const auto& e : comp.entries()) acc[{e.row, e.col}] += e.value;
    }
    SparseMat out(m.dim(n), m.dim(n - N));
    for (auto& [pos, v] : acc) out.add(pos.first, pos.second, std::move(v));
    return out;
}

} // namespace

std::pair<std::optional<int>, std::optional<int>> cofiber_degrees(
    const DiscreteModule& m, const StabilizerSpec& spec, int n_max) {
    if (n_max > m.n_max())
        throw std::invalid_argument("cofiber_degrees: window exceeds module data");
    int N = spec.N;
    std::optional<int> deg0, deg1;
    for (int n = 0; n <= n_max; ++n) {
        if (n < N) {
            if (m.dim(n) > 0) deg0 = n; // U vanishes below grading N
            continue;
        }
        SparseMat u = u_map(m, N, n);
        int r = rank(u);
        if (r < m.dim(n)) deg0 = n;
        if (r < m.dim(n - N)) deg1 = n;
    }
    return {deg0, deg1};
}

RegularityReport regularity_check(const DiscreteModule& m, const StabilizerSpec& spec,
                                  int d_max, int n_max) {
    RegularityReport rep;
    rep.module = m.name();
    rep.n_max = n_max;
    rep.d_max = d_max;
    rep.N0 = spec.N0;
    rep.B0 = spec.N0 + 2;
    rep.B1 = spec.N0 - 1;
    rep.B2 = spec.N0 + 1;
    if (!spec.found) rep.caveats.push_back("no stabilization element established");

    rep.h = h_degrees(m, d_max, n_max);
    std::optional<int> h01;
    if (rep.h[0].degree) h01 = rep.h[0].degree;
    if (d_max >= 1 && rep.h[1].degree)
        h01 = h01 ? std::max(*h01, *rep.h[1].degree) : rep.h[1].degree;
    for (int d = 1; d <= d_max; ++d) {
        bool ok;
        if (!rep.h[d].degree) ok = true;
        else if (!h01) ok = false;
        else ok = *rep.h[d].degree <= *h01 + rep.B0 * (d - 1);
        rep.bounds_ok.push_back(ok);
        if (rep.h[d].at_window_edge)
            rep.caveats.push_back("h_" + std::to_string(d) +
                                  " is nonzero at the window edge; true degree may be larger");
    }

    auto [deg0, deg1] = cofiber_degrees(m, spec, n_max);
    rep.cofiber_deg0 = deg0;
    rep.cofiber_deg1 = deg1;
    auto within = [](std::optional<int> deg, std::optional<int> bound_base, int n0) {
        if (!deg) return true;
        if (!bound_base) return false;
        return *deg <= *bound_base + n0;
    };
    rep.cofiber_bounds_ok = within(deg0, rep.h[0].degree, spec.N0) &&
                            within(deg1, h01, spec.N0);
    return rep;
}

} // namespace hwlab

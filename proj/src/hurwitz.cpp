#include "hurwitzlab/hurwitz.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "hurwitzlab/exact_linalg.hpp"

namespace hwlab {

BraidSystem::BraidSystem(FiniteGroup g, ConjClass c)
    : group_(std::move(g)), cls_(std::move(c)), subgroups_(subgroups(group_)) {
    int m = csize();
    conj_l_.assign(m, std::vector<int>(m));
    conj_r_.assign(m, std::vector<int>(m));
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            int gx = group_element(x), gy = group_element(y);
            conj_l_[x][y] = cls_.index_of(group_.conj(gx, gy));
            conj_r_[x][y] = cls_.index_of(group_.conj(gx, group_.inv(gy)));
            if (conj_l_[x][y] < 0 || conj_r_[x][y] < 0)
                throw std::logic_error("BraidSystem: c not conjugation-closed");
        }
}

std::uint64_t BraidSystem::encode(const std::vector<int>& tuple) const {
    std::uint64_t enc = 0;
    for (size_t i = tuple.size(); i-- > 0;) enc = enc * (std::uint64_t)csize() + tuple[i];
    return enc;
}

std::vector<int> BraidSystem::decode(std::uint64_t enc, int n) const {
    std::vector<int> tuple(n);
    for (int i = 0; i < n; ++i) {
        tuple[i] = (int)(enc % csize());
        enc /= csize();
    }
    return tuple;
}

std::vector<int> BraidSystem::braid_move(const std::vector<int>& tuple, int i, int sign) const {
    int n = (int)tuple.size();
    if (i < 1 || i > n - 1) throw std::out_of_range("braid_move: index out of range");
    std::vector<int> out = tuple;
    int a = tuple[i - 1], b = tuple[i];
    if (sign >= 0) {
        out[i - 1] = conj_by(b, a); // g_i g_{i+1} g_i^-1
        out[i] = a;
    } else {
        out[i - 1] = b;
        out[i] = conj_by_inv(a, b); // g_{i+1}^-1 g_i g_{i+1}
    }
    return out;
}

int BraidSystem::global_monodromy(const std::vector<int>& tuple) const {
    int m = group_.identity();
    for (int x : tuple) m = group_.mul(m, group_element(x));
    return m;
}

int OrbitTable::orbit_of(std::uint64_t enc) const {
    if (lookup_.empty()) throw std::logic_error("OrbitTable: lookup released");
    return lookup_[enc];
}

void OrbitTable::release_lookup() {
    lookup_.clear();
    lookup_.shrink_to_fit();
}

OrbitTable orbit_table(const BraidSystem& sys, int n, std::uint64_t budget) {
    const int m = sys.csize();
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        if (total > budget / (std::uint64_t)m + 1) total = budget + 1;
        else total *= (std::uint64_t)m;
        if (total > budget)
            throw ResourceError("orbit_table: |c|^n = " + std::to_string(m) + "^" +
                                std::to_string(n) + " exceeds tuple budget " +
                                std::to_string(budget));
    }

    OrbitTable table;
    table.n_ = n;
    table.total_ = total;

    constexpr std::uint16_t kUnseen = std::numeric_limits<std::uint16_t>::max();
    table.lookup_.assign(total, kUnseen);

    std::vector<std::int64_t> pow(n + 1, 1);
    for (int i = 1; i <= n; ++i) pow[i] = pow[i - 1] * m;

    // flat conjugation tables for the inner loop
    std::vector<int> cl(m * m), cr(m * m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            cl[x * m + y] = sys.conj_by(x, y);
            cr[x * m + y] = sys.conj_by_inv(x, y);
        }

    std::vector<std::uint64_t> stack;
    std::vector<int> digits(n);

    for (std::uint64_t seed = 0; seed < total; ++seed) {
        if (table.lookup_[seed] != kUnseen) continue;
        if (table.orbits_.size() >= kUnseen)
            throw ResourceError("orbit_table: more than 65534 orbits");
        std::uint16_t id = (std::uint16_t)table.orbits_.size();
        OrbitInfo info;
        info.rep = seed; // seeds ascend, so the first seed is the minimal encoding
        info.size = 0;
        table.lookup_[seed] = id;
        stack.push_back(seed);
        while (!stack.empty()) {
            std::uint64_t enc = stack.back();
            stack.pop_back();
            ++info.size;
            std::uint64_t rest = enc;
            for (int i = 0; i < n; ++i) {
                digits[i] = (int)(rest % m);
                rest /= m;
            }
            for (int i = 0; i + 1 < n; ++i) {
                int a = digits[i], b = digits[i + 1];
                // sigma_i
                std::uint64_t nb = (std::uint64_t)((std::int64_t)enc +
                                                   (cl[b * m + a] - a) * pow[i] +
                                                   (std::int64_t)(a - b) * pow[i + 1]);
                if (table.lookup_[nb] == kUnseen) {
                    table.lookup_[nb] = id;
                    stack.push_back(nb);
                }
                // sigma_i^-1
                nb = (std::uint64_t)((std::int64_t)enc + (std::int64_t)(b - a) * pow[i] +
                                     (cr[a * m + b] - b) * pow[i + 1]);
                if (table.lookup_[nb] == kUnseen) {
                    table.lookup_[nb] = id;
                    stack.push_back(nb);
                }
            }
        }
        auto rep_tuple = sys.decode(info.rep, n);
        info.monodromy = sys.global_monodromy(rep_tuple);
        std::vector<int> gens;
        for (int x : rep_tuple) gens.push_back(sys.group_element(x));
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        info.subgroup = generated_subgroup(sys.group(), sys.subgroup_table(), gens);
        info.generating = info.subgroup == sys.full_subgroup();
        table.orbits_.push_back(info);
    }

    // quotient generating orbits by simultaneous G-conjugation
    int k = (int)table.orbits_.size();
    std::vector<int> parent(k);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    const FiniteGroup& g = sys.group();
    for (int o = 0; o < k; ++o) {
        if (!table.orbits_[o].generating) continue;
        auto rep_tuple = sys.decode(table.orbits_[o].rep, n);
        for (int h = 0; h < g.order(); ++h) {
            std::uint64_t enc = 0;
            for (size_t i = rep_tuple.size(); i-- > 0;) {
                int cidx = sys.cls().index_of(g.conj(sys.group_element(rep_tuple[i]), h));
                enc = enc * (std::uint64_t)m + cidx;
            }
            int a = find(o), b = find(table.lookup_[enc]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    std::map<int, int> comp_ids;
    for (int o = 0; o < k; ++o) {
        if (!table.orbits_[o].generating) continue;
        int r = find(o);
        auto [it, fresh] = comp_ids.emplace(r, (int)comp_ids.size());
        table.orbits_[o].component = it->second;
    }
    table.component_count_ = (int)comp_ids.size();
    return table;
}

int component_count_connected(const OrbitTable& table) { return table.component_count(); }

bool check_fried_volklein(const BraidSystem& sys, const OrbitTable& table, int g) {
    int n = table.n();
    if (n == 0) return true;
    std::vector<char> witnessed(table.orbit_count(), 0);
    const FiniteGroup& grp = sys.group();
    for (std::uint64_t enc = 0; enc < table.total(); ++enc) {
        int o = table.orbit_of(enc);
        if (!table.orbit(o).generating || witnessed[o]) continue;
        if ((int)(enc % sys.csize()) != g) continue;
        auto tuple = sys.decode(enc, n);
        std::vector<int> tail_gens;
        for (size_t i = 1; i < tuple.size(); ++i) tail_gens.push_back(sys.group_element(tuple[i]));
        if ((int)generated_set(grp, tail_gens).size() == grp.order()) witnessed[o] = 1;
    }
    for (int o = 0; o < table.orbit_count(); ++o)
        if (table.orbit(o).generating && !witnessed[o]) return false;
    return true;
}

ComponentRing::ComponentRing(const BraidSystem& sys, int n_max, std::uint64_t budget)
    : sys_(&sys), n_max_(n_max) {
    for (int n = 0; n <= n_max; ++n) tables_.push_back(orbit_table(sys, n, budget));
}

int ComponentRing::multiply(int n1, int o1, int n2, int o2) const {
    int n = n1 + n2;
    if (n > n_max_) throw std::out_of_range("ComponentRing::multiply: grading overflow");
    std::uint64_t pw = 1;
    for (int i = 0; i < n1; ++i) pw *= (std::uint64_t)sys_->csize();
    std::uint64_t enc = tables_[n1].orbit(o1).rep + tables_[n2].orbit(o2).rep * pw;
    return tables_[n].orbit_of(enc);
}

int ComponentRing::act(int g, int n, int o) const {
    if (n > n_max_) throw std::out_of_range("ComponentRing::act: grading overflow");
    std::uint64_t enc = (std::uint64_t)g + tables_[n - 1].orbit(o).rep * (std::uint64_t)sys_->csize();
    return tables_[n].orbit_of(enc);
}

LevelScan::LevelScan(const BraidSystem& sys, int n_max, std::uint64_t budget)
    : sys_(&sys), n_max_(n_max) {
    levels_.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        OrbitTable cur = orbit_table(sys, n, budget);
        Level& lvl = levels_[n];
        lvl.orbits = cur.orbits();
        lvl.component_count = cur.component_count();
        if (n >= 1) {
            lvl.act.assign(sys.csize(), std::vector<int>(levels_[n - 1].orbits.size()));
            for (int g = 0; g < sys.csize(); ++g)
                for (size_t o = 0; o < levels_[n - 1].orbits.size(); ++o) {
                    std::uint64_t enc = (std::uint64_t)g +
                                        levels_[n - 1].orbits[o].rep * (std::uint64_t)sys.csize();
                    lvl.act[g][o] = cur.orbit_of(enc);
                }
        }
        cur.release_lookup();
    }
}

int LevelScan::act_power(int g, int n, int k, int o) const {
    for (int j = 0; j < k; ++j) o = act(g, n - k + j + 1, o);
    return o;
}

namespace {

// orbit ids at level n generating exactly subgroup h
std::vector<int> sector_orbits(const LevelScan& levels, int n, int h) {
    std::vector<int> out;
    const auto& orbs = levels.orbits(n);
    for (size_t o = 0; o < orbs.size(); ++o)
        if (orbs[o].subgroup == h) out.push_back((int)o);
    return out;
}

bool u_matrix_bijective(const BraidSystem& sys, const LevelScan& levels, int n, int N) {
    int lo = levels.dim(n - N), hi = levels.dim(n);
    if (lo != hi) return false;
    SparseMat mat(hi, lo);
    std::map<std::pair<int, int>, int> counts;
    for (int o = 0; o < lo; ++o)
        for (int g = 0; g < sys.csize(); ++g) counts[{levels.act_power(g, n, N, o), o}] += 1;
    for (auto& [pos, cnt] : counts) mat.add(pos.first, pos.second, cnt);
    return rank(mat) == lo;
}

} // namespace

StabilizerSpec find_stabilizer_u(const BraidSystem& sys, const LevelScan& levels, int D_cap) {
    StabilizerSpec spec;
    spec.D_cap = D_cap;
    spec.n_max_checked = levels.n_max();
    spec.V_grading = sys.csize() * sys.entry_order();
    if (!sys.cls().is_single_class(sys.group()))
        throw std::invalid_argument("find_stabilizer_u: c must be a single conjugacy class");
    if (!is_nonsplitting(sys.group(), sys.cls()))
        throw std::invalid_argument("find_stabilizer_u: (G,c) must be non-splitting");

    const auto& sgt = sys.subgroup_table();
    // subgroups meeting c, with the c-indices they contain
    std::vector<std::pair<int, std::vector<int>>> sectors;
    for (int h = 0; h < sgt.count(); ++h) {
        std::vector<int> members;
        for (int ci = 0; ci < sys.csize(); ++ci) {
            int e = sys.group_element(ci);
            if (std::binary_search(sgt.subgroups()[h].begin(), sgt.subgroups()[h].end(), e))
                members.push_back(ci);
        }
        if (!members.empty()) sectors.emplace_back(h, members);
    }

    int ord = sys.entry_order();
    for (int D = 1; D <= D_cap; ++D) {
        int N = ord * D;
        if (N > levels.n_max()) break;
        // per-n flag: all sector maps are g-independent bijections
        std::vector<char> ok;
        for (int n = N; n <= levels.n_max(); ++n) {
            bool all_ok = true;
            for (const auto& [h, members] : sectors) {
                auto dom = sector_orbits(levels, n - N, h);
                auto img = sector_orbits(levels, n, h);
                std::vector<int> first_map;
                for (size_t gi = 0; gi < members.size() && all_ok; ++gi) {
                    std::vector<int> map;
                    for (int o : dom) map.push_back(levels.act_power(members[gi], n, N, o));
                    if (gi == 0) first_map = map;
                    else if (map != first_map) all_ok = false;
                    // bijection onto the sector
                    std::vector<int> sorted = map;
                    std::sort(sorted.begin(), sorted.end());
                    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
                    if (sorted.size() != map.size() || sorted != img) all_ok = false;
                }
                if (dom.empty() && !img.empty()) all_ok = false;
                if (!all_ok) break;
            }
            ok.push_back(all_ok ? 1 : 0);
        }
        // least onset from which the flags stay true through n_max
        int onset = -1;
        for (int i = (int)ok.size(); i-- > 0;) {
            if (!ok[i]) break;
            onset = N + i;
        }
        if (onset < 0) continue;

        spec.found = true;
        spec.D = D;
        spec.N = N;
        spec.claim_onset = onset;
        // least N0 with U . - bijective on R for all N0 <= n <= n_max
        std::vector<char> bij;
        for (int n = N; n <= levels.n_max(); ++n)
            bij.push_back(u_matrix_bijective(sys, levels, n, N) ? 1 : 0);
        int n0 = -1;
        for (int i = (int)bij.size(); i-- > 0;) {
            if (!bij[i]) break;
            n0 = N + i;
        }
        if (n0 < 0) {
            spec.found = false;
            spec.message = "sector maps stabilize but U is nowhere bijective in the window";
            continue;
        }
        spec.N0 = n0;
        spec.message = "ok";
        return spec;
    }
    if (spec.message.empty())
        spec.message = "no D <= " + std::to_string(D_cap) +
                       " works within n_max = " + std::to_string(levels.n_max()) +
                       " (inconclusive, not a nonexistence claim)";
    spec.found = false;
    return spec;
}

UScanReport scan_u_stability(const BraidSystem& sys, const LevelScan& levels,
                             const StabilizerSpec& spec) {
    if (!spec.found) throw std::invalid_argument("scan_u_stability: no stabilizer spec");
    UScanReport report;
    report.spec = spec;
    int N = spec.N;
    const auto& sgt = sys.subgroup_table();
    for (int n = N; n <= levels.n_max(); ++n) {
        int lo = levels.dim(n - N), hi = levels.dim(n);
        SparseMat mat(hi, lo);
        std::map<std::pair<int, int>, int> counts;
        for (int o = 0; o < lo; ++o)
            for (int g = 0; g < sys.csize(); ++g)
                counts[{levels.act_power(g, n, N, o), o}] += 1;
        for (auto& [pos, cnt] : counts) mat.add(pos.first, pos.second, cnt);
        int r = rank(mat);
        report.global.push_back({n, lo, hi, r == lo, r == hi});

        for (int h = 0; h < sgt.count(); ++h) {
            std::vector<int> members;
            for (int ci = 0; ci < sys.csize(); ++ci)
                if (std::binary_search(sgt.subgroups()[h].begin(), sgt.subgroups()[h].end(),
                                       sys.group_element(ci)))
                    members.push_back(ci);
            if (members.empty()) continue;
            auto dom = sector_orbits(levels, n - N, h);
            auto img = sector_orbits(levels, n, h);
            if (dom.empty() && img.empty()) continue;
            bool bij = true, indep = true;
            std::vector<int> first_map;
            for (size_t gi = 0; gi < members.size(); ++gi) {
                std::vector<int> map;
                for (int o : dom) map.push_back(levels.act_power(members[gi], n, N, o));
                if (gi == 0) first_map = map;
                else if (map != first_map) indep = false;
                std::vector<int> sorted = map;
                std::sort(sorted.begin(), sorted.end());
                sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
                if (sorted.size() != map.size() || sorted != img) bij = false;
            }
            if (dom.empty() && !img.empty()) bij = false;
            report.sectors.push_back({n, h, (int)dom.size(), (int)img.size(), bij, indep});
        }
    }
    return report;
}

std::vector<VScanRow> scan_v_stability(const BraidSystem& sys, const LevelScan& levels) {
    std::vector<VScanRow> rows;
    int vg = sys.csize() * sys.entry_order();
    if (vg > levels.n_max()) return rows;
    // V = prod over g (in c order) of [g]^{|g|}; left-multiplication composes
    // single-letter concatenations with the last letter applied first
    std::vector<int> word;
    for (int g = 0; g < sys.csize(); ++g)
        for (int j = 0; j < sys.entry_order(); ++j) word.push_back(g);
    for (int n = 1; n + vg <= levels.n_max(); ++n) {
        int target = n + vg;
        std::vector<int> dom, img;
        const auto& lo_orbs = levels.orbits(n);
        for (size_t o = 0; o < lo_orbs.size(); ++o)
            if (lo_orbs[o].generating) dom.push_back((int)o);
        const auto& hi_orbs = levels.orbits(target);
        for (size_t o = 0; o < hi_orbs.size(); ++o)
            if (hi_orbs[o].generating) img.push_back((int)o);
        std::vector<int> map;
        for (int o : dom) {
            int cur = o;
            for (size_t j = word.size(); j-- > 0;) {
                int lvl = target - (int)j;
                cur = levels.act(word[j], lvl, cur);
            }
            map.push_back(cur);
        }
        std::vector<int> sorted = map;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        bool inj = sorted.size() == map.size();
        bool surj = sorted == img;
        rows.push_back({n, (int)dom.size(), (int)img.size(), inj, surj});
    }
    return rows;
}

} // namespace hwlab

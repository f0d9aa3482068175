#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hurwitzlab/groups.hpp"

namespace hwlab {

/// Thrown when an enumeration would exceed its configured budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kDefaultTupleBudget = 100000000ull; // 1e8 tuple visits

/// A pair (G, c) prepared for braid-orbit enumeration: entries of tuples are
/// indices into c, and tuples are encoded as base-|c| integers (entry i is
/// digit i).
class BraidSystem {
public:
    BraidSystem(FiniteGroup g, ConjClass c);

    const FiniteGroup& group() const { return group_; }
    const ConjClass& cls() const { return cls_; }
    int csize() const { return (int)cls_.size(); }
    int entry_order() const { return cls_.common_order(); }
    const SubgroupTable& subgroup_table() const { return subgroups_; }
    int full_subgroup() const { return subgroups_.full_id(); }

    /// c-index of (y x y^-1), arguments as c-indices
    int conj_by(int x, int y) const { return conj_l_[x][y]; }
    /// c-index of (y^-1 x y)
    int conj_by_inv(int x, int y) const { return conj_r_[x][y]; }
    int group_element(int cidx) const { return cls_.elements()[cidx]; }

    std::uint64_t encode(const std::vector<int>& tuple) const;
    std::vector<int> decode(std::uint64_t enc, int n) const;

    /// Elementary braid move on entries (c-indices); sign +1 is
    /// sigma_i : (.., g_i g_{i+1} g_i^{-1}, g_i, ..), sign -1 its inverse.
    /// i is 1-based, 1 <= i <= n-1.
    std::vector<int> braid_move(const std::vector<int>& tuple, int i, int sign) const;

    /// Ordered product of the tuple's entries in G (group element index).
    int global_monodromy(const std::vector<int>& tuple) const;

private:
    FiniteGroup group_;
    ConjClass cls_;
    SubgroupTable subgroups_;
    std::vector<std::vector<int>> conj_l_, conj_r_;
};

struct OrbitInfo {
    std::uint64_t rep;      // lexicographically minimal encoding
    std::uint64_t size;
    int monodromy;          // group element index
    int subgroup;           // id in the system's SubgroupTable
    bool generating;
    int component = -1;     // id after G-conjugation quotient; -1 if not generating
};

/// Partition of c^n under the Hurwitz braid moves.
class OrbitTable {
public:
    int n() const { return n_; }
    std::uint64_t total() const { return total_; }
    int orbit_count() const { return (int)orbits_.size(); }
    const std::vector<OrbitInfo>& orbits() const { return orbits_; }
    const OrbitInfo& orbit(int id) const { return orbits_[id]; }
    int component_count() const { return component_count_; }

    bool has_lookup() const { return !lookup_.empty(); }
    int orbit_of(std::uint64_t enc) const;
    /// Drop the per-tuple id array (big at large n); metadata stays.
    void release_lookup();

private:
    friend OrbitTable orbit_table(const BraidSystem&, int, std::uint64_t);
    int n_ = 0;
    std::uint64_t total_ = 0;
    std::vector<OrbitInfo> orbits_;
    std::vector<std::uint16_t> lookup_;
    int component_count_ = 0;
};

/// Full BFS partition of c^n. Budget is in tuple visits.
OrbitTable orbit_table(const BraidSystem& sys, int n,
                       std::uint64_t budget = kDefaultTupleBudget);

/// Number of G-conjugation classes of generating orbits (components of the
/// connected Hurwitz space).
int component_count_connected(const OrbitTable& table);

/// Every generating orbit at this length contains a tuple (g, g'_2, ..., g'_n)
/// whose tail generates G. g is a c-index. Needs the table's lookup.
bool check_fried_volklein(const BraidSystem& sys, const OrbitTable& table, int g);

/// Graded ring R with basis c^n / beta_n for 0 <= n <= n_max; product by
/// concatenation. Keeps full lookup tables, so intended for small n_max.
class ComponentRing {
public:
    ComponentRing(const BraidSystem& sys, int n_max,
                  std::uint64_t budget = kDefaultTupleBudget);

    const BraidSystem& system() const { return *sys_; }
    int n_max() const { return n_max_; }
    int dim(int n) const { return tables_[n].orbit_count(); }
    const OrbitTable& table(int n) const { return tables_[n]; }

    /// orbit id of the concatenation of representatives
    int multiply(int n1, int o1, int n2, int o2) const;
    /// orbit id of [g] . o  (left concatenation), g a c-index
    int act(int g, int n, int o) const;

private:
    const BraidSystem* sys_;
    int n_max_;
    std::vector<OrbitTable> tables_;
};

/// Per-grading orbit metadata plus the left-concatenation transition maps
/// act[n][g] : orbits(n-1) -> orbits(n), kept without the per-tuple arrays.
/// This is the light-weight structure the stability scans run on.
class LevelScan {
public:
    LevelScan(const BraidSystem& sys, int n_max,
              std::uint64_t budget = kDefaultTupleBudget);

    const BraidSystem& system() const { return *sys_; }
    int n_max() const { return n_max_; }
    int dim(int n) const { return (int)levels_[n].orbits.size(); }
    const std::vector<OrbitInfo>& orbits(int n) const { return levels_[n].orbits; }
    /// orbit id at level n of [g] . o with o at level n-1
    int act(int g, int n, int o) const { return levels_[n].act[g][o]; }
    /// orbit id at level n of [g]^k . o with o at level n-k
    int act_power(int g, int n, int k, int o) const;
    int component_count(int n) const { return levels_[n].component_count; }

private:
    struct Level {
        std::vector<OrbitInfo> orbits;
        std::vector<std::vector<int>> act; // [g][orbit at n-1]
        int component_count = 0;
    };
    const BraidSystem* sys_;
    int n_max_;
    std::vector<Level> levels_;
};

struct StabilizerSpec {
    bool found = false;
    int D = 0;
    int N = 0;            // grading of U = entry_order * D
    int N0 = -1;          // least onset of global bijectivity within the window
    int claim_onset = -1; // least n from which all sector maps are g-independent bijections
    int n_max_checked = 0;
    int D_cap = 0;
    int V_grading = 0;    // |c| * entry_order
    std::string message;
};

struct SectorScanRow {
    int n;
    int subgroup;
    int dim_lo, dim_hi; // |S_{n-N}(H)|, |S_n(H)|
    bool bijective;
    bool g_independent;
};

struct UScanRow {
    int n;
    int dim_lo, dim_hi; // dim R_{n-N}, dim R_n
    bool injective, surjective;
};

struct UScanReport {
    StabilizerSpec spec;
    std::vector<UScanRow> global;
    std::vector<SectorScanRow> sectors;
};

struct VScanRow {
    int n;              // source grading
    int dim_lo, dim_hi; // generating-orbit counts at n and n + V_grading
    bool injective, surjective;
};

/// Smallest D <= D_cap whose sector maps [g]^{|g|D} . - : S_{n-N}(H) -> S_n(H)
/// are bijections, independent of g in c∩H, from some onset up to n_max; N0 is
/// the least onset of bijectivity of U . - on R within the window.
/// Requires c to be a single generating class and (G,c) non-splitting.
StabilizerSpec find_stabilizer_u(const BraidSystem& sys, const LevelScan& levels, int D_cap);

/// Per-n injectivity/surjectivity table for U . -, global and per sector.
UScanReport scan_u_stability(const BraidSystem& sys, const LevelScan& levels,
                             const StabilizerSpec& spec);

/// Exploratory scan of V = prod_g [g]^{|g|} restricted to generating orbits.
std::vector<VScanRow> scan_v_stability(const BraidSystem& sys, const LevelScan& levels);

} // namespace hwlab

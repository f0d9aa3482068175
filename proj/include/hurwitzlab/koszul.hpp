#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hurwitzlab/exact_linalg.hpp"
#include "hurwitzlab/hurwitz.hpp"

namespace hwlab {

/// Graded R-module supported in homological degree 0: rational vector spaces
/// M_n with action maps act_g : M_{n-1} -> M_n for each g in c, satisfying the
/// degree-2 Hurwitz relation act_g act_h = act_{ghg^-1} act_g (validated).
class DiscreteModule {
public:
    DiscreteModule(const BraidSystem& sys, std::vector<int> dims,
                   std::vector<std::vector<SparseMat>> act, std::string name);

    const BraidSystem& system() const { return *sys_; }
    int n_max() const { return (int)dims_.size() - 1; }
    int dim(int n) const { return n >= 0 && n <= n_max() ? dims_[n] : 0; }
    /// matrix of act_g : M_{n-1} -> M_n (g a c-index, 1 <= n <= n_max)
    const SparseMat& act(int g, int n) const { return act_[g][n - 1]; }
    const std::string& name() const { return name_; }

private:
    const BraidSystem* sys_;
    std::vector<int> dims_;
    std::vector<std::vector<SparseMat>> act_; // [g][n-1]
    std::string name_;
};

/// R as a left module over itself; M_n has the orbit basis.
DiscreteModule module_from_ring(const BraidSystem& sys, const LevelScan& levels);
/// k in grading 0 with zero action.
DiscreteModule trivial_module(const BraidSystem& sys, int n_max);
/// Span of the orbits generating exactly the subgroup with this id; act_g is
/// left concatenation for g in H and zero otherwise.
DiscreteModule sector_module(const BraidSystem& sys, const LevelScan& levels, int subgroup);

/// Koszul differential d1 : k{c}^{(x)d} (x) M_{n-d} -> k{c}^{(x)d-1} (x) M_{n-d+1},
/// d1(g_1 (x) ... (x) g_d (x) m) =
///   sum_i (-1)^i g_1 (x) .. Ghat_i .. (x) g_d (x) act_{(g_i)^{g_{i+1}...g_d}}(m),
/// with x^y = y^-1 x y. Basis index of (tuple t, module basis j) is
/// t * dim(M) + j with t the base-|c| encoding.
SparseMat koszul_differential(const DiscreteModule& m, int n, int d);

/// dim H^A_{n,d}(M), the homology of the Koszul complex at position d in
/// grading n.
int a_homology(const DiscreteModule& m, int n, int d);

struct DegreeWithin {
    std::optional<int> degree;  // nullopt = vanishes throughout the window (-inf)
    bool at_window_edge = false; // nonzero at n_max: true degree may exceed window
};

struct RegularityReport {
    std::string module;
    int n_max = 0, d_max = 0;
    int N0 = 0, B0 = 0, B1 = 0, B2 = 0;
    std::vector<DegreeWithin> h;   // h^A_d for d = 0..d_max
    std::vector<bool> bounds_ok;   // d = 1..d_max: h_d <= max(h_0,h_1) + B0(d-1)
    std::optional<int> cofiber_deg0, cofiber_deg1;
    bool cofiber_bounds_ok = true;
    std::vector<std::string> caveats;
};

/// h^A_d(M) for d <= d_max as observed within the grading window [0, n_max].
std::vector<DegreeWithin> h_degrees(const DiscreteModule& m, int d_max, int n_max);

/// deg0 = largest n with coker(U.- : M_{n-N} -> M_n) != 0, deg1 = largest n
/// with ker != 0 (nullopt = none in window). U = sum_g [g]^{|g|D} per spec.
std::pair<std::optional<int>, std::optional<int>> cofiber_degrees(
    const DiscreteModule& m, const StabilizerSpec& spec, int n_max);

/// Full report: degrees, the regularity bound with B0 = N0+2, and the
/// cofiber-degree bounds of the A-homology criterion.
RegularityReport regularity_check(const DiscreteModule& m, const StabilizerSpec& spec,
                                  int d_max, int n_max);

} // namespace hwlab

#pragma once

#include <cstdint>
#include <vector>

#include "hurwitzlab/exact_linalg.hpp"
#include "hurwitzlab/groups.hpp"
#include "hurwitzlab/hurwitz.hpp"

namespace hwlab {

/// A rack: set with a binary operation a^b whose right translations are
/// bijections, satisfying (a^b)^c = (a^c)^(b^c). Axioms checked at
/// construction.
class Rack {
public:
    explicit Rack(std::vector<std::vector<int>> op);

    int size() const { return (int)op_.size(); }
    int apply(int a, int b) const { return op_[a][b]; } // a^b
    /// number of orbits of the rack acting on itself
    int orbit_count() const { return orbit_count_; }

private:
    std::vector<std::vector<int>> op_;
    int orbit_count_;
};

/// Conjugation rack on c: a^b := b^-1 a b.
Rack conjugation_rack(const FiniteGroup& g, const ConjClass& c);
/// Rack with a^b = a for all b.
Rack trivial_rack(int size);

/// Face map on a basis tuple (entries are rack elements, 1-based i):
/// eps = 0 deletes entry i; eps = 1 deletes entry i and replaces each earlier
/// entry x by x^{g_i}.
std::vector<int> face_map(const Rack& rack, const std::vector<int>& tuple, int i, int eps);

enum class BoundarySign { kMinusOnePowI, kMinusOnePowIPlusOne };

/// Boundary matrix del_n : C_n -> C_{n-1} of the rack space,
/// del = sum_i (-1)^i (d_i^0 - d_i^1) (or the opposite overall sign).
SparseMat rack_boundary(const Rack& rack, int n,
                        BoundarySign sign = BoundarySign::kMinusOnePowI);

/// dims of H_d(Bc; Q) for 0 <= d <= d_max. Budget caps the basis size
/// size^{d_max+1}.
std::vector<int> rack_homology_dims(const Rack& rack, int d_max,
                                    std::uint64_t budget = kDefaultTupleBudget);

/// Integral homology of degree d: free rank and torsion invariants,
/// via Smith normal form.
struct IntegralHomology {
    int free_rank;
    std::vector<Int> torsion;
};
IntegralHomology rack_homology_integral(const Rack& rack, int d,
                                        std::uint64_t budget = kDefaultTupleBudget);

/// One term of the Serre-diagonal coproduct: sign * (left tensor right).
struct CoproductTerm {
    int sign;
    std::vector<int> left;
    std::vector<int> right;
};

/// Quantum shuffle coproduct of a basis tensor:
/// sum over p+q = n and (p,q)-shuffles sigma of
/// sign(sigma) d^0_{sigma(1)}..d^0_{sigma(p)}(x) (x) d^1_{sigma(p+1)}..d^1_{sigma(p+q)}(x).
std::vector<CoproductTerm> shuffle_coproduct(const Rack& rack, const std::vector<int>& tuple);

} // namespace hwlab

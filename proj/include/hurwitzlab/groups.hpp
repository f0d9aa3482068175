#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hwlab {

/// Multiplication-table group. Elements are indices 0..order-1.
class FiniteGroup {
public:
    /// Validates identity/inverse laws, and associativity (exhaustively
    /// for order <= 64, on random triples above).
    FiniteGroup(std::vector<std::vector<int>> mul, std::vector<std::string> labels = {});

    int order() const { return order_; }
    int identity() const { return identity_; }
    int mul(int a, int b) const { return mul_[a][b]; }
    int inv(int a) const { return inv_[a]; }
    int conj(int a, int b) const { return mul(mul(b, a), inv(b)); } // b a b^-1
    int power(int a, long long n) const;
    int element_order(int a) const;
    const std::string& label(int a) const { return labels_[a]; }

    bool is_abelian() const;
    std::vector<int> conjugacy_class_of(int a) const;

private:
    int order_;
    int identity_;
    std::vector<std::vector<int>> mul_;
    std::vector<int> inv_;
    std::vector<std::string> labels_;
};

/// Finite abelian ell-group, given as ⊕ Z/ell^{e_i} with e_1 >= e_2 >= ...
struct AbelianGroupType {
    long long prime = 3;
    std::vector<int> exponents; // non-increasing, positive; empty = trivial group
    long long order() const;

    AbelianGroupType() = default;
    AbelianGroupType(long long ell, std::vector<int> exps);
};

/// Conjugation-invariant subset of a group whose members share a common order.
class ConjClass {
public:
    ConjClass(const FiniteGroup& g, std::vector<int> elements);

    const std::vector<int>& elements() const { return elements_; } // sorted
    int size() const { return (int)elements_.size(); }
    int common_order() const { return common_order_; }
    bool contains(int x) const;
    /// index of x within elements(), -1 if absent
    int index_of(int x) const;
    /// true iff the set is a single conjugacy class of the ambient group
    bool is_single_class(const FiniteGroup& g) const;

private:
    std::vector<int> elements_;
    int common_order_;
};

/// All subgroups, as sorted element-index sets, deduplicated.
class SubgroupTable {
public:
    explicit SubgroupTable(std::vector<std::vector<int>> subgroups);
    const std::vector<std::vector<int>>& subgroups() const { return subgroups_; }
    int count() const { return (int)subgroups_.size(); }
    /// id of the subgroup with exactly this (sorted) element set, -1 if absent
    int find(const std::vector<int>& elements) const;
    bool contains(int sup, int sub) const; // subgroup `sub` ⊆ subgroup `sup`
    int trivial_id() const { return trivial_; }
    int full_id() const { return full_; }

private:
    std::vector<std::vector<int>> subgroups_;
    int trivial_ = -1, full_ = -1;
};

// constructors
FiniteGroup cyclic_group(int n);
FiniteGroup symmetric_group(int n); // n <= 6
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

/// G = A ⋊ Z^× with inversion action; returns G together with the set of
/// involutions (a, -1). Rejects ell = 2.
std::pair<FiniteGroup, ConjClass> build_generalized_dihedral(const AbelianGroupType& a);

// predicates
bool is_admissible(const FiniteGroup& g, const ConjClass& c);
bool is_nonsplitting(const FiniteGroup& g, const ConjClass& c);

/// Closure of S under mul and inv, as a sorted element set.
std::vector<int> generated_set(const FiniteGroup& g, const std::vector<int>& gens);

/// Complete subgroup enumeration by closure sweep; |G| <= 200.
SubgroupTable subgroups(const FiniteGroup& g);

/// id of <S> in the table
int generated_subgroup(const FiniteGroup& g, const SubgroupTable& table,
                       const std::vector<int>& gens);

/// Parse "gdih:3", "gdih:3,3", "sym:3", "cyclic:4", or "json:<path>"
/// (JSON file {order, mul, class}). Returns the group and the distinguished
/// conjugation-invariant subset.
std::pair<FiniteGroup, ConjClass> parse_group_spec(const std::string& spec);

} // namespace hwlab

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hurwitzlab/groups.hpp"
#include "hurwitzlab/hurwitz.hpp"

namespace hwlab {

/// F_{p^k}, table-based. Elements are 0..q-1, the base-p digit encoding of
/// coefficient vectors in F_p[x]/(modulus); for k = 1 elements are residues.
/// The modulus is the lexicographically smallest monic irreducible of degree k.
class FiniteField {
public:
    FiniteField(int p, int k);

    int p() const { return p_; }
    int k() const { return k_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; } // little-endian, monic
    std::string modulus_string() const;

    int add(int a, int b) const { return add_[a][b]; }
    int sub(int a, int b) const { return add_[a][neg_[b]]; }
    int neg(int a) const { return neg_[a]; }
    int mul(int a, int b) const { return mul_[a][b]; }
    int inv(int a) const;
    int pow(int a, long long e) const;
    bool is_square(int a) const;
    /// smallest non-square in element order (never 0 or 1)
    int non_square() const { return non_square_; }

private:
    int p_, k_, q_;
    std::vector<int> modulus_;
    std::vector<std::vector<int>> add_, mul_;
    std::vector<int> neg_, inv_;
    int non_square_;
};

/// Polynomials over a FiniteField: little-endian coefficient vectors with no
/// trailing zeros ({} is the zero polynomial).
using Poly = std::vector<int>;

int poly_deg(const Poly& f); // deg 0 poly -> 0, zero poly -> -1
Poly poly_trim(Poly f);
Poly poly_add(const FiniteField& F, const Poly& a, const Poly& b);
Poly poly_sub(const FiniteField& F, const Poly& a, const Poly& b);
Poly poly_mul(const FiniteField& F, const Poly& a, const Poly& b);
Poly poly_scale(const FiniteField& F, const Poly& a, int c);
/// (quotient, remainder) of a by b (b != 0)
std::pair<Poly, Poly> poly_divmod(const FiniteField& F, const Poly& a, const Poly& b);
Poly poly_mod(const FiniteField& F, const Poly& a, const Poly& b);
Poly poly_derivative(const FiniteField& F, const Poly& a);
Poly poly_monic(const FiniteField& F, const Poly& a);
Poly poly_gcd(const FiniteField& F, Poly a, Poly b); // monic (or zero)
/// g = gcd = s*a + t*b, g monic unless zero
void poly_ext_gcd(const FiniteField& F, const Poly& a, const Poly& b,
                  Poly& g, Poly& s, Poly& t);
int poly_eval(const FiniteField& F, const Poly& f, int x);
std::string poly_string(const FiniteField& F, const Poly& f);
bool poly_is_squarefree(const FiniteField& F, const Poly& f);

/// All monic squarefree polynomials of degree n, ordered by coefficient
/// encoding. Count is q^n - q^{n-1} for n >= 2, q for n = 1.
std::vector<Poly> enumerate_monic_squarefree(const FiniteField& F, int n,
                                             std::uint64_t budget = kDefaultTupleBudget);

/// y^2 = unit * f(t) with f monic squarefree of odd degree 2g+1. The twisted
/// curve (unit = a fixed non-square eps) is handled through the monic model
/// Y^2 = F(T) obtained from the substitution T = eps^{-1} t, Y = s^{-1} y
/// with s^2 = eps^{deg f + 1}; the substitution is defined over F_q and
/// preserves the coordinate ring, hence the class group.
struct Curve {
    const FiniteField* field;
    Poly f;          // the monic squarefree polynomial defining the field
    bool twisted;    // true: the curve is y^2 = eps * f
    Poly model;      // monic squarefree; equals f when not twisted
    int genus;
};

Curve make_curve(const FiniteField& F, Poly f, bool twisted);

/// All 2(q^n - q^{n-1}) curves of discriminant degree n (odd), ordered by
/// (f encoding, twist).
std::vector<Curve> curve_sweep(const FiniteField& F, int n,
                               std::uint64_t budget = kDefaultTupleBudget);

/// Divisor class in Mumford form on curve.model: u monic, deg v < deg u <= g,
/// u | v^2 - model. Identity is (1, 0).
struct MumfordDivisor {
    Poly u, v;
    bool operator==(const MumfordDivisor& o) const { return u == o.u && v == o.v; }
    bool operator<(const MumfordDivisor& o) const { return std::tie(u, v) < std::tie(o.u, o.v); }
};

MumfordDivisor mumford_identity();
bool mumford_valid(const Curve& c, const MumfordDivisor& d);
MumfordDivisor cantor_compose_reduce(const Curve& c, const MumfordDivisor& a,
                                     const MumfordDivisor& b);
MumfordDivisor mumford_negate(const Curve& c, const MumfordDivisor& d);
MumfordDivisor mumford_scalar(const Curve& c, const MumfordDivisor& d, long long k);

struct AbelianGroupStructure {
    long long order = 1;
    std::vector<long long> invariant_factors; // d_1 | d_2 | ...
    bool structure_known = true;              // false: order-only fallback
    AbelianGroupType ell_part(long long ell) const;
};

/// Full Jacobian enumeration: order plus invariant factors via
/// ell^k-torsion counting. Falls back to order-only via zeta_class_number
/// when the enumeration would exceed the budget.
AbelianGroupStructure jacobian_structure(const Curve& c, std::uint64_t budget = 1000000);

/// Class number h = P(1) from point counts over F_{q^i}, i <= g (g <= 3),
/// via Newton's identities and the functional equation.
long long zeta_class_number(const Curve& c);

/// true iff q odd, ell coprime to q and to q - 1.
bool good_for_ell(int q, long long ell);

/// Number of surjective homomorphisms source -> target (same ell; brute force
/// over generator images, memoized on the type pair).
long long count_surjections(const AbelianGroupType& source, const AbelianGroupType& target);

/// mu(A) = prod_{i>=1}(1 - ell^{-i}) / |Aut A|, truncated so the product's
/// relative truncation error is below tol.
double mu_cohen_lenstra(const AbelianGroupType& a, double tol = 1e-9);

struct CurveRow {
    std::string f;
    bool twisted;
    long long class_number;
    std::string ell_part;
    long long m_a;
    bool iota;
};

struct CLReport {
    int q = 0, n = 0;
    std::string a;
    long long ell = 0;
    long long s_n_size = 0;
    long long sum_ma = 0;
    double average = 0.0;   // sum_ma / s_n_size
    double density = 0.0;   // fraction with ell-part isomorphic to A
    double mu_reference = 0.0;
    bool good = true;       // good_for_ell(q, ell)
    int eps = 0;            // the non-square used for twists
    std::string modulus;
    std::vector<CurveRow> rows; // filled when keep_rows
};

/// Sweep of all curves of discriminant degree n with m_A and the indicator
/// aggregated. Rejects q bad for ell(A) unless allow_bad.
CLReport cl_statistics(const FiniteField& F, int n, const AbelianGroupType& a,
                       bool keep_rows = false, bool allow_bad = false,
                       std::uint64_t budget = kDefaultTupleBudget);

} // namespace hwlab

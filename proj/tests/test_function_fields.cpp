#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "hurwitzlab/function_fields.hpp"

using namespace hwlab;

TEST_CASE("finite field construction and arithmetic") {
    SUBCASE("prime fields") {
        FiniteField F(5, 1);
        CHECK(F.q() == 5);
        CHECK(F.mul(2, 3) == 1);
        CHECK(F.add(4, 4) == 3);
        CHECK(F.inv(3) == 2);
        CHECK(F.pow(2, 4) == 1);
        CHECK(F.is_square(4));
        CHECK(!F.is_square(2));
        CHECK(F.non_square() == 2);
    }
    SUBCASE("F_9 field axioms hold") {
        FiniteField F(3, 2);
        CHECK(F.q() == 9);
        for (int a = 0; a < 9; ++a) {
            CHECK(F.add(a, 0) == a);
            CHECK(F.mul(a, 1) == a);
            CHECK(F.add(a, F.neg(a)) == 0);
            if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
            for (int b = 0; b < 9; ++b) {
                CHECK(F.add(a, b) == F.add(b, a));
                CHECK(F.mul(a, b) == F.mul(b, a));
                for (int c = 0; c < 9; ++c)
                    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
            }
        }
        // multiplicative group is cyclic of order 8: x^8 = 1 for x != 0
        for (int a = 1; a < 9; ++a) CHECK(F.pow(a, 8) == 1);
        // exactly (q-1)/2 non-zero squares
        int squares = 0;
        for (int a = 1; a < 9; ++a)
            if (F.is_square(a)) ++squares;
        CHECK(squares == 4);
    }
    SUBCASE("invalid parameters are rejected") {
        CHECK_THROWS(FiniteField(2, 1)); // characteristic 2 unsupported
        CHECK_THROWS(FiniteField(4, 1)); // not prime
        CHECK_THROWS(FiniteField(6, 1));
    }
}

TEST_CASE("polynomial arithmetic basics") {
    FiniteField F(5, 1);
    Poly a = {1, 2, 3}; // 3t^2 + 2t + 1
    Poly b = {4, 1};    // t + 4
    CHECK(poly_deg(a) == 2);
    CHECK(poly_deg(Poly{}) == -1);
    Poly prod = poly_mul(F, a, b);
    auto [q, r] = poly_divmod(F, prod, b);
    CHECK(r == Poly{});
    CHECK(q == a);
    CHECK(poly_eval(F, a, 2) == (3 * 4 + 2 * 2 + 1) % 5);
    CHECK(poly_gcd(F, prod, b) == poly_monic(F, b));
    Poly g, s, t;
    poly_ext_gcd(F, a, b, g, s, t);
    CHECK(poly_add(F, poly_mul(F, s, a), poly_mul(F, t, b)) == g);
    CHECK(poly_is_squarefree(F, b));
    CHECK(!poly_is_squarefree(F, poly_mul(F, b, b)));
}

TEST_CASE("squarefree enumeration matches the counting formula") {
    for (auto [p, k] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
        FiniteField F(p, k);
        long long q = F.q();
        CHECK((long long)enumerate_monic_squarefree(F, 1).size() == q);
        long long qn = q;
        for (int n = 2; n <= 4; ++n) {
            qn *= q;
            auto polys = enumerate_monic_squarefree(F, n);
            CHECK((long long)polys.size() == qn - qn / q);
            for (const auto& f : polys) {
                CHECK(poly_deg(f) == n);
                CHECK(f.back() == 1);
                CHECK(poly_is_squarefree(F, f));
            }
        }
    }
    FiniteField F5(5, 1);
    CHECK(enumerate_monic_squarefree(F5, 3).size() == 100);
}

TEST_CASE("curve sweep size and twist models") {
    FiniteField F(5, 1);
    auto curves3 = curve_sweep(F, 3);
    CHECK(curves3.size() == 200); // 2 * (125 - 25)
    for (const auto& c : curves3) {
        CHECK(c.genus == 1);
        CHECK(poly_deg(c.model) == 3);
        CHECK(c.model.back() == 1);
        CHECK(poly_is_squarefree(F, c.model));
        if (!c.twisted) CHECK(c.model == c.f);
    }
    // twist model substitution check: T = eps^{-1} t maps roots of eps*f to
    // roots of the monic model, and more generally point (t0, y0) on
    // y^2 = eps f(t) corresponds to (eps^{-1} t0, s^{-1} y0) on Y^2 = model(T)
    int eps = F.non_square();
    for (const auto& c : curves3) {
        if (!c.twisted) continue;
        for (int t0 = 0; t0 < F.q(); ++t0) {
            int rhs = F.mul(eps, poly_eval(F, c.f, t0));
            int model_rhs = poly_eval(F, c.model, F.mul(F.inv(eps), t0));
            // Y^2 = model(T) with Y = s^{-1} y and s^2 = eps^{n+1}: the two
            // right-hand sides differ by the square factor s^2
            int s2 = F.pow(eps, poly_deg(c.f) + 1);
            CHECK(rhs == F.mul(s2, model_rhs));
            // squareness (= number of points above t0) is preserved
            CHECK(F.is_square(rhs) == F.is_square(model_rhs));
        }
    }
    CHECK(curve_sweep(F, 5, 1000000000ull).size() == 5000);
    CHECK_THROWS(curve_sweep(F, 4)); // discriminant degree must be odd
}

TEST_CASE("Cantor arithmetic forms a group") {
    FiniteField F(5, 1);
    std::mt19937 rng(12345);
    int tested_curves = 0;
    for (const auto& c : curve_sweep(F, 3)) {
        if (tested_curves >= 12) break;
        ++tested_curves;
        // enumerate the whole Jacobian by brute force over Mumford pairs
        std::vector<MumfordDivisor> elems;
        elems.push_back(mumford_identity());
        for (int u0 = 0; u0 < F.q(); ++u0)
            for (int v0 = 0; v0 < F.q(); ++v0) {
                MumfordDivisor d{{u0, 1}, v0 == 0 ? Poly{} : Poly{v0}};
                if (mumford_valid(c, d)) elems.push_back(d);
            }
        // identity and inverses
        for (const auto& d : elems) {
            CHECK(cantor_compose_reduce(c, d, mumford_identity()) == d);
            CHECK(cantor_compose_reduce(c, d, mumford_negate(c, d)) == mumford_identity());
        }
        // closure + commutativity on random pairs, associativity on triples
        std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
        for (int trial = 0; trial < 20; ++trial) {
            const auto &a = elems[pick(rng)], &b = elems[pick(rng)], &d = elems[pick(rng)];
            auto ab = cantor_compose_reduce(c, a, b);
            CHECK(mumford_valid(c, ab));
            CHECK(ab == cantor_compose_reduce(c, b, a));
            CHECK(cantor_compose_reduce(c, ab, d) ==
                  cantor_compose_reduce(c, a, cantor_compose_reduce(c, b, d)));
        }
        // scalar multiples telescope
        const auto& a = elems[pick(rng)];
        auto twice = cantor_compose_reduce(c, a, a);
        CHECK(mumford_scalar(c, a, 2) == twice);
        CHECK(mumford_scalar(c, a, 5) ==
              cantor_compose_reduce(c, twice, cantor_compose_reduce(c, twice, a)));
        CHECK(mumford_scalar(c, a, 0) == mumford_identity());
    }
}

namespace {

// independent genus-1 oracle: count projective points of y^2 = f(t), f monic
// cubic, by direct evaluation (one point at infinity)
long long ec_order_oracle(const FiniteField& F, const Poly& f, int unit) {
    long long count = 1;
    for (int t0 = 0; t0 < F.q(); ++t0) {
        int rhs = F.mul(unit, poly_eval(F, f, t0));
        if (rhs == 0) count += 1;
        else if (F.is_square(rhs)) count += 2;
    }
    return count;
}

} // namespace

TEST_CASE("genus-1 class numbers match the point-count oracle") {
    FiniteField F(5, 1);
    // pinned examples: y^2 = t^3 + t + 1 has 9 points over F_5,
    // y^2 = t^3 - t has 8
    CHECK(ec_order_oracle(F, {1, 1, 0, 1}, 1) == 9);
    CHECK(ec_order_oracle(F, {0, 4, 0, 1}, 1) == 8);
    CHECK(zeta_class_number(make_curve(F, {1, 1, 0, 1}, false)) == 9);
    CHECK(zeta_class_number(make_curve(F, {0, 4, 0, 1}, false)) == 8);
    // for genus 1 the Jacobian order equals the point count, twisted included
    int eps = F.non_square();
    for (const auto& c : curve_sweep(F, 3)) {
        long long oracle = ec_order_oracle(F, c.f, c.twisted ? eps : 1);
        CHECK(zeta_class_number(c) == oracle);
    }
}

TEST_CASE("jacobian structure is consistent with the class number") {
    FiniteField F(5, 1);
    int idx = 0;
    for (const auto& c : curve_sweep(F, 3)) {
        if (++idx % 10 != 0) continue; // deterministic subsample of 20 curves
        auto st = jacobian_structure(c);
        CHECK(st.order == zeta_class_number(c));
        if (st.structure_known) {
            long long prod = 1;
            for (long long d : st.invariant_factors) prod *= d;
            CHECK(prod == st.order);
            for (size_t i = 1; i < st.invariant_factors.size(); ++i)
                CHECK(st.invariant_factors[i] % st.invariant_factors[i - 1] == 0);
            // every element's order divides the largest invariant factor
            long long e = st.invariant_factors.empty() ? 1 : st.invariant_factors.back();
            for (int u0 = 0; u0 < F.q(); ++u0)
                for (int v0 = 0; v0 < F.q(); ++v0) {
                    MumfordDivisor d{{u0, 1}, v0 == 0 ? Poly{} : Poly{v0}};
                    if (mumford_valid(c, d))
                        CHECK(mumford_scalar(c, d, e) == mumford_identity());
                }
        }
    }
}

TEST_CASE("ell-part extraction") {
    AbelianGroupStructure st;
    st.order = 36;
    st.invariant_factors = {6, 6};
    auto t3 = st.ell_part(3);
    CHECK(t3.prime == 3);
    CHECK(t3.exponents == std::vector<int>{1, 1});
    auto t2 = st.ell_part(2);
    CHECK(t2.exponents == std::vector<int>{1, 1});
    CHECK(st.ell_part(5).exponents.empty());
}

TEST_CASE("surjection counts") {
    AbelianGroupType z3(3, {1}), z9(3, {2}), z3z3(3, {1, 1}), triv(3, {});
    CHECK(count_surjections(z3, z3) == 2);
    CHECK(count_surjections(z9, z3) == 2);
    CHECK(count_surjections(z3z3, z3) == 8);
    CHECK(count_surjections(z3z3, z3z3) == 48); // |GL_2(F_3)|
    CHECK(count_surjections(z3, z9) == 0);
    CHECK(count_surjections(z3, z3z3) == 0);
    CHECK(count_surjections(z9, z9) == 6); // |Aut Z/9|
    CHECK(count_surjections(z3, triv) == 1);
    CHECK(count_surjections(triv, triv) == 1);
    CHECK(count_surjections(triv, z3) == 0);
}

TEST_CASE("Cohen-Lenstra densities") {
    AbelianGroupType z3(3, {1}), triv(3, {});
    CHECK(mu_cohen_lenstra(z3) == doctest::Approx(0.28006303908445634).epsilon(1e-12));
    // mu(trivial) = prod(1 - 3^-i) since |Aut| = 1
    CHECK(mu_cohen_lenstra(triv) == doctest::Approx(0.5601260781689127).epsilon(1e-12));
    // total mass check: sum over Z/3^e-free types of rank <= 2 approximates 1
    double total = mu_cohen_lenstra(triv) + mu_cohen_lenstra(z3);
    CHECK(total < 1.0);
}

TEST_CASE("good_for_ell predicate") {
    CHECK(good_for_ell(5, 3));
    CHECK(good_for_ell(11, 3));
    CHECK(!good_for_ell(7, 3));  // 3 | 7 - 1
    CHECK(!good_for_ell(9, 3));  // 3 | 9
    CHECK(!good_for_ell(4, 3));  // even q
    CHECK(good_for_ell(7, 5));
    CHECK(!good_for_ell(11, 5)); // 5 | 11 - 1
}

TEST_CASE("class-group statistics sweep matches pinned values") {
    FiniteField F(5, 1);
    AbelianGroupType z3(3, {1});
    CLReport rep = cl_statistics(F, 3, z3, /*keep_rows=*/true);
    CHECK(rep.s_n_size == 200);
    CHECK(rep.sum_ma == 160);
    CHECK(rep.average == doctest::Approx(0.8));
    CHECK(rep.density == doctest::Approx(0.3));
    CHECK(rep.good);
    CHECK(rep.rows.size() == 200);
    // m_A depends only on the ell-part: recompute from the rows
    long long density_count = 0;
    for (const auto& r : rep.rows)
        if (r.iota) ++density_count;
    CHECK(density_count == 60);
    // bad q rejected unless explicitly allowed
    FiniteField F7(7, 1);
    CHECK_THROWS(cl_statistics(F7, 3, z3));
    CLReport bad = cl_statistics(F7, 3, z3, false, /*allow_bad=*/true);
    CHECK(!bad.good);
    CHECK(bad.s_n_size == 2 * (343 - 49));
}

TEST_CASE("class-group statistics at n = 5 match pinned values") {
    FiniteField F(5, 1);
    AbelianGroupType z3(3, {1});
    CLReport rep = cl_statistics(F, 5, z3, false, false, 1000000000ull);
    CHECK(rep.s_n_size == 5000);
    CHECK(rep.sum_ma == 3280);
    CHECK(rep.average == doctest::Approx(0.656));
    CHECK(rep.density == doctest::Approx(0.24));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hurwitzlab/koszul.hpp"

using namespace hwlab;

namespace {

BraidSystem make_s3() {
    auto [g, c] = parse_group_spec("sym:3");
    return BraidSystem(std::move(g), std::move(c));
}

} // namespace

TEST_CASE("module validation rejects corrupted actions") {
    BraidSystem sys = make_s3();
    LevelScan levels(sys, 3);
    DiscreteModule good = module_from_ring(sys, levels);
    // corrupt one action map: swap the images of two basis vectors of act_0 at
    // grading 2 in a way that breaks the braid relation
    std::vector<int> dims;
    for (int n = 0; n <= 3; ++n) dims.push_back(levels.dim(n));
    std::vector<std::vector<SparseMat>> act;
    for (int g = 0; g < sys.csize(); ++g) {
        std::vector<SparseMat> per_g;
        for (int n = 1; n <= 3; ++n) {
            SparseMat m(dims[n], dims[n - 1]);
            for (int o = 0; o < dims[n - 1]; ++o) {
                int im = levels.act(g, n, o);
                if (g == 0 && n == 2) im = (im + 1) % dims[n]; // corruption
                m.add(im, o, 1);
            }
            per_g.push_back(std::move(m));
        }
        act.push_back(std::move(per_g));
    }
    CHECK_THROWS(DiscreteModule(sys, dims, act, "corrupt"));
}

TEST_CASE("koszul differential: d = 1 is minus the action") {
    BraidSystem sys = make_s3();
    LevelScan levels(sys, 3);
    DiscreteModule mod = module_from_ring(sys, levels);
    for (int n = 1; n <= 3; ++n) {
        SparseMat d1 = koszul_differential(mod, n, 1);
        REQUIRE(d1.rows() == mod.dim(n));
        REQUIRE(d1.cols() == sys.csize() * mod.dim(n - 1));
        for (const auto& e : d1.entries()) {
            int g = e.col / mod.dim(n - 1), o = e.col % mod.dim(n - 1);
            CHECK(e.value == -1);
            CHECK(e.row == levels.act(g, n, o));
        }
    }
}

TEST_CASE("d1 squares to zero on validated modules") {
    BraidSystem sys = make_s3();
    LevelScan levels(sys, 5);
    for (const DiscreteModule& mod :
         {module_from_ring(sys, levels), trivial_module(sys, 5),
          sector_module(sys, levels,
                        generated_subgroup(sys.group(), sys.subgroup_table(),
                                           {sys.group_element(0)}))}) {
        for (int n = 0; n <= 5; ++n)
            for (int d = 2; d <= n; ++d) {
                SparseMat lo = koszul_differential(mod, n, d - 1);
                SparseMat hi = koszul_differential(mod, n, d);
                CHECK(lo.multiply(hi).is_zero());
            }
    }
}

TEST_CASE("trivial module reproduces the Koszul-dual diagonal") {
    BraidSystem sys = make_s3();
    DiscreteModule k = trivial_module(sys, 5);
    long long cn = 1;
    for (int n = 0; n <= 5; ++n) {
        for (int d = 0; d <= 5; ++d) {
            int dim = a_homology(k, n, d);
            if (n == d) CHECK(dim == cn);
            else CHECK(dim == 0);
        }
        cn *= sys.csize();
    }
}

TEST_CASE("ring module: H_{n,0} vanishes in positive gradings") {
    BraidSystem sys = make_s3();
    LevelScan levels(sys, 8);
    DiscreteModule r = module_from_ring(sys, levels);
    CHECK(a_homology(r, 0, 0) == 1);
    for (int n = 1; n <= 8; ++n) CHECK(a_homology(r, n, 0) == 0);
}

TEST_CASE("Euler characteristic consistency per grading") {
    BraidSystem sys = make_s3();
    LevelScan levels(sys, 5);
    for (const DiscreteModule& mod : {module_from_ring(sys, levels), trivial_module(sys, 5)}) {
        for (int n = 0; n <= 5; ++n) {
            long long chi_complex = 0, chi_homology = 0, cpow = 1;
            for (int d = 0; d <= n; ++d) {
                long long dim_kd = cpow * mod.dim(n - d);
                chi_complex += (d % 2 == 0 ? dim_kd : -dim_kd);
                long long h = a_homology(mod, n, d);
                chi_homology += (d % 2 == 0 ? h : -h);
                cpow *= sys.csize();
            }
            CHECK(chi_complex == chi_homology);
        }
    }
}

TEST_CASE("h_degrees for the trivial module sit on the diagonal") {
    BraidSystem sys = make_s3();
    DiscreteModule k = trivial_module(sys, 5);
    auto h = h_degrees(k, 3, 5);
    for (int d = 0; d <= 3; ++d) {
        REQUIRE(h[d].degree.has_value());
        CHECK(*h[d].degree == d);
        CHECK(!h[d].at_window_edge);
    }
}

TEST_CASE("regularity report for R and a sector module over S_3") {
    BraidSystem sys = make_s3();
    LevelScan levels(sys, 8);
    StabilizerSpec spec = find_stabilizer_u(sys, levels, 4);
    REQUIRE(spec.found);
    REQUIRE(spec.N0 == 5);

    DiscreteModule r = module_from_ring(sys, levels);
    RegularityReport rr = regularity_check(r, spec, 3, 8);
    CHECK(rr.B0 == 7);
    CHECK(rr.B1 == 4);
    CHECK(rr.B2 == 6);
    REQUIRE(rr.h[0].degree.has_value()); // only grading 0 survives in H_{*,0}(R)
    CHECK(*rr.h[0].degree == 0);
    for (bool ok : rr.bounds_ok) CHECK(ok);
    CHECK(rr.cofiber_bounds_ok);
    // Prop DefU: U is bijective from N0 on, so cofiber degrees < N0... within window
    if (rr.cofiber_deg0) CHECK(*rr.cofiber_deg0 < spec.N0);
    if (rr.cofiber_deg1) CHECK(*rr.cofiber_deg1 < spec.N0);
    // h_d(R) <= B2 + d for d <= 2 within the window
    for (int d = 0; d <= 2; ++d)
        if (rr.h[d].degree) CHECK(*rr.h[d].degree <= rr.B2 + d);

    int sub = generated_subgroup(sys.group(), sys.subgroup_table(), {sys.group_element(0)});
    DiscreteModule sec = sector_module(sys, levels, sub);
    for (int n = 1; n <= 8; ++n) CHECK(sec.dim(n) == 1); // [tau^n] only
    CHECK(sec.dim(0) == 0);
    RegularityReport rs = regularity_check(sec, spec, 3, 8);
    for (bool ok : rs.bounds_ok) CHECK(ok);
    CHECK(rs.cofiber_bounds_ok);
}

TEST_CASE("cofiber degrees of the trivial module") {
    BraidSystem sys = make_s3();
    LevelScan levels(sys, 6);
    StabilizerSpec spec = find_stabilizer_u(sys, levels, 4);
    DiscreteModule k = trivial_module(sys, 6);
    auto [deg0, deg1] = cofiber_degrees(k, spec, 6);
    REQUIRE(deg0.has_value());
    CHECK(*deg0 == 0); // U acts as zero on the one-dimensional grading 0
    REQUIRE(deg1.has_value());
    CHECK(*deg1 == spec.N); // zero map out of grading 0 has full kernel
}

TEST_CASE("h_degrees window exceeding data is rejected") {
    BraidSystem sys = make_s3();
    LevelScan levels(sys, 3);
    DiscreteModule r = module_from_ring(sys, levels);
    CHECK_THROWS(h_degrees(r, 2, 5));
}

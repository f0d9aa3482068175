#include "hurwitzlab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hurwitzlab/function_fields.hpp"
#include "hurwitzlab/groups.hpp"
#include "hurwitzlab/hurwitz.hpp"
#include "hurwitzlab/koszul.hpp"
#include "hurwitzlab/rack.hpp"

using nlohmann::json;

namespace hwlab {

namespace {

struct Common {
    std::string format = "json";
    std::string out;
    std::uint64_t budget = kDefaultTupleBudget;
    int threads = 1;
    unsigned seed = 0;
    bool check = false;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", c.out);
    cmd->add_option("--budget", c.budget);
    cmd->add_option("--threads", c.threads)->check(CLI::PositiveNumber);
    cmd->add_option("--seed", c.seed);
    cmd->add_flag("--check", c.check);
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream f(c.out);
        if (!f) throw std::runtime_error("cannot open output file " + c.out);
        f << text;
        if (!text.empty() && text.back() != '\n') f << "\n";
    }
}

// threads deliberately omitted: reports are byte-identical across --threads
json config_json(const Common& c) {
    return json{{"format", c.format}, {"budget", c.budget},
                {"seed", c.seed}, {"check", c.check}};
}

std::pair<int, int> factor_prime_power(int q) {
    if (q < 3) throw std::invalid_argument("q must be an odd prime power >= 3");
    int p = 2;
    while (q % p != 0) ++p;
    int k = 0, r = q;
    while (r % p == 0) {
        r /= p;
        ++k;
    }
    if (r != 1) throw std::invalid_argument("q must be a prime power");
    return {p, k};
}

AbelianGroupType parse_a_spec(const std::string& s) {
    std::vector<long long> factors;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) factors.push_back(std::stoll(tok));
    if (factors.empty()) throw std::invalid_argument("empty A spec");
    long long ell = 2;
    while (factors[0] % ell != 0) ++ell;
    std::vector<int> exps;
    for (long long f : factors) {
        int e = 0;
        while (f % ell == 0) {
            f /= ell;
            ++e;
        }
        if (f != 1 || e == 0)
            throw std::invalid_argument("A spec factors must be powers of one prime");
        exps.push_back(e);
    }
    std::sort(exps.begin(), exps.end(), std::greater<int>());
    return AbelianGroupType(ell, exps);
}

Rack parse_rack_spec(const std::string& s) {
    if (s.rfind("trivial:", 0) == 0) return trivial_rack(std::stoi(s.substr(8)));
    auto [g, c] = parse_group_spec(s);
    return conjugation_rack(g, c);
}

std::string tuple_string(const std::vector<int>& t) {
    std::string s = "(";
    for (size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
    return s + ")";
}

// --- subcommand bodies -----------------------------------------------------

int cmd_hurwitz_orbits(const Common& c, const std::string& gspec, int n) {
    auto [g, cls] = parse_group_spec(gspec);
    BraidSystem sys(std::move(g), std::move(cls));
    OrbitTable table = orbit_table(sys, n, c.budget);
    std::uint64_t total = 0;
    for (const auto& o : table.orbits()) total += o.size;
    if (c.format == "csv") {
        std::ostringstream os;
        os << "# group=" << gspec << " n=" << n << " budget=" << c.budget << "\n";
        os << "orbit,rep,size,monodromy,generating,component\n";
        for (int i = 0; i < table.orbit_count(); ++i) {
            const auto& o = table.orbit(i);
            os << i << "," << tuple_string(sys.decode(o.rep, n)) << "," << o.size << ","
               << sys.group().label(o.monodromy) << "," << (o.generating ? 1 : 0) << ","
               << o.component << "\n";
        }
        emit(c, os.str());
    } else {
        json rows = json::array();
        for (int i = 0; i < table.orbit_count(); ++i) {
            const auto& o = table.orbit(i);
            rows.push_back({{"orbit", i},
                            {"rep", sys.decode(o.rep, n)},
                            {"size", o.size},
                            {"monodromy", sys.group().label(o.monodromy)},
                            {"generating", o.generating},
                            {"component", o.component}});
        }
        json rep{{"config", config_json(c)}, {"group", gspec}, {"n", n},
                 {"orbit_count", table.orbit_count()},
                 {"component_count", table.component_count()}, {"orbits", rows}};
        emit(c, rep.dump(2));
    }
    std::uint64_t expect = 1;
    for (int i = 0; i < n; ++i) expect *= (std::uint64_t)sys.csize();
    if (c.check && total != expect) return kExitCheckFailed;
    return kExitOk;
}

json spec_json(const StabilizerSpec& s) {
    return json{{"found", s.found},    {"D", s.D},
                {"N", s.N},            {"N0", s.N0},
                {"claim_onset", s.claim_onset}, {"n_max_checked", s.n_max_checked},
                {"D_cap", s.D_cap},    {"V_grading", s.V_grading},
                {"message", s.message}};
}

int cmd_hurwitz_stabilize(const Common& c, const std::string& gspec, int nmax, int dcap) {
    auto [g, cls] = parse_group_spec(gspec);
    BraidSystem sys(std::move(g), std::move(cls));
    LevelScan levels(sys, nmax, c.budget);
    StabilizerSpec s = find_stabilizer_u(sys, levels, dcap);
    json rep{{"config", config_json(c)}, {"group", gspec}, {"n_max", nmax},
             {"stabilizer", spec_json(s)}};
    emit(c, rep.dump(2));
    if (c.check && !s.found) return kExitCheckFailed;
    return kExitOk;
}

int cmd_hurwitz_scan_u(const Common& c, const std::string& gspec, int nmax, int dcap) {
    auto [g, cls] = parse_group_spec(gspec);
    BraidSystem sys(std::move(g), std::move(cls));
    LevelScan levels(sys, nmax, c.budget);
    StabilizerSpec s = find_stabilizer_u(sys, levels, dcap);
    UScanReport scan = scan_u_stability(sys, levels, s);
    if (c.format == "csv") {
        std::ostringstream os;
        os << "# group=" << gspec << " n_max=" << nmax << " D=" << s.D << " N=" << s.N << "\n";
        os << "scope,n,subgroup,dim_lo,dim_hi,injective,surjective,g_independent\n";
        for (const auto& r : scan.global)
            os << "global," << r.n << ",-," << r.dim_lo << "," << r.dim_hi << ","
               << r.injective << "," << r.surjective << ",-\n";
        for (const auto& r : scan.sectors)
            os << "sector," << r.n << "," << r.subgroup << "," << r.dim_lo << "," << r.dim_hi
               << "," << r.bijective << "," << r.bijective << "," << r.g_independent << "\n";
        emit(c, os.str());
    } else {
        json glob = json::array(), sect = json::array();
        for (const auto& r : scan.global)
            glob.push_back({{"n", r.n}, {"dim_lo", r.dim_lo}, {"dim_hi", r.dim_hi},
                            {"injective", r.injective}, {"surjective", r.surjective}});
        for (const auto& r : scan.sectors)
            sect.push_back({{"n", r.n}, {"subgroup", r.subgroup}, {"dim_lo", r.dim_lo},
                            {"dim_hi", r.dim_hi}, {"bijective", r.bijective},
                            {"g_independent", r.g_independent}});
        json rep{{"config", config_json(c)}, {"group", gspec},
                 {"stabilizer", spec_json(scan.spec)}, {"global", glob}, {"sectors", sect}};
        emit(c, rep.dump(2));
    }
    if (c.check) {
        if (!s.found) return kExitCheckFailed;
        for (const auto& r : scan.global)
            if (r.n >= s.N0 && !(r.injective && r.surjective)) return kExitCheckFailed;
        for (const auto& r : scan.sectors)
            if (r.n >= s.claim_onset && !(r.bijective && r.g_independent))
                return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_hurwitz_scan_v(const Common& c, const std::string& gspec, int nmax) {
    auto [g, cls] = parse_group_spec(gspec);
    BraidSystem sys(std::move(g), std::move(cls));
    LevelScan levels(sys, nmax, c.budget);
    auto rows = scan_v_stability(sys, levels);
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"n", r.n}, {"dim_lo", r.dim_lo}, {"dim_hi", r.dim_hi},
                       {"injective", r.injective}, {"surjective", r.surjective}});
    json rep{{"config", config_json(c)}, {"group", gspec},
             {"V_grading", sys.csize() * sys.entry_order()}, {"rows", arr}};
    emit(c, rep.dump(2));
    return kExitOk;
}

int cmd_rack_homology(const Common& c, const std::string& rspec, int dmax) {
    Rack rack = parse_rack_spec(rspec);
    auto dims = rack_homology_dims(rack, dmax, c.budget);
    json rep{{"config", config_json(c)}, {"rack", rspec}, {"size", rack.size()},
             {"orbit_count", rack.orbit_count()}, {"dims", dims}};
    emit(c, rep.dump(2));
    if (c.check) {
        long long md = 1;
        for (int d = 0; d <= dmax; ++d) {
            if (dims[d] != md) return kExitCheckFailed;
            md *= rack.orbit_count();
        }
    }
    return kExitOk;
}

bool coassociative(const Rack& rack, int n) {
    // compare (Delta x id) Delta with (id x Delta) Delta on every basis tuple
    auto key = [](const std::vector<int>& a, const std::vector<int>& b,
                  const std::vector<int>& c) {
        std::string s;
        for (int x : a) s += (char)('a' + x);
        s += '|';
        for (int x : b) s += (char)('a' + x);
        s += '|';
        for (int x : c) s += (char)('a' + x);
        return s;
    };
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= (std::uint64_t)rack.size();
    for (std::uint64_t enc = 0; enc < total; ++enc) {
        std::vector<int> tuple(n);
        std::uint64_t e = enc;
        for (int i = 0; i < n; ++i) {
            tuple[i] = (int)(e % rack.size());
            e /= rack.size();
        }
        std::map<std::string, long long> lhs, rhs;
        for (const auto& t : shuffle_coproduct(rack, tuple)) {
            for (const auto& t2 : shuffle_coproduct(rack, t.left))
                lhs[key(t2.left, t2.right, t.right)] += (long long)t.sign * t2.sign;
            for (const auto& t2 : shuffle_coproduct(rack, t.right))
                rhs[key(t.left, t2.left, t2.right)] += (long long)t.sign * t2.sign;
        }
        for (const auto& [k, v] : rhs) lhs[k] -= v;
        for (const auto& [k, v] : lhs)
            if (v != 0) return false;
    }
    return true;
}

int cmd_rack_coproduct(const Common& c, const std::string& rspec, int n) {
    Rack rack = parse_rack_spec(rspec);
    bool ok = coassociative(rack, n);
    json rep{{"config", config_json(c)}, {"rack", rspec}, {"n", n}, {"coassociative", ok}};
    emit(c, rep.dump(2));
    return (c.check && !ok) ? kExitCheckFailed : kExitOk;
}

DiscreteModule parse_module_spec(const BraidSystem& sys, const LevelScan& levels,
                                 const std::string& spec) {
    if (spec == "ring") return module_from_ring(sys, levels);
    if (spec == "trivial") return trivial_module(sys, levels.n_max());
    if (spec.rfind("sector:", 0) == 0) {
        int cidx = std::stoi(spec.substr(7));
        if (cidx < 0 || cidx >= sys.csize())
            throw std::invalid_argument("sector: class index out of range");
        int sub = generated_subgroup(sys.group(), sys.subgroup_table(),
                                     {sys.group_element(cidx)});
        return sector_module(sys, levels, sub);
    }
    throw std::invalid_argument("unknown module spec '" + spec + "'");
}

json report_json(const RegularityReport& r, const Common& c, const std::string& gspec) {
    json h = json::array();
    for (const auto& d : r.h) {
        if (d.degree) h.push_back({{"degree", *d.degree}, {"at_window_edge", d.at_window_edge}});
        else h.push_back({{"degree", "-inf"}, {"at_window_edge", false}});
    }
    json cof;
    cof["deg0"] = r.cofiber_deg0 ? json(*r.cofiber_deg0) : json("-inf");
    cof["deg1"] = r.cofiber_deg1 ? json(*r.cofiber_deg1) : json("-inf");
    return json{{"config", config_json(c)}, {"group", gspec},
                {"module", r.module},   {"n_max", r.n_max}, {"d_max", r.d_max},
                {"N_0", r.N0},          {"B0", r.B0},       {"B1", r.B1},
                {"B2", r.B2},           {"h", h},           {"bounds_ok", r.bounds_ok},
                {"cofiber", cof},       {"cofiber_bounds_ok", r.cofiber_bounds_ok},
                {"caveats", r.caveats}};
}

int cmd_koszul(const Common& c, const std::string& sub, const std::string& gspec,
               const std::string& mspec, int n, int d, int nmax, int dmax, int dcap) {
    auto [g, cls] = parse_group_spec(gspec);
    BraidSystem sys(std::move(g), std::move(cls));
    LevelScan levels(sys, nmax, c.budget);
    DiscreteModule mod = parse_module_spec(sys, levels, mspec);
    if (sub == "ahom") {
        int dim = a_homology(mod, n, d);
        json rep{{"config", config_json(c)}, {"group", gspec}, {"module", mspec},
                 {"n", n}, {"d", d}, {"dim", dim}};
        emit(c, rep.dump(2));
        return kExitOk;
    }
    StabilizerSpec s = find_stabilizer_u(sys, levels, dcap);
    if (sub == "cofiber") {
        auto [deg0, deg1] = cofiber_degrees(mod, s, nmax);
        auto h = h_degrees(mod, 1, nmax);
        json rep{{"config", config_json(c)}, {"group", gspec}, {"module", mspec},
                 {"N_0", s.N0},
                 {"deg0", deg0 ? json(*deg0) : json("-inf")},
                 {"deg1", deg1 ? json(*deg1) : json("-inf")}};
        emit(c, rep.dump(2));
        if (c.check) {
            std::optional<int> h01;
            if (h[0].degree) h01 = h[0].degree;
            if (h[1].degree) h01 = h01 ? std::max(*h01, *h[1].degree) : h[1].degree;
            if (deg0 && (!h[0].degree || *deg0 > *h[0].degree + s.N0)) return kExitCheckFailed;
            if (deg1 && (!h01 || *deg1 > *h01 + s.N0)) return kExitCheckFailed;
        }
        return kExitOk;
    }
    // regularity
    RegularityReport rep = regularity_check(mod, s, dmax, nmax);
    emit(c, report_json(rep, c, gspec).dump(2));
    if (c.check) {
        for (bool ok : rep.bounds_ok)
            if (!ok) return kExitCheckFailed;
        if (!rep.cofiber_bounds_ok) return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_ff_squarefree(const Common& c, int q, int n) {
    auto [p, k] = factor_prime_power(q);
    FiniteField F(p, k);
    auto polys = enumerate_monic_squarefree(F, n, c.budget);
    emit(c, std::to_string(polys.size()));
    if (c.check) {
        long long expect = q;
        if (n >= 2) {
            expect = 1;
            for (int i = 0; i < n - 1; ++i) expect *= q;
            expect = expect * q - expect;
        }
        if ((long long)polys.size() != expect) return kExitCheckFailed;
    }
    return kExitOk;
}

json cl_report_json(const CLReport& r, const Common& c) {
    return json{{"config", config_json(c)},
                {"q", r.q},           {"n", r.n},       {"A", r.a},
                {"ell", r.ell},       {"S_n_size", r.s_n_size},
                {"sum_mA", r.sum_ma}, {"average", r.average},
                {"density", r.density}, {"mu_reference", r.mu_reference},
                {"abs_average_minus_1", std::abs(r.average - 1.0)},
                {"abs_density_minus_mu", std::abs(r.density - r.mu_reference)},
                {"good_for_ell", r.good}, {"eps", r.eps}, {"modulus", r.modulus}};
}

int cmd_ff_cl_stats(const Common& c, int q, int n, const std::string& aspec, bool allow_bad) {
    auto [p, k] = factor_prime_power(q);
    FiniteField F(p, k);
    AbelianGroupType a = parse_a_spec(aspec);
    CLReport r = cl_statistics(F, n, a, false, allow_bad, c.budget);
    emit(c, cl_report_json(r, c).dump(2));
    return kExitOk;
}

int cmd_ff_curve_dump(const Common& c, int q, int n, const std::string& aspec) {
    auto [p, k] = factor_prime_power(q);
    FiniteField F(p, k);
    AbelianGroupType a = parse_a_spec(aspec);
    CLReport r = cl_statistics(F, n, a, true, true, c.budget);
    std::ostringstream os;
    os << "# q=" << q << " n=" << n << " A=" << r.a << " eps=" << r.eps
       << " modulus=" << r.modulus << "\n";
    os << "f,twist,class_number,ell_part,m_A,iota\n";
    for (const auto& row : r.rows)
        os << "\"" << row.f << "\"," << row.twisted << "," << row.class_number << ","
           << row.ell_part << "," << row.m_a << "," << row.iota << "\n";
    emit(c, os.str());
    return kExitOk;
}

int cmd_group(const Common& c, const std::string& sub, const std::string& gspec) {
    auto [g, cls] = parse_group_spec(gspec);
    bool admissible = is_admissible(g, cls);
    bool nonsplit = is_nonsplitting(g, cls);
    bool single = cls.is_single_class(g);
    json labels = json::array();
    for (int x : cls.elements()) labels.push_back(g.label(x));
    json rep{{"config", config_json(c)},
             {"group", gspec},
             {"order", g.order()},
             {"class_size", cls.size()},
             {"class_common_order", cls.common_order()},
             {"class_elements", labels},
             {"admissible", admissible},
             {"nonsplitting", nonsplit},
             {"single_class", single},
             {"subgroup_count", subgroups(g).count()}};
    emit(c, rep.dump(2));
    if (sub == "check" && c.check && !(admissible && nonsplit)) return kExitCheckFailed;
    return kExitOk;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"workbench for braid orbits, stabilization, rack/Koszul homology, "
                 "and function-field class-group statistics"};
    app.require_subcommand(1);
    Common c;
    if (const char* env = std::getenv("HURWITZ_LAB_BUDGET")) c.budget = std::strtoull(env, nullptr, 10);

    std::string gspec, rspec = "trivial:2", mspec = "ring", aspec = "3";
    int n = 1, d = 0, nmax = 6, dmax = 3, dcap = 4, q = 5;
    bool allow_bad = false;

    auto* hur = app.add_subcommand("hurwitz");
    hur->require_subcommand(1);
    auto* orbits = hur->add_subcommand("orbits");
    orbits->add_option("--group", gspec)->required();
    orbits->add_option("--n", n)->required();
    add_common(orbits, c);
    auto* stab = hur->add_subcommand("stabilize");
    stab->add_option("--group", gspec)->required();
    stab->add_option("--nmax", nmax);
    stab->add_option("--dcap", dcap);
    add_common(stab, c);
    auto* scanu = hur->add_subcommand("scan-u");
    scanu->add_option("--group", gspec)->required();
    scanu->add_option("--nmax", nmax);
    scanu->add_option("--dcap", dcap);
    add_common(scanu, c);
    auto* scanv = hur->add_subcommand("scan-v");
    scanv->add_option("--group", gspec)->required();
    scanv->add_option("--nmax", nmax);
    add_common(scanv, c);

    auto* rack = app.add_subcommand("rack");
    rack->require_subcommand(1);
    auto* rhom = rack->add_subcommand("homology");
    rhom->add_option("--rack", rspec)->required();
    rhom->add_option("--dmax", dmax);
    add_common(rhom, c);
    auto* rcop = rack->add_subcommand("coproduct-check");
    rcop->add_option("--rack", rspec)->required();
    rcop->add_option("--n", n);
    add_common(rcop, c);

    auto* kos = app.add_subcommand("koszul");
    kos->require_subcommand(1);
    auto* ahom = kos->add_subcommand("ahom");
    ahom->add_option("--group", gspec)->required();
    ahom->add_option("--module", mspec);
    ahom->add_option("--n", n)->required();
    ahom->add_option("--d", d)->required();
    ahom->add_option("--nmax", nmax);
    add_common(ahom, c);
    auto* reg = kos->add_subcommand("regularity");
    reg->add_option("--group", gspec)->required();
    reg->add_option("--module", mspec);
    reg->add_option("--nmax", nmax);
    reg->add_option("--dmax", dmax);
    reg->add_option("--dcap", dcap);
    add_common(reg, c);
    auto* cof = kos->add_subcommand("cofiber");
    cof->add_option("--group", gspec)->required();
    cof->add_option("--module", mspec);
    cof->add_option("--nmax", nmax);
    cof->add_option("--dcap", dcap);
    add_common(cof, c);

    auto* ff = app.add_subcommand("ff");
    ff->require_subcommand(1);
    auto* sf = ff->add_subcommand("squarefree-count");
    sf->add_option("--q", q)->required();
    sf->add_option("--n", n)->required();
    add_common(sf, c);
    auto* cls = ff->add_subcommand("cl-stats");
    cls->add_option("--q", q)->required();
    cls->add_option("--n", n)->required();
    cls->add_option("--A", aspec);
    cls->add_flag("--allow-bad", allow_bad);
    add_common(cls, c);
    auto* dump = ff->add_subcommand("curve-dump");
    dump->add_option("--q", q)->required();
    dump->add_option("--n", n)->required();
    dump->add_option("--A", aspec);
    add_common(dump, c);

    auto* grp = app.add_subcommand("group");
    grp->require_subcommand(1);
    auto* ginfo = grp->add_subcommand("info");
    ginfo->add_option("--group", gspec)->required();
    add_common(ginfo, c);
    auto* gcheck = grp->add_subcommand("check");
    gcheck->add_option("--group", gspec)->required();
    add_common(gcheck, c);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (orbits->parsed()) return cmd_hurwitz_orbits(c, gspec, n);
        if (stab->parsed()) return cmd_hurwitz_stabilize(c, gspec, nmax, dcap);
        if (scanu->parsed()) return cmd_hurwitz_scan_u(c, gspec, nmax, dcap);
        if (scanv->parsed()) return cmd_hurwitz_scan_v(c, gspec, nmax);
        if (rhom->parsed()) return cmd_rack_homology(c, rspec, dmax);
        if (rcop->parsed()) return cmd_rack_coproduct(c, rspec, n);
        if (ahom->parsed()) return cmd_koszul(c, "ahom", gspec, mspec, n, d,
                                              std::max(n, nmax), dmax, dcap);
        if (reg->parsed()) return cmd_koszul(c, "regularity", gspec, mspec, n, d, nmax, dmax, dcap);
        if (cof->parsed()) return cmd_koszul(c, "cofiber", gspec, mspec, n, d, nmax, dmax, dcap);
        if (sf->parsed()) return cmd_ff_squarefree(c, q, n);
        if (cls->parsed()) return cmd_ff_cl_stats(c, q, n, aspec, allow_bad);
        if (dump->parsed()) return cmd_ff_curve_dump(c, q, n, aspec);
        if (ginfo->parsed()) return cmd_group(c, "info", gspec);
        if (gcheck->parsed()) return cmd_group(c, "check", gspec);
    } catch (const ResourceError& e) {
        std::cerr << "resource budget exceeded: " << e.what() << "\n";
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace hwlab

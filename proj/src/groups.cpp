#include "hurwitzlab/groups.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace hwlab {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> mul, std::vector<std::string> labels)
    : order_((int)mul.size()), mul_(std::move(mul)), labels_(std::move(labels)) {
    if (order_ == 0) throw std::invalid_argument("FiniteGroup: empty table");
    for (const auto& row : mul_) {
        if ((int)row.size() != order_) throw std::invalid_argument("FiniteGroup: ragged table");
        for (int x : row)
            if (x < 0 || x >= order_) throw std::invalid_argument("FiniteGroup: entry out of range");
    }
    identity_ = -1;
    for (int e = 0; e < order_; ++e) {
        bool ok = true;
        for (int x = 0; x < order_ && ok; ++x) ok = mul_[e][x] == x && mul_[x][e] == x;
        if (ok) { identity_ = e; break; }
    }
    if (identity_ < 0) throw std::invalid_argument("FiniteGroup: no identity");
    inv_.assign(order_, -1);
    for (int x = 0; x < order_; ++x) {
        for (int y = 0; y < order_; ++y)
            if (mul_[x][y] == identity_ && mul_[y][x] == identity_) { inv_[x] = y; break; }
        if (inv_[x] < 0) throw std::invalid_argument("FiniteGroup: missing inverse");
    }
    if (order_ <= 64) {
        for (int a = 0; a < order_; ++a)
            for (int b = 0; b < order_; ++b)
                for (int c = 0; c < order_; ++c)
                    if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
                        throw std::invalid_argument("FiniteGroup: not associative");
    } else {
        std::mt19937 rng(12345);
        std::uniform_int_distribution<int> pick(0, order_ - 1);
        for (int t = 0; t < 20000; ++t) {
            int a = pick(rng), b = pick(rng), c = pick(rng);
            if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
                throw std::invalid_argument("FiniteGroup: not associative");
        }
    }
    if (labels_.empty()) {
        labels_.resize(order_);
        for (int i = 0; i < order_; ++i) labels_[i] = "g" + std::to_string(i);
    }
    if ((int)labels_.size() != order_) throw std::invalid_argument("FiniteGroup: label count");
}

int FiniteGroup::power(int a, long long n) const {
    int ord = element_order(a);
    n %= ord;
    if (n < 0) n += ord;
    int r = identity_;
    for (long long i = 0; i < n; ++i) r = mul(r, a);
    return r;
}

int FiniteGroup::element_order(int a) const {
    int r = a, n = 1;
    while (r != identity_) { r = mul(r, a); ++n; }
    return n;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order_; ++a)
        for (int b = a + 1; b < order_; ++b)
            if (mul_[a][b] != mul_[b][a]) return false;
    return true;
}

std::vector<int> FiniteGroup::conjugacy_class_of(int a) const {
    std::set<int> cls;
    for (int b = 0; b < order_; ++b) cls.insert(conj(a, b));
    return {cls.begin(), cls.end()};
}

AbelianGroupType::AbelianGroupType(long long ell, std::vector<int> exps)
    : prime(ell), exponents(std::move(exps)) {
    if (ell < 2) throw std::invalid_argument("AbelianGroupType: prime < 2");
    for (long long d = 2; d * d <= ell; ++d)
        if (ell % d == 0) throw std::invalid_argument("AbelianGroupType: ell not prime");
    for (size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] <= 0) throw std::invalid_argument("AbelianGroupType: exponent <= 0");
        if (i > 0 && exponents[i] > exponents[i - 1])
            throw std::invalid_argument("AbelianGroupType: exponents not non-increasing");
    }
}

long long AbelianGroupType::order() const {
    long long o = 1;
    for (int e : exponents)
        for (int i = 0; i < e; ++i) o *= prime;
    return o;
}

ConjClass::ConjClass(const FiniteGroup& g, std::vector<int> elements) : elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    if (elements_.empty()) throw std::invalid_argument("ConjClass: empty set");
    for (int x : elements_)
        if (x < 0 || x >= g.order()) throw std::invalid_argument("ConjClass: element out of range");
    common_order_ = g.element_order(elements_[0]);
    for (int x : elements_)
        if (g.element_order(x) != common_order_)
            throw std::invalid_argument("ConjClass: members have mixed orders");
    for (int x : elements_)
        for (int b = 0; b < g.order(); ++b)
            if (!contains(g.conj(x, b)))
                throw std::invalid_argument("ConjClass: not conjugation-invariant");
}

bool ConjClass::contains(int x) const {
    return std::binary_search(elements_.begin(), elements_.end(), x);
}

int ConjClass::index_of(int x) const {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
    if (it == elements_.end() || *it != x) return -1;
    return (int)(it - elements_.begin());
}

bool ConjClass::is_single_class(const FiniteGroup& g) const {
    return g.conjugacy_class_of(elements_[0]) == elements_;
}

SubgroupTable::SubgroupTable(std::vector<std::vector<int>> subgroups)
    : subgroups_(std::move(subgroups)) {
    std::sort(subgroups_.begin(), subgroups_.end(),
              [](const auto& a, const auto& b) {
                  return a.size() != b.size() ? a.size() < b.size() : a < b;
              });
    size_t maxsz = 0;
    for (size_t i = 0; i < subgroups_.size(); ++i) maxsz = std::max(maxsz, subgroups_[i].size());
    for (size_t i = 0; i < subgroups_.size(); ++i) {
        if (subgroups_[i].size() == 1) trivial_ = (int)i;
        if (subgroups_[i].size() == maxsz) full_ = (int)i;
    }
}

int SubgroupTable::find(const std::vector<int>& elements) const {
    for (size_t i = 0; i < subgroups_.size(); ++i)
        if (subgroups_[i] == elements) return (int)i;
    return -1;
}

bool SubgroupTable::contains(int sup, int sub) const {
    return std::includes(subgroups_[sup].begin(), subgroups_[sup].end(),
                         subgroups_[sub].begin(), subgroups_[sub].end());
}

FiniteGroup cyclic_group(int n) {
    if (n <= 0) throw std::invalid_argument("cyclic_group: n <= 0");
    std::vector<std::vector<int>> mul(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) mul[a][b] = (a + b) % n;
    return FiniteGroup(std::move(mul));
}

namespace {

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> perms;
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return perms;
}

} // namespace

FiniteGroup symmetric_group(int n) {
    if (n < 1 || n > 6) throw std::invalid_argument("symmetric_group: n out of range");
    auto perms = all_permutations(n);
    std::map<std::vector<int>, int> id;
    for (size_t i = 0; i < perms.size(); ++i) id[perms[i]] = (int)i;
    int m = (int)perms.size();
    std::vector<std::vector<int>> mul(m, std::vector<int>(m));
    std::vector<std::string> labels(m);
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            std::vector<int> comp(n); // (a*b)(x) = a(b(x))
            for (int x = 0; x < n; ++x) comp[x] = perms[a][perms[b][x]];
            mul[a][b] = id[comp];
        }
        std::string s = "(";
        for (int x : perms[a]) s += std::to_string(x + 1);
        labels[a] = s + ")";
    }
    return FiniteGroup(std::move(mul), std::move(labels));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    int n = a.order() * b.order();
    auto enc = [&](int x, int y) { return x * b.order() + y; };
    std::vector<std::vector<int>> mul(n, std::vector<int>(n));
    for (int x1 = 0; x1 < a.order(); ++x1)
        for (int y1 = 0; y1 < b.order(); ++y1)
            for (int x2 = 0; x2 < a.order(); ++x2)
                for (int y2 = 0; y2 < b.order(); ++y2)
                    mul[enc(x1, y1)][enc(x2, y2)] = enc(a.mul(x1, x2), b.mul(y1, y2));
    return FiniteGroup(std::move(mul));
}

std::pair<FiniteGroup, ConjClass> build_generalized_dihedral(const AbelianGroupType& a) {
    if (a.prime == 2) throw std::invalid_argument("build_generalized_dihedral: ell = 2 rejected");
    long long m = a.order();
    // elements of A as exponent vectors, indexed by mixed radix
    int k = (int)a.exponents.size();
    std::vector<long long> radix(k);
    for (int i = 0; i < k; ++i) {
        radix[i] = 1;
        for (int j = 0; j < a.exponents[i]; ++j) radix[i] *= a.prime;
    }
    auto decode = [&](long long idx) {
        std::vector<long long> v(k);
        for (int i = 0; i < k; ++i) { v[i] = idx % radix[i]; idx /= radix[i]; }
        return v;
    };
    auto encode = [&](const std::vector<long long>& v) {
        long long idx = 0;
        for (int i = k - 1; i >= 0; --i) idx = idx * radix[i] + v[i];
        return idx;
    };
    long long order = 2 * m;
    if (order > 200) throw std::invalid_argument("build_generalized_dihedral: order above 200");
    // element index = a_idx + s*m with s in {0,1} for sign +1,-1
    std::vector<std::vector<int>> mul(order, std::vector<int>(order));
    std::vector<std::string> labels(order);
    for (long long ai = 0; ai < m; ++ai)
        for (int s = 0; s < 2; ++s) {
            auto va = decode(ai);
            labels[ai + s * m] = (s ? "(-," : "(+,") + std::to_string(ai) + ")";
            for (long long bi = 0; bi < m; ++bi)
                for (int t = 0; t < 2; ++t) {
                    auto vb = decode(bi);
                    std::vector<long long> vc(k);
                    for (int i = 0; i < k; ++i) {
                        long long b = s ? (radix[i] - vb[i]) % radix[i] : vb[i];
                        vc[i] = (va[i] + b) % radix[i];
                    }
                    int st = s ^ t;
                    mul[ai + s * m][bi + t * m] = (int)(encode(vc) + st * m);
                }
        }
    FiniteGroup g(std::move(mul), std::move(labels));
    std::vector<int> invs;
    for (long long ai = 0; ai < m; ++ai) invs.push_back((int)(ai + m));
    return {g, ConjClass(g, invs)};
}

std::vector<int> generated_set(const FiniteGroup& g, const std::vector<int>& gens) {
    std::set<int> cl{g.identity()};
    std::vector<int> frontier{g.identity()};
    for (int x : gens)
        if (cl.insert(x).second) frontier.push_back(x);
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier) {
            for (int y : gens) {
                for (int z : {g.mul(x, y), g.mul(y, x), g.inv(x)})
                    if (cl.insert(z).second) next.push_back(z);
            }
            if (gens.empty() && cl.insert(g.inv(x)).second) next.push_back(g.inv(x));
        }
        frontier = std::move(next);
    }
    // close under inverses and products within the closure
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> cur(cl.begin(), cl.end());
        for (int x : cur)
            for (int y : cur)
                if (cl.insert(g.mul(x, y)).second) changed = true;
        for (int x : cur)
            if (cl.insert(g.inv(x)).second) changed = true;
    }
    return {cl.begin(), cl.end()};
}

bool is_admissible(const FiniteGroup& g, const ConjClass& c) {
    if ((int)generated_set(g, c.elements()).size() != g.order()) return false;
    for (int x : c.elements())
        for (int n = 1; n <= g.order(); ++n) {
            if (std::gcd((long long)n, (long long)g.order()) != 1) continue;
            if (!c.contains(g.power(x, n))) return false;
        }
    return true;
}

bool is_nonsplitting(const FiniteGroup& g, const ConjClass& c) {
    if ((int)generated_set(g, c.elements()).size() != g.order()) return false;
    SubgroupTable table = subgroups(g);
    for (const auto& h : table.subgroups()) {
        std::vector<int> meet;
        for (int x : h)
            if (c.contains(x)) meet.push_back(x);
        if (meet.empty()) continue;
        // H-conjugacy class of the first common element
        std::set<int> hclass;
        for (int y : h) hclass.insert(g.conj(meet[0], y));
        if (std::vector<int>(hclass.begin(), hclass.end()) != meet) return false;
    }
    return true;
}

SubgroupTable subgroups(const FiniteGroup& g) {
    if (g.order() > 200) throw std::invalid_argument("subgroups: group order above 200 (too large)");
    std::set<std::vector<int>> found;
    found.insert({g.identity()});
    // closure sweep: extend each known subgroup by one generator until stable
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> cur(found.begin(), found.end());
        for (const auto& h : cur)
            for (int x = 0; x < g.order(); ++x) {
                if (std::binary_search(h.begin(), h.end(), x)) continue;
                std::vector<int> gens = h;
                gens.push_back(x);
                auto cl = generated_set(g, gens);
                if (found.insert(cl).second) grew = true;
            }
    }
    return SubgroupTable({found.begin(), found.end()});
}

int generated_subgroup(const FiniteGroup& g, const SubgroupTable& table,
                       const std::vector<int>& gens) {
    int id = table.find(generated_set(g, gens));
    if (id < 0) throw std::logic_error("generated_subgroup: closure missing from table");
    return id;
}

std::pair<FiniteGroup, ConjClass> parse_group_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("group spec: missing ':' in " + spec);
    std::string kind = spec.substr(0, colon), arg = spec.substr(colon + 1);
    if (kind == "gdih") {
        std::vector<int> factors;
        size_t pos = 0;
        while (pos < arg.size()) {
            size_t comma = arg.find(',', pos);
            if (comma == std::string::npos) comma = arg.size();
            factors.push_back(std::stoi(arg.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        if (factors.empty()) throw std::invalid_argument("group spec: gdih needs factors");
        // invariant factors ell^{e_i}; infer ell as the smallest prime divisor
        long long ell = -1;
        std::vector<int> exps;
        for (int f : factors) {
            if (f == 1) continue;
            long long p = 2;
            while (f % p != 0) ++p;
            if (ell < 0) ell = p;
            if (p != ell) throw std::invalid_argument("group spec: mixed primes in gdih factors");
            int e = 0;
            long long v = f;
            while (v > 1) {
                if (v % ell != 0) throw std::invalid_argument("group spec: factor not a prime power");
                v /= ell;
                ++e;
            }
            exps.push_back(e);
        }
        if (ell < 0) ell = 3; // trivial A
        std::sort(exps.rbegin(), exps.rend());
        return build_generalized_dihedral(AbelianGroupType(ell, exps));
    }
    if (kind == "sym") {
        int n = std::stoi(arg);
        FiniteGroup g = symmetric_group(n);
        // class of transpositions: order-2 elements fixing n-2 points; for
        // n <= 3 this is just the class of any involution
        std::vector<int> cls;
        if (n >= 2) {
            // find a transposition: conjugacy class of the first involution of cycle type (2,1^{n-2})
            // all transpositions are conjugate; locate (1 2) as the permutation swapping 0,1
            // by label structure: use conjugacy class of any element of order 2 with exactly
            // n-2 fixed points.
            for (int x = 0; x < g.order(); ++x)
                if (g.element_order(x) == 2) {
                    // count fixed points via action on {0..n-1} is not stored; use class size
                    auto cc = g.conjugacy_class_of(x);
                    if ((int)cc.size() == n * (n - 1) / 2) { cls = cc; break; }
                }
        }
        if (cls.empty()) throw std::invalid_argument("group spec: sym:n has no transposition class for n < 2");
        return {g, ConjClass(g, cls)};
    }
    if (kind == "cyclic") {
        int n = std::stoi(arg);
        FiniteGroup g = cyclic_group(n);
        std::vector<int> cls{n > 1 ? 1 : 0};
        return {g, ConjClass(g, cls)};
    }
    if (kind == "json") {
        std::ifstream in(arg);
        if (!in) throw std::invalid_argument("group spec: cannot open " + arg);
        nlohmann::json j;
        in >> j;
        std::vector<std::vector<int>> mul = j.at("mul").get<std::vector<std::vector<int>>>();
        if (j.contains("order") && (int)mul.size() != j.at("order").get<int>())
            throw std::invalid_argument("group spec: order field mismatches table");
        FiniteGroup g(std::move(mul));
        std::vector<int> cls = j.at("class").get<std::vector<int>>();
        return {g, ConjClass(g, cls)};
    }
    throw std::invalid_argument("group spec: unknown kind " + kind);
}

} // namespace hwlab

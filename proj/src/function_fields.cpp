#include "hurwitzlab/function_fields.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hwlab {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// polynomial arithmetic over F_p on digit vectors, used only to build the field
using PPoly = std::vector<int>;

PPoly ptrim(PPoly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

PPoly pmul(int p, const PPoly& a, const PPoly& b) {
    if (a.empty() || b.empty()) return {};
    PPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return ptrim(std::move(c));
}

PPoly pmod(int p, PPoly a, const PPoly& m) {
    a = ptrim(std::move(a));
    int inv_lead = 1;
    for (int x = 1; x < p; ++x)
        if (x * m.back() % p == 1) inv_lead = x;
    while (a.size() >= m.size()) {
        int c = a.back() * inv_lead % p;
        size_t off = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) a[off + i] = ((a[off + i] - c * m[i]) % p + p) % p;
        a = ptrim(std::move(a));
    }
    return a;
}

bool p_irreducible(int p, const PPoly& m) {
    int deg = (int)m.size() - 1;
    if (deg < 1) return false;
    // trial division by every monic polynomial of degree 1..deg/2
    for (int d = 1; 2 * d <= deg; ++d) {
        long long total = 1;
        for (int i = 0; i < d; ++i) total *= p;
        for (long long enc = 0; enc < total; ++enc) {
            PPoly div(d + 1, 0);
            long long e = enc;
            for (int i = 0; i < d; ++i) {
                div[i] = (int)(e % p);
                e /= p;
            }
            div[d] = 1;
            if (pmod(p, m, div).empty()) return false;
        }
    }
    return true;
}

} // namespace

FiniteField::FiniteField(int p, int k) : p_(p), k_(k) {
    if (!is_prime(p) || p == 2) throw std::invalid_argument("FiniteField: p must be an odd prime");
    if (k < 1 || k > 6) throw std::invalid_argument("FiniteField: extension degree out of range");
    long long q = 1;
    for (int i = 0; i < k; ++i) {
        q *= p;
        if (q > 4096) throw std::invalid_argument("FiniteField: q too large");
    }
    q_ = (int)q;

    if (k == 1) {
        modulus_ = {0, 1}; // x, for uniform reporting
    } else {
        // smallest monic irreducible of degree k in coefficient-encoding order
        long long total = 1;
        for (int i = 0; i < k; ++i) total *= p;
        bool found = false;
        for (long long enc = 0; enc < total && !found; ++enc) {
            PPoly m(k + 1, 0);
            long long e = enc;
            for (int i = 0; i < k; ++i) {
                m[i] = (int)(e % p);
                e /= p;
            }
            m[k] = 1;
            if (p_irreducible(p, m)) {
                modulus_.assign(m.begin(), m.end());
                found = true;
            }
        }
        if (!found) throw std::logic_error("FiniteField: no irreducible modulus found");
    }

    auto digits = [&](int a) {
        PPoly d(k_, 0);
        for (int i = 0; i < k_; ++i) {
            d[i] = a % p_;
            a /= p_;
        }
        return d;
    };
    auto encode = [&](const PPoly& d) {
        int a = 0;
        for (int i = k_; i-- > 0;) a = a * p_ + (i < (int)d.size() ? d[i] : 0);
        return a;
    };

    add_.assign(q_, std::vector<int>(q_));
    mul_.assign(q_, std::vector<int>(q_));
    neg_.assign(q_, 0);
    for (int a = 0; a < q_; ++a) {
        PPoly da = digits(a);
        PPoly na(k_);
        for (int i = 0; i < k_; ++i) na[i] = (p_ - da[i]) % p_;
        neg_[a] = encode(na);
        for (int b = 0; b < q_; ++b) {
            PPoly db = digits(b);
            PPoly s(k_);
            for (int i = 0; i < k_; ++i) s[i] = (da[i] + db[i]) % p_;
            add_[a][b] = encode(s);
            PPoly prod = pmul(p_, ptrim(da), ptrim(db));
            if (k_ > 1) prod = pmod(p_, std::move(prod), PPoly(modulus_.begin(), modulus_.end()));
            else if (!prod.empty()) prod = {prod[0] % p_};
            mul_[a][b] = encode(prod);
        }
    }
    inv_.assign(q_, 0);
    for (int a = 1; a < q_; ++a)
        for (int b = 1; b < q_; ++b)
            if (mul_[a][b] == 1) inv_[a] = b;

    non_square_ = 0;
    for (int a = 2; a < q_ && non_square_ == 0; ++a)
        if (!is_square(a)) non_square_ = a;
    if (non_square_ == 0) throw std::logic_error("FiniteField: no non-square found");
}

int FiniteField::inv(int a) const {
    if (a == 0) throw std::domain_error("FiniteField::inv(0)");
    return inv_[a];
}

int FiniteField::pow(int a, long long e) const {
    if (e < 0) return pow(inv(a), -e);
    int r = 1, base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

bool FiniteField::is_square(int a) const {
    if (a == 0) return true;
    return pow(a, (q_ - 1) / 2) == 1;
}

std::string FiniteField::modulus_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < modulus_.size(); ++i) os << (i ? "," : "") << modulus_[i];
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// polynomials over the field

int poly_deg(const Poly& f) { return (int)f.size() - 1; }

Poly poly_trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly poly_add(const FiniteField& F, const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = F.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    return poly_trim(std::move(c));
}

Poly poly_sub(const FiniteField& F, const Poly& a, const Poly& b) {
    Poly c(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = F.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    return poly_trim(std::move(c));
}

Poly poly_mul(const FiniteField& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = F.add(c[i + j], F.mul(a[i], b[j]));
    return poly_trim(std::move(c));
}

Poly poly_scale(const FiniteField& F, const Poly& a, int c) {
    Poly out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = F.mul(a[i], c);
    return poly_trim(std::move(out));
}

std::pair<Poly, Poly> poly_divmod(const FiniteField& F, const Poly& a, const Poly& b) {
    if (b.empty()) throw std::domain_error("poly_divmod: division by zero");
    Poly rem = poly_trim(a), quot;
    if ((int)a.size() >= (int)b.size()) quot.assign(a.size() - b.size() + 1, 0);
    int inv_lead = F.inv(b.back());
    while (rem.size() >= b.size()) {
        int c = F.mul(rem.back(), inv_lead);
        size_t off = rem.size() - b.size();
        quot[off] = c;
        for (size_t i = 0; i < b.size(); ++i)
            rem[off + i] = F.sub(rem[off + i], F.mul(c, b[i]));
        rem = poly_trim(std::move(rem));
    }
    return {poly_trim(std::move(quot)), std::move(rem)};
}

Poly poly_mod(const FiniteField& F, const Poly& a, const Poly& b) {
    return poly_divmod(F, a, b).second;
}

Poly poly_derivative(const FiniteField& F, const Poly& a) {
    Poly d;
    for (size_t i = 1; i < a.size(); ++i) {
        int c = 0;
        for (size_t j = 0; j < i % F.p(); ++j) c = F.add(c, a[i]);
        d.push_back(c);
    }
    return poly_trim(std::move(d));
}

Poly poly_monic(const FiniteField& F, const Poly& a) {
    if (a.empty()) return a;
    return poly_scale(F, a, F.inv(a.back()));
}

Poly poly_gcd(const FiniteField& F, Poly a, Poly b) {
    while (!b.empty()) {
        Poly r = poly_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(F, a);
}

void poly_ext_gcd(const FiniteField& F, const Poly& a, const Poly& b,
                  Poly& g, Poly& s, Poly& t) {
    Poly r0 = poly_trim(a), r1 = poly_trim(b);
    Poly s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
    while (!r1.empty()) {
        auto [q, r2] = poly_divmod(F, r0, r1);
        Poly s2 = poly_sub(F, s0, poly_mul(F, q, s1));
        Poly t2 = poly_sub(F, t0, poly_mul(F, q, t1));
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (!r0.empty()) {
        int c = F.inv(r0.back());
        r0 = poly_scale(F, r0, c);
        s0 = poly_scale(F, s0, c);
        t0 = poly_scale(F, t0, c);
    }
    g = std::move(r0);
    s = std::move(s0);
    t = std::move(t0);
}

int poly_eval(const FiniteField& F, const Poly& f, int x) {
    int v = 0;
    for (size_t i = f.size(); i-- > 0;) v = F.add(F.mul(v, x), f[i]);
    return v;
}

std::string poly_string(const FiniteField& F, const Poly& f) {
    (void)F;
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
    os << "]";
    return os.str();
}

bool poly_is_squarefree(const FiniteField& F, const Poly& f) {
    if (f.empty()) return false;
    Poly g = poly_gcd(F, f, poly_derivative(F, f));
    return poly_deg(g) <= 0;
}

std::vector<Poly> enumerate_monic_squarefree(const FiniteField& F, int n, std::uint64_t budget) {
    if (n < 1) throw std::invalid_argument("enumerate_monic_squarefree: n >= 1 required");
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) {
        total *= (std::uint64_t)F.q();
        if (total > budget) throw ResourceError("enumerate_monic_squarefree: budget exceeded");
    }
    std::vector<Poly> out;
    for (std::uint64_t enc = 0; enc < total; ++enc) {
        Poly f(n + 1, 0);
        std::uint64_t e = enc;
        for (int i = 0; i < n; ++i) {
            f[i] = (int)(e % F.q());
            e /= F.q();
        }
        f[n] = 1;
        if (poly_is_squarefree(F, f)) out.push_back(std::move(f));
    }
    return out;
}

// ---------------------------------------------------------------------------
// curves

Curve make_curve(const FiniteField& F, Poly f, bool twisted) {
    f = poly_trim(std::move(f));
    int n = poly_deg(f);
    if (n < 1 || n % 2 == 0 || f.back() != 1)
        throw std::invalid_argument("make_curve: f must be monic of odd degree");
    if (!poly_is_squarefree(F, f)) throw std::invalid_argument("make_curve: f not squarefree");
    Curve c;
    c.field = &F;
    c.f = f;
    c.twisted = twisted;
    c.genus = (n - 1) / 2;
    if (!twisted) {
        c.model = std::move(f);
    } else {
        // y^2 = eps f(t); with t = eps T the equation becomes
        // y^2 = sum_i a_i eps^{i+1} T^i, leading coefficient eps^{n+1} = (s^2),
        // and Y = y/s gives the monic model F(T) = sum_i a_i eps^{i-n} T^i.
        int eps = F.non_square();
        Poly model(f.size());
        for (int i = 0; i <= n; ++i) model[i] = F.mul(f[i], F.pow(eps, i - n));
        c.model = poly_trim(std::move(model));
        if (c.model.back() != 1) throw std::logic_error("make_curve: twist model not monic");
        if (!poly_is_squarefree(F, c.model))
            throw std::logic_error("make_curve: twist model not squarefree");
    }
    return c;
}

std::vector<Curve> curve_sweep(const FiniteField& F, int n, std::uint64_t budget) {
    if (n % 2 == 0) throw std::invalid_argument("curve_sweep: n must be odd");
    auto polys = enumerate_monic_squarefree(F, n, budget);
    std::vector<Curve> out;
    out.reserve(2 * polys.size());
    for (const auto& f : polys) {
        out.push_back(make_curve(F, f, false));
        out.push_back(make_curve(F, f, true));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Mumford arithmetic (Cantor composition and reduction)

MumfordDivisor mumford_identity() { return {{1}, {}}; }

bool mumford_valid(const Curve& c, const MumfordDivisor& d) {
    const FiniteField& F = *c.field;
    if (d.u.empty() || d.u.back() != 1) return false;
    if (poly_deg(d.u) > c.genus) return false;
    if (poly_deg(d.v) >= poly_deg(d.u) && !(d.u == Poly{1} && d.v.empty())) return false;
    Poly rem = poly_mod(F, poly_sub(F, poly_mul(F, d.v, d.v), c.model), d.u);
    return rem.empty();
}

MumfordDivisor mumford_negate(const Curve& c, const MumfordDivisor& d) {
    const FiniteField& F = *c.field;
    Poly nv(d.v.size());
    for (size_t i = 0; i < d.v.size(); ++i) nv[i] = F.neg(d.v[i]);
    return {d.u, poly_mod(F, poly_trim(std::move(nv)), d.u)};
}

MumfordDivisor cantor_compose_reduce(const Curve& c, const MumfordDivisor& a,
                                     const MumfordDivisor& b) {
    const FiniteField& F = *c.field;
    if (!mumford_valid(c, a) || !mumford_valid(c, b))
        throw std::invalid_argument("cantor_compose_reduce: invalid divisor");
    // composition
    Poly d0, e1, e2;
    poly_ext_gcd(F, a.u, b.u, d0, e1, e2);
    Poly vsum = poly_add(F, a.v, b.v);
    Poly d, c1, c2;
    poly_ext_gcd(F, d0, vsum, d, c1, c2);
    Poly s1 = poly_mul(F, c1, e1), s2 = poly_mul(F, c1, e2), s3 = c2;

    Poly u = poly_divmod(F, poly_mul(F, a.u, b.u), poly_mul(F, d, d)).first;
    Poly num = poly_add(F, poly_add(F, poly_mul(F, poly_mul(F, s1, a.u), b.v),
                                    poly_mul(F, poly_mul(F, s2, b.u), a.v)),
                        poly_mul(F, s3, poly_add(F, poly_mul(F, a.v, b.v), c.model)));
    Poly v = poly_mod(F, poly_divmod(F, num, d).first, u);
    u = poly_monic(F, u);
    // reduction
    while (poly_deg(u) > c.genus) {
        Poly u2 = poly_divmod(F, poly_sub(F, c.model, poly_mul(F, v, v)), u).first;
        u2 = poly_monic(F, u2);
        Poly nv(v.size());
        for (size_t i = 0; i < v.size(); ++i) nv[i] = F.neg(v[i]);
        v = poly_mod(F, poly_trim(std::move(nv)), u2);
        u = std::move(u2);
    }
    if (u.empty()) u = {1};
    return {std::move(u), std::move(v)};
}

MumfordDivisor mumford_scalar(const Curve& c, const MumfordDivisor& d, long long k) {
    if (k < 0) return mumford_scalar(c, mumford_negate(c, d), -k);
    MumfordDivisor acc = mumford_identity(), base = d;
    while (k > 0) {
        if (k & 1) acc = cantor_compose_reduce(c, acc, base);
        base = cantor_compose_reduce(c, base, base);
        k >>= 1;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// class numbers and group structure

namespace {

// F_{q^i} as F_q[x]/(m) with m monic irreducible of degree i over F_q
// (no-root test suffices for i <= 3).
struct ExtField {
    const FiniteField* base;
    int deg;
    Poly modulus;

    ExtField(const FiniteField& F, int i) : base(&F), deg(i) {
        if (i == 1) {
            modulus = {0, 1};
            return;
        }
        if (i > 3) throw std::invalid_argument("ExtField: degree > 3 unsupported");
        std::uint64_t total = 1;
        for (int j = 0; j < i; ++j) total *= (std::uint64_t)F.q();
        for (std::uint64_t enc = 0; enc < total; ++enc) {
            Poly m(i + 1, 0);
            std::uint64_t e = enc;
            for (int j = 0; j < i; ++j) {
                m[j] = (int)(e % F.q());
                e /= F.q();
            }
            m[i] = 1;
            bool has_root = false;
            for (int x = 0; x < F.q() && !has_root; ++x)
                if (poly_eval(F, m, x) == 0) has_root = true;
            if (!has_root) {
                modulus = std::move(m);
                return;
            }
        }
        throw std::logic_error("ExtField: no irreducible modulus");
    }

    Poly mul(const Poly& a, const Poly& b) const {
        if (deg == 1) return a.empty() || b.empty() ? Poly{} : Poly{base->mul(a[0], b[0])};
        return poly_mod(*base, poly_mul(*base, a, b), modulus);
    }
    // quadratic character of a nonzero element: a^{(q^deg - 1)/2}
    int chi(const Poly& a) const {
        if (a.empty()) return 0;
        long long e = 1;
        for (int j = 0; j < deg; ++j) e *= base->q();
        e = (e - 1) / 2;
        Poly r = {1}, p = a;
        while (e > 0) {
            if (e & 1) r = mul(r, p);
            p = mul(p, p);
            e >>= 1;
        }
        return (r == Poly{1}) ? 1 : -1;
    }
};

// sum over x in F_{q^i} of chi(model(x))
long long char_sum(const Curve& c, int i) {
    const FiniteField& F = *c.field;
    ExtField E(F, i);
    std::uint64_t total = 1;
    for (int j = 0; j < i; ++j) total *= (std::uint64_t)F.q();
    long long s = 0;
    for (std::uint64_t enc = 0; enc < total; ++enc) {
        Poly x(i, 0);
        std::uint64_t e = enc;
        for (int j = 0; j < i; ++j) {
            x[j] = (int)(e % F.q());
            e /= F.q();
        }
        x = poly_trim(std::move(x));
        // Horner with coefficients embedded as constants
        Poly val = {};
        for (size_t j = c.model.size(); j-- > 0;) {
            val = E.mul(val, x);
            if (c.model[j] != 0) val = poly_add(F, val, Poly{c.model[j]});
        }
        s += E.chi(val);
    }
    return s;
}

} // namespace

long long zeta_class_number(const Curve& c) {
    int g = c.genus;
    if (g > 3) throw std::invalid_argument("zeta_class_number: genus > 3 unsupported");
    if (g == 0) return 1;
    long long q = c.field->q();
    // P(T) = prod (1 - alpha_j T) = sum_k (-1)^k e_k T^k with power sums
    // p_i = S_i = -char_sum_i (one point at infinity; N_i = q^i + 1 + char_sum_i)
    std::vector<long long> p(g + 1, 0), e(2 * g + 1, 0);
    for (int i = 1; i <= g; ++i) p[i] = -char_sum(c, i);
    e[0] = 1;
    for (int k = 1; k <= g; ++k) {
        long long acc = 0;
        int sgn = 1;
        for (int j = 1; j <= k; ++j) {
            acc += sgn * e[k - j] * p[j];
            sgn = -sgn;
        }
        if (acc % k != 0 && -acc % k != 0)
            throw std::logic_error("zeta_class_number: Newton identity not integral");
        e[k] = acc / k;
    }
    // functional equation: c_{2g-j} = q^{g-j} c_j with c_k = (-1)^k e_k
    std::vector<long long> coef(2 * g + 1, 0);
    for (int k = 0; k <= g; ++k) coef[k] = (k % 2 == 0 ? e[k] : -e[k]);
    for (int j = 0; j < g; ++j) {
        long long qp = 1;
        for (int i = 0; i < g - j; ++i) qp *= q;
        coef[2 * g - j] = qp * coef[j];
    }
    long long h = 0;
    for (int k = 0; k <= 2 * g; ++k) h += coef[k];
    if (h <= 0) throw std::logic_error("zeta_class_number: nonpositive class number");
    return h;
}

namespace {

std::vector<MumfordDivisor> enumerate_jacobian(const Curve& c, std::uint64_t budget) {
    const FiniteField& F = *c.field;
    std::uint64_t cost = 0, pw = 1;
    for (int du = 1; du <= c.genus; ++du) {
        pw *= (std::uint64_t)F.q() * F.q();
        cost += pw;
        if (cost > budget) throw ResourceError("jacobian enumeration: budget exceeded");
    }
    std::vector<MumfordDivisor> elems = {mumford_identity()};
    for (int du = 1; du <= c.genus; ++du) {
        std::uint64_t nu = 1, nv = 1;
        for (int i = 0; i < du; ++i) {
            nu *= F.q();
            nv *= F.q();
        }
        for (std::uint64_t eu = 0; eu < nu; ++eu) {
            Poly u(du + 1, 0);
            std::uint64_t e = eu;
            for (int i = 0; i < du; ++i) {
                u[i] = (int)(e % F.q());
                e /= F.q();
            }
            u[du] = 1;
            for (std::uint64_t ev = 0; ev < nv; ++ev) {
                Poly v(du, 0);
                e = ev;
                for (int i = 0; i < du; ++i) {
                    v[i] = (int)(e % F.q());
                    e /= F.q();
                }
                v = poly_trim(std::move(v));
                if (poly_mod(F, poly_sub(F, poly_mul(F, v, v), c.model), u).empty())
                    elems.push_back({u, v});
            }
        }
    }
    return elems;
}

// recover the exponent partition of the ell-part from torsion counts
std::vector<int> ell_exponents(const Curve& c, const std::vector<MumfordDivisor>& elems,
                               long long ell, int e_total) {
    MumfordDivisor id = mumford_identity();
    std::vector<int> parts_ge; // parts_ge[k-1] = #exponents >= k
    long long prev = 1, lk = ell;
    for (int k = 1; k <= e_total; ++k) {
        long long t = 0;
        for (const auto& d : elems)
            if (mumford_scalar(c, d, lk) == id) ++t;
        if (t % prev != 0) throw std::logic_error("ell_exponents: torsion counts inconsistent");
        long long ratio = t / prev;
        int r = 0;
        long long x = 1;
        while (x < ratio) {
            x *= ell;
            ++r;
        }
        if (x != ratio) throw std::logic_error("ell_exponents: torsion ratio not an ell power");
        parts_ge.push_back(r);
        prev = t;
        lk *= ell;
        if (r == 0) break;
    }
    std::vector<int> exps; // non-increasing
    int nparts = parts_ge.empty() ? 0 : parts_ge[0];
    for (int j = 1; j <= nparts; ++j) {
        int e = 0;
        for (int k = 0; k < (int)parts_ge.size(); ++k)
            if (parts_ge[k] >= j) e = k + 1;
        exps.push_back(e);
    }
    return exps;
}

} // namespace

AbelianGroupType AbelianGroupStructure::ell_part(long long ell) const {
    if (!structure_known) throw std::logic_error("ell_part: structure unknown");
    std::vector<int> exps;
    for (long long d : invariant_factors) {
        int e = 0;
        while (d % ell == 0) {
            d /= ell;
            ++e;
        }
        if (e > 0) exps.push_back(e);
    }
    std::sort(exps.begin(), exps.end(), std::greater<int>());
    return AbelianGroupType(ell, exps);
}

AbelianGroupStructure jacobian_structure(const Curve& c, std::uint64_t budget) {
    AbelianGroupStructure s;
    std::vector<MumfordDivisor> elems;
    try {
        elems = enumerate_jacobian(c, budget);
    } catch (const ResourceError&) {
        s.order = zeta_class_number(c);
        s.structure_known = false;
        return s;
    }
    s.order = (long long)elems.size();

    // per-prime exponent partitions, assembled into invariant factors
    long long h = s.order;
    std::map<long long, std::vector<int>> parts;
    for (long long p = 2; p * p <= h; ++p)
        if (h % p == 0) {
            int e = 0;
            while (h % p == 0) {
                h /= p;
                ++e;
            }
            parts[p] = ell_exponents(c, elems, p, e);
        }
    if (h > 1) {
        int e = 0;
        long long hh = s.order;
        while (hh % h == 0 && hh > 1) {
            hh /= h;
            ++e;
        }
        parts[h] = ell_exponents(c, elems, h, e);
    }
    size_t width = 0;
    for (const auto& [p, exps] : parts) width = std::max(width, exps.size());
    std::vector<long long> factors(width, 1); // descending d_k | ... | d_1
    for (const auto& [p, exps] : parts)
        for (size_t i = 0; i < exps.size(); ++i)
            for (int j = 0; j < exps[i]; ++j) factors[i] *= p;
    std::reverse(factors.begin(), factors.end()); // ascending divisibility chain
    s.invariant_factors = std::move(factors);
    long long check = 1;
    for (long long d : s.invariant_factors) check *= d;
    if (check != s.order) throw std::logic_error("jacobian_structure: factor product mismatch");
    return s;
}

// ---------------------------------------------------------------------------
// Cohen-Lenstra

bool good_for_ell(int q, long long ell) {
    return q % 2 == 1 && q % ell != 0 && (q - 1) % ell != 0;
}

namespace {

// element list of an abelian ell-group with the given invariant exponents
struct SmallAbelian {
    long long ell;
    std::vector<int> exps;
    std::vector<long long> moduli;
    long long order = 1;

    explicit SmallAbelian(const AbelianGroupType& t) : ell(t.prime), exps(t.exponents) {
        for (int e : exps) {
            long long m = 1;
            for (int i = 0; i < e; ++i) m *= ell;
            moduli.push_back(m);
            order *= m;
        }
    }
    std::vector<long long> decode(long long idx) const {
        std::vector<long long> v(moduli.size());
        for (size_t i = 0; i < moduli.size(); ++i) {
            v[i] = idx % moduli[i];
            idx /= moduli[i];
        }
        return v;
    }
    long long encode(const std::vector<long long>& v) const {
        long long idx = 0;
        for (size_t i = moduli.size(); i-- > 0;) idx = idx * moduli[i] + v[i];
        return idx;
    }
    long long add(long long a, long long b) const {
        auto va = decode(a), vb = decode(b);
        for (size_t i = 0; i < moduli.size(); ++i) va[i] = (va[i] + vb[i]) % moduli[i];
        return encode(va);
    }
    long long smul(long long k, long long a) const {
        auto v = decode(a);
        for (size_t i = 0; i < moduli.size(); ++i) v[i] = (v[i] * (k % moduli[i])) % moduli[i];
        return encode(v);
    }
};

} // namespace

long long count_surjections(const AbelianGroupType& source, const AbelianGroupType& target) {
    if (!source.exponents.empty() && !target.exponents.empty() && source.prime != target.prime)
        throw std::invalid_argument("count_surjections: prime mismatch");
    if (source.order() > 10000 || target.order() > 10000)
        throw std::invalid_argument("count_surjections: order too large");
    static std::map<std::pair<std::pair<long long, std::vector<int>>,
                              std::pair<long long, std::vector<int>>>,
                    long long>
        memo;
    auto key = std::make_pair(std::make_pair(source.prime, source.exponents),
                              std::make_pair(target.prime, target.exponents));
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    SmallAbelian tgt(target);
    if (target.exponents.empty()) return memo[key] = 1; // zero map onto trivial group
    if (source.exponents.empty()) return memo[key] = 0;

    long long ell = target.prime;
    // admissible images per source generator: elements killed by ell^{e_i}
    std::vector<std::vector<long long>> choices;
    double tuples = 1;
    for (int e : source.exponents) {
        long long le = 1;
        for (int i = 0; i < e; ++i) le *= ell;
        std::vector<long long> adm;
        for (long long x = 0; x < tgt.order; ++x)
            if (tgt.smul(le, x) == 0) adm.push_back(x);
        tuples *= (double)adm.size();
        choices.push_back(std::move(adm));
    }
    if (tuples > 1e7) throw std::invalid_argument("count_surjections: search too large");

    long long count = 0;
    std::vector<size_t> idx(choices.size(), 0);
    while (true) {
        // generated subgroup of the chosen images
        std::vector<char> in(tgt.order, 0);
        in[0] = 1;
        std::vector<long long> frontier = {0};
        long long size = 1;
        for (size_t i = 0; i < choices.size(); ++i) {
            long long g = choices[i][idx[i]];
            std::vector<long long> cur(frontier);
            for (long long x : cur) {
                long long y = x;
                while (true) {
                    y = tgt.add(y, g);
                    if (in[y]) break;
                    in[y] = 1;
                    frontier.push_back(y);
                    ++size;
                }
            }
        }
        if (size == tgt.order) ++count;
        size_t k = 0;
        while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
        if (k == idx.size()) break;
    }
    return memo[key] = count;
}

double mu_cohen_lenstra(const AbelianGroupType& a, double tol) {
    long long ell = a.prime;
    if (a.order() > 10000) throw std::invalid_argument("mu_cohen_lenstra: order too large");
    double prod = 1.0, li = 1.0;
    int i = 0;
    // tail of the product changes the value by less than ell^{-I}/(ell-1)
    while (li / (double)(ell - 1) >= tol || i < 1) {
        ++i;
        li /= (double)ell;
        prod *= 1.0 - li;
    }
    long long aut = count_surjections(a, a);
    return prod / (double)aut;
}

namespace {

std::string group_type_string(const AbelianGroupType& t) {
    if (t.exponents.empty()) return "1";
    std::ostringstream os;
    for (size_t i = 0; i < t.exponents.size(); ++i) {
        long long m = 1;
        for (int j = 0; j < t.exponents[i]; ++j) m *= t.prime;
        os << (i ? "+" : "") << "Z/" << m;
    }
    return os.str();
}

} // namespace

CLReport cl_statistics(const FiniteField& F, int n, const AbelianGroupType& a,
                       bool keep_rows, bool allow_bad, std::uint64_t budget) {
    long long ell = a.prime;
    CLReport rep;
    rep.q = F.q();
    rep.n = n;
    rep.a = group_type_string(a);
    rep.ell = ell;
    rep.good = good_for_ell(F.q(), ell);
    rep.eps = F.non_square();
    rep.modulus = F.modulus_string();
    if (!rep.good && !allow_bad)
        throw std::invalid_argument("cl_statistics: q is not good for ell (use allow_bad)");

    auto curves = curve_sweep(F, n, budget);
    rep.s_n_size = (long long)curves.size();
    long long qn1 = 1;
    for (int i = 0; i < n - 1; ++i) qn1 *= F.q();
    long long expected = n >= 2 ? 2 * (qn1 * F.q() - qn1) : 2ll * F.q();
    if (rep.s_n_size != expected) throw std::logic_error("cl_statistics: |S_n| mismatch");

    long long hits = 0;
    for (const auto& c : curves) {
        AbelianGroupStructure st = jacobian_structure(c);
        if (!st.structure_known)
            throw ResourceError("cl_statistics: jacobian enumeration exceeded budget");
        if (st.order != zeta_class_number(c))
            throw std::logic_error("cl_statistics: class-number cross-check failed");
        AbelianGroupType lp = st.ell_part(ell);
        long long ma = count_surjections(lp, a);
        bool iota = lp.exponents == a.exponents;
        rep.sum_ma += ma;
        if (iota) ++hits;
        if (keep_rows)
            rep.rows.push_back({poly_string(F, c.f), c.twisted, st.order,
                                group_type_string(lp), ma, iota});
    }
    rep.average = (double)rep.sum_ma / (double)rep.s_n_size;
    rep.density = (double)hits / (double)rep.s_n_size;
    rep.mu_reference = mu_cohen_lenstra(a);
    return rep;
}

} // namespace hwlab

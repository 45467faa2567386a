#include "divcode/gf.hpp"

#include <algorithm>
#include <stdexcept>

namespace divcode::gf {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Polynomials over GF(p): ascending coefficient vectors, no trailing zeros.

std::vector<unsigned> poly_trim(std::vector<unsigned> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

std::vector<unsigned> poly_mod(std::vector<unsigned> a, const std::vector<unsigned>& m, unsigned p) {
    a = poly_trim(std::move(a));
    const std::size_t dm = m.size() - 1;
    // m is monic
    while (a.size() > dm) {
        unsigned c = a.back();
        std::size_t shift = a.size() - 1 - dm;
        if (c != 0) {
            for (std::size_t i = 0; i <= dm; ++i) {
                unsigned& t = a[shift + i];
                t = (t + p - (c * m[i]) % p) % p;
            }
        }
        a.pop_back();
        while (!a.empty() && a.back() == 0) a.pop_back();
    }
    return a;
}

std::vector<unsigned> poly_mulmod(const std::vector<unsigned>& a, const std::vector<unsigned>& b,
                                  const std::vector<unsigned>& m, unsigned p) {
    if (a.empty() || b.empty()) return {};
    std::vector<unsigned> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return poly_mod(std::move(r), m, p);
}

}  // namespace

bool is_irreducible(const std::vector<unsigned>& poly, unsigned p) {
    auto f = poly_trim(poly);
    if (f.size() < 2) return false;  // constants are not irreducible
    unsigned deg = static_cast<unsigned>(f.size() - 1);
    if (deg == 1) return true;
    // trial division by every monic polynomial of degree 1 .. deg/2
    for (unsigned d = 1; 2 * d <= deg; ++d) {
        std::vector<unsigned> g(d + 1, 0);
        g[d] = 1;
        // odometer over the d low coefficients
        while (true) {
            if (poly_mod(f, g, p).empty()) return false;
            unsigned i = 0;
            while (i < d && ++g[i] == p) g[i++] = 0;
            if (i == d) break;
        }
    }
    return true;
}

namespace {

struct ConwayEntry {
    unsigned p, e;
    std::vector<unsigned> coeffs;  // ascending, monic
};

// Conway polynomials, ascending coefficients (c_0 first). Data after Frank
// Luebeck's table of Conway polynomials; covers q <= 1024 for p in {2,3,5,7}.
const ConwayEntry kConway[] = {
    {2, 1, {1, 1}},
    {2, 2, {1, 1, 1}},
    {2, 3, {1, 1, 0, 1}},
    {2, 4, {1, 1, 0, 0, 1}},
    {2, 5, {1, 0, 1, 0, 0, 1}},
    {2, 6, {1, 1, 0, 1, 1, 0, 1}},
    {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
    {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
    {2, 9, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
    {2, 10, {1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1}},
    {3, 1, {1, 1}},
    {3, 2, {2, 2, 1}},
    {3, 3, {1, 2, 0, 1}},
    {3, 4, {2, 0, 0, 2, 1}},
    {3, 5, {1, 2, 0, 0, 0, 1}},
    {3, 6, {2, 2, 1, 0, 2, 0, 1}},
    {5, 1, {3, 1}},
    {5, 2, {2, 4, 1}},
    {5, 3, {3, 3, 0, 1}},
    {5, 4, {2, 4, 4, 0, 1}},
    {7, 1, {4, 1}},
    {7, 2, {3, 6, 1}},
    {7, 3, {4, 0, 6, 1}},
};

std::vector<unsigned> factor_distinct_primes(unsigned n) {
    std::vector<unsigned> primes;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            primes.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) primes.push_back(n);
    return primes;
}

}  // namespace

std::optional<std::vector<unsigned>> conway_polynomial(unsigned p, unsigned e) {
    for (const auto& c : kConway)
        if (c.p == p && c.e == e) return c.coeffs;
    return std::nullopt;
}

Field Field::make(unsigned p, unsigned e) {
    auto cw = conway_polynomial(p, e);
    if (!cw)
        throw std::invalid_argument("gf: no built-in modulus for p=" + std::to_string(p) +
                                    " e=" + std::to_string(e) + "; supply one explicitly");
    return build(p, e, *cw);
}

Field Field::make(unsigned p, unsigned e, const std::vector<unsigned>& modulus) {
    return build(p, e, modulus);
}

Field Field::build(unsigned p, unsigned e, std::vector<unsigned> modulus) {
    if (!is_prime(p)) throw std::invalid_argument("gf: p must be prime");
    if (e < 1) throw std::invalid_argument("gf: e must be >= 1");

    unsigned long long q_ull = 1;
    for (unsigned i = 0; i < e; ++i) {
        q_ull *= p;
        if (q_ull > (1ull << 16)) throw std::invalid_argument("gf: q = p^e exceeds 2^16");
    }
    const unsigned q = static_cast<unsigned>(q_ull);

    for (auto& c : modulus) c %= p;
    if (modulus.size() != e + 1 || modulus.back() != 1)
        throw std::invalid_argument("gf: modulus must be monic of degree e");
    if (!is_irreducible(modulus, p))
        throw std::invalid_argument("gf: modulus is reducible over GF(p)");

    auto t = std::make_shared<Tables>();
    t->p = p;
    t->e = e;
    t->q = q;
    t->modulus = modulus;

    // Element <-> polynomial conversions on the integer encoding.
    auto to_poly = [&](Elem x) {
        std::vector<unsigned> v;
        unsigned u = x;
        while (u) {
            v.push_back(u % p);
            u /= p;
        }
        return v;
    };
    auto from_poly = [&](const std::vector<unsigned>& v) {
        unsigned x = 0;
        for (std::size_t i = v.size(); i-- > 0;) x = x * p + v[i];
        return static_cast<Elem>(x);
    };
    auto raw_mul = [&](Elem x, Elem y) {
        return from_poly(poly_mulmod(to_poly(x), to_poly(y), modulus, p));
    };

    // Find a generator of the multiplicative group: the order of g divides
    // q-1; g is a generator iff g^((q-1)/r) != 1 for every prime r | q-1.
    const auto primes = factor_distinct_primes(q - 1);
    auto raw_pow = [&](Elem x, unsigned n) {
        Elem r = 1, b = x;
        while (n) {
            if (n & 1) r = raw_mul(r, b);
            b = raw_mul(b, b);
            n >>= 1;
        }
        return r;
    };
    Elem gen = 0;
    for (unsigned c = 1; c < q; ++c) {
        bool ok = true;
        for (unsigned r : primes)
            if (raw_pow(static_cast<Elem>(c), (q - 1) / r) == 1) {
                ok = false;
                break;
            }
        if (ok) {
            gen = static_cast<Elem>(c);
            break;
        }
    }
    t->gen = gen;

    t->exp.assign(2 * (q - 1), 0);
    t->log.assign(q, 0);
    Elem x = 1;
    for (unsigned i = 0; i < q - 1; ++i) {
        t->exp[i] = x;
        t->exp[i + (q - 1)] = x;
        t->log[x] = static_cast<int>(i);
        x = raw_mul(x, gen);
    }

    if (q <= 4096) {
        t->add_table.assign(static_cast<std::size_t>(q) * q, 0);
        for (unsigned i = 0; i < q; ++i)
            for (unsigned j = 0; j < q; ++j) {
                unsigned s = 0, f = 1, a = i, b = j;
                while (a || b) {
                    s += f * ((a + b) % p);
                    a /= p;
                    b /= p;
                    f *= p;
                }
                t->add_table[static_cast<std::size_t>(i) * q + j] = static_cast<Elem>(s);
            }
    }

    return Field(std::move(t));
}

void Field::check(Elem x) const {
    if (x >= t_->q) throw std::invalid_argument("gf: element out of range for this field");
}

Elem Field::add_slow(Elem x, Elem y) const {
    unsigned p = t_->p, s = 0, f = 1, a = x, b = y;
    while (a || b) {
        s += f * ((a + b) % p);
        a /= p;
        b /= p;
        f *= p;
    }
    return static_cast<Elem>(s);
}

Elem Field::add(Elem x, Elem y) const {
    check(x);
    check(y);
    if (!t_->add_table.empty()) return t_->add_table[static_cast<std::size_t>(x) * t_->q + y];
    return add_slow(x, y);
}

Elem Field::neg(Elem x) const {
    check(x);
    unsigned p = t_->p, s = 0, f = 1, a = x;
    while (a) {
        s += f * ((p - a % p) % p);
        a /= p;
        f *= p;
    }
    return static_cast<Elem>(s);
}

Elem Field::sub(Elem x, Elem y) const { return add(x, neg(y)); }

Elem Field::mul(Elem x, Elem y) const {
    check(x);
    check(y);
    if (x == 0 || y == 0) return 0;
    return t_->exp[static_cast<unsigned>(t_->log[x]) + static_cast<unsigned>(t_->log[y])];
}

Elem Field::inv(Elem x) const {
    check(x);
    if (x == 0) throw std::domain_error("gf: inverse of zero");
    return t_->exp[(t_->q - 1) - static_cast<unsigned>(t_->log[x])];
}

Elem Field::div(Elem x, Elem y) const { return mul(x, inv(y)); }

Elem Field::pow(Elem x, long long n) const {
    check(x);
    if (x == 0) {
        if (n == 0) return 1;
        if (n < 0) throw std::domain_error("gf: negative power of zero");
        return 0;
    }
    const long long m = t_->q - 1;
    long long r = n % m;
    if (r < 0) r += m;
    return t_->exp[(static_cast<unsigned>(t_->log[x]) * static_cast<unsigned long long>(r)) % m];
}

char Field::digit(Elem x) const {
    check(x);
    if (t_->q > 16) throw std::domain_error("gf: digit serialization requires q <= 16");
    return x < 10 ? static_cast<char>('0' + x) : static_cast<char>('a' + (x - 10));
}

Elem Field::parse_digit(char c) const {
    int v = -1;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = 10 + (c - 'a');
    else if (c >= 'A' && c <= 'F') v = 10 + (c - 'A');
    if (v < 0 || static_cast<unsigned>(v) >= t_->q)
        throw std::invalid_argument(std::string("gf: invalid digit '") + c + "' for q=" +
                                    std::to_string(t_->q));
    return static_cast<Elem>(v);
}

bool Field::operator==(const Field& o) const {
    return t_ == o.t_ ||
           (t_->p == o.t_->p && t_->e == o.t_->e && t_->modulus == o.t_->modulus);
}

}  // namespace divcode::gf

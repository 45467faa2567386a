#include "divcode/expansion.hpp"

#include <stdexcept>

namespace divcode::expansion {

namespace {

Int ipow(unsigned base, unsigned exp) {
    Int r = 1;
    Int b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

// x^-1 mod m for small m, gcd(x, m) = 1.
long long inv_mod(long long x, long long m) {
    long long r0 = m, r1 = x % m, s0 = 0, s1 = 1;
    while (r1) {
        long long qt = r0 / r1;
        r0 -= qt * r1;
        std::swap(r0, r1);
        s0 -= qt * s1;
        std::swap(s0, s1);
    }
    if (r0 != 1) throw std::logic_error("inv_mod: arguments not coprime");
    return ((s0 % m) + m) % m;
}

// n mod m in [0, m) for cpp_int n and small positive m.
long long mod_small(const Int& n, long long m) {
    Int r = n % m;
    if (r < 0) r += m;
    return r.convert_to<long long>();
}

unsigned smallest_prime_factor(unsigned n) {
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return d;
    return n;
}

}  // namespace

Int DivParams::delta() const { return ipow(p, f()); }

DivParams DivParams::make(unsigned q, unsigned a, unsigned b) {
    if (q < 2) throw std::invalid_argument("DivParams: q must be a prime power >= 2");
    unsigned p = smallest_prime_factor(q);
    unsigned e = 0, t = q;
    while (t % p == 0) {
        t /= p;
        ++e;
    }
    if (t != 1) throw std::invalid_argument("DivParams: q is not a prime power");
    if (a < 1) throw std::invalid_argument("DivParams: a must be >= 1");
    if (b > e - 1) throw std::invalid_argument("DivParams: b must satisfy 0 <= b <= e-1");
    return DivParams{q, p, e, a, b};
}

DivParams DivParams::from_exponent(unsigned q, unsigned f) {
    if (f < 1) throw std::invalid_argument("DivParams: exponent must be >= 1");
    DivParams probe = make(q, 1, 0);  // validates q, extracts p and e
    unsigned a = (f + probe.e - 1) / probe.e;
    unsigned b = a * probe.e - f;
    return make(q, a, b);
}

Int gaussian(unsigned i, unsigned q) {
    if (q < 2) throw std::invalid_argument("gaussian: q must be >= 2");
    return (ipow(q, i) - 1) / (q - 1);
}

std::vector<Int> base_sequence(const DivParams& params) {
    std::vector<Int> s(params.a + 1);
    s[0] = gaussian(params.a + 1, params.q);
    for (unsigned i = 1; i <= params.a; ++i)
        s[i] = ipow(params.p, i * params.e - params.b) * gaussian(params.a - i + 1, params.q);
    return s;
}

Expansion expand(const Int& n, const DivParams& params) {
    const unsigned a = params.a;
    const auto s = base_sequence(params);
    std::vector<Int> c(a + 1);

    // c_0 is the unique residue of n * s_0^-1 mod p^(e-b); afterwards the
    // remainder is divisible by p^(e-b) and the same step repeats with
    // modulus q per position. The leading coefficient absorbs the rest.
    const long long m0 = ipow(params.p, params.e - params.b).convert_to<long long>();
    long long c0 = mod_small(n, m0) * inv_mod(mod_small(s[0], m0), m0) % m0;
    c[0] = c0;
    Int r = n - c0 * s[0];

    for (unsigned j = 1; j < a; ++j) {
        const Int pj = ipow(params.p, j * params.e - params.b);
        Int u = r / pj;  // exact by construction
        const long long mq = params.q;
        long long mj = mod_small(gaussian(a - j + 1, params.q), mq);
        long long cj = mod_small(u, mq) * inv_mod(mj, mq) % mq;
        c[j] = cj;
        r -= cj * s[j];
    }

    c[a] = r / s[a];  // s_a = p^(a*e-b); division is exact
    return Expansion{params, n, std::move(c)};
}

Int cross_sum(const Expansion& exp) {
    Int sum = ipow(exp.params.p, exp.params.b) * exp.coeffs[0];
    for (std::size_t i = 1; i < exp.coeffs.size(); ++i) sum += exp.coeffs[i];
    return sum;
}

bool feasible(const Int& n, const DivParams& params) {
    if (n < 0) throw std::domain_error("feasible: n must be non-negative");
    return expand(n, params).leading() >= 0;
}

bool feasible_general(const Int& n, unsigned q, const Int& delta) {
    if (n < 0) throw std::domain_error("feasible_general: n must be non-negative");
    if (delta < 1) throw std::invalid_argument("feasible_general: Delta must be >= 1");
    DivParams probe = DivParams::make(q, 1, 0);
    Int t = delta;
    unsigned f = 0;
    while (t % probe.p == 0) {
        t /= probe.p;
        ++f;
    }
    if (n % t != 0) return false;
    if (f == 0) return true;
    return feasible(n / t, DivParams::from_exponent(q, f));
}

Int frobenius_number(const DivParams& params) {
    return params.a * ipow(params.p, (params.a + 1) * params.e - params.b) -
           gaussian(params.a + 1, params.q);
}

Int sylvester(const Int& a1, const Int& a2) {
    if (a1 < 1 || a2 < 1) throw std::invalid_argument("sylvester: arguments must be positive");
    if (boost::multiprecision::gcd(a1, a2) != 1)
        throw std::invalid_argument("sylvester: arguments must be coprime");
    return a1 * a2 - a1 - a2;
}

std::optional<std::vector<long long>> coin_representable(long long n,
                                                         const std::vector<long long>& coins) {
    if (coins.empty()) throw std::invalid_argument("coin_representable: empty coin list");
    for (auto c : coins)
        if (c <= 0) throw std::invalid_argument("coin_representable: coins must be positive");
    if (n < 0) throw std::domain_error("coin_representable: n must be non-negative");
    if (n > 100'000'000) throw std::invalid_argument("coin_representable: n too large for DP oracle");
    if (coins.size() > 255) throw std::invalid_argument("coin_representable: too many coins");

    // used[x] = 1 + index of a coin completing x, 0 if unreachable.
    std::vector<std::uint8_t> used(static_cast<std::size_t>(n) + 1, 0);
    std::vector<bool> reach(static_cast<std::size_t>(n) + 1, false);
    reach[0] = true;
    for (long long x = 1; x <= n; ++x) {
        for (std::size_t k = 0; k < coins.size(); ++k) {
            if (coins[k] <= x && reach[static_cast<std::size_t>(x - coins[k])]) {
                reach[static_cast<std::size_t>(x)] = true;
                used[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(k + 1);
                break;
            }
        }
    }
    if (!reach[static_cast<std::size_t>(n)]) return std::nullopt;

    std::vector<long long> counts(coins.size(), 0);
    for (long long x = n; x > 0;) {
        std::size_t k = used[static_cast<std::size_t>(x)] - 1;
        ++counts[k];
        x -= coins[k];
    }
    return counts;
}

}  // namespace divcode::expansion

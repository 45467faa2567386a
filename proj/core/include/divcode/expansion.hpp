#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

namespace divcode::expansion {

using Int = boost::multiprecision::cpp_int;

/// The divisibility regime under study: Delta = p^(a*e-b) over GF(q), q = p^e,
/// with a >= 1 and 0 <= b <= e-1.
struct DivParams {
    unsigned q = 0, p = 0, e = 0;
    unsigned a = 0, b = 0;

    unsigned f() const { return a * e - b; }
    Int delta() const;

    static DivParams make(unsigned q, unsigned a, unsigned b);
    /// Parameters for Delta = p^f: a = ceil(f/e), b = a*e - f (requires f >= 1).
    static DivParams from_exponent(unsigned q, unsigned f);
};

/// [i]_q = (q^i - 1)/(q - 1), the number of points of an i-dimensional
/// subspace; gaussian(0, q) = 0.
Int gaussian(unsigned i, unsigned q);

/// The base sequence (s_q(a,b,0), ..., s_q(a,b,a)): s_q(a,b,0) = [a+1]_q and
/// s_q(a,b,i) = p^(i*e-b) * [a-i+1]_q for 1 <= i <= a.
std::vector<Int> base_sequence(const DivParams& params);

/// The unique expansion n = sum c_i * s_q(a,b,i) with c_0 in [0, p^(e-b)),
/// c_1..c_{a-1} in [0, q) and unbounded leading coefficient c_a.
struct Expansion {
    DivParams params;
    Int n;
    std::vector<Int> coeffs;  // c_0 .. c_a

    const Int& leading() const { return coeffs.back(); }
};

Expansion expand(const Int& n, const DivParams& params);

/// p^b * c_0 + c_1 + ... + c_a.
Int cross_sum(const Expansion& exp);

/// True iff the leading coefficient of the expansion of n is non-negative,
/// i.e. iff a p^(a*e-b)-divisible linear code of effective length n exists
/// over GF(q). Requires n >= 0.
bool feasible(const Int& n, const DivParams& params);

/// Feasibility for arbitrary Delta >= 1: factor Delta = t * p^f with t coprime
/// to p; a Delta-divisible code of effective length n exists iff t | n and
/// (f = 0 or feasible(n/t) for the p^f regime).
bool feasible_general(const Int& n, unsigned q, const Int& delta);

/// The largest n not representable as a non-negative integer combination of
/// the base sequence: a * p^((a+1)e-b) - [a+1]_q.
Int frobenius_number(const DivParams& params);

/// Largest integer not representable over two coprime coin values:
/// a1*a2 - a1 - a2. Throws if gcd(a1, a2) != 1.
Int sylvester(const Int& a1, const Int& a2);

/// Dynamic-programming coin oracle: a non-negative combination of `coins`
/// summing to n (returned as one count per coin), or nullopt. Independent of
/// the expansion machinery.
std::optional<std::vector<long long>> coin_representable(long long n,
                                                         const std::vector<long long>& coins);

}  // namespace divcode::expansion

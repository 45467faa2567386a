#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace divcode::gf {

/// Integer encoding of a field element: the polynomial sum c_i * alpha^i is
/// stored as the integer sum c_i * p^i, so 0 <= value < q.
using Elem = std::uint16_t;

bool is_prime(unsigned n);

/// Irreducibility over GF(p) by trial division against all monic polynomials
/// of degree <= deg/2. `poly` holds ascending coefficients in [0, p).
bool is_irreducible(const std::vector<unsigned>& poly, unsigned p);

/// Built-in Conway polynomial for GF(p^e), ascending coefficients, or nullopt
/// if (p, e) is outside the table. Covers q <= 1024 for p in {2, 3, 5, 7}.
std::optional<std::vector<unsigned>> conway_polynomial(unsigned p, unsigned e);

/// Arithmetic in GF(p^e). Multiplication runs on precomputed log/antilog
/// tables; construction verifies the modulus is monic, degree e and
/// irreducible. Instances are immutable and cheap to copy; two fields compare
/// equal iff they have the same (p, e, modulus).
class Field {
public:
    /// GF(p^e) with the built-in Conway modulus.
    static Field make(unsigned p, unsigned e);
    /// GF(p^e) with a user-supplied monic modulus (ascending coefficients,
    /// size e+1). Overrides the built-in table.
    static Field make(unsigned p, unsigned e, const std::vector<unsigned>& modulus);

    unsigned p() const { return t_->p; }
    unsigned e() const { return t_->e; }
    unsigned q() const { return t_->q; }
    const std::vector<unsigned>& modulus() const { return t_->modulus; }

    Elem add(Elem x, Elem y) const;
    Elem sub(Elem x, Elem y) const;
    Elem neg(Elem x) const;
    Elem mul(Elem x, Elem y) const;
    Elem inv(Elem x) const;      // throws std::domain_error on x == 0
    Elem div(Elem x, Elem y) const;
    Elem pow(Elem x, long long n) const;

    /// x -> x^p, the Frobenius automorphism.
    Elem frobenius(Elem x) const { return pow(x, t_->p); }

    /// A fixed generator of the multiplicative group.
    Elem generator() const { return t_->gen; }

    /// Single-character serialization: decimal digit for q <= 10, lowercase
    /// hex digit for q <= 16. Throws for larger fields.
    char digit(Elem x) const;
    Elem parse_digit(char c) const;

    bool operator==(const Field& o) const;
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    struct Tables {
        unsigned p = 0, e = 0, q = 0;
        std::vector<unsigned> modulus;     // ascending, monic, size e+1
        std::vector<Elem> exp;             // exp[i] = gen^i, size 2*(q-1)
        std::vector<int> log;              // log[x] for x != 0
        std::vector<Elem> add_table;       // q*q entries for q <= 4096
        Elem gen = 0;
    };

    explicit Field(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
    static Field build(unsigned p, unsigned e, std::vector<unsigned> modulus);

    Elem add_slow(Elem x, Elem y) const;
    void check(Elem x) const;

    std::shared_ptr<const Tables> t_;
};

}  // namespace divcode::gf

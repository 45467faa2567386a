#pragma once

#include <map>
#include <utility>
#include <vector>

#include "divcode/expansion.hpp"
#include "divcode/gf.hpp"
#include "divcode/linalg.hpp"

namespace divcode::geometry {

/// A projective point is a normalized coordinate vector: the first nonzero
/// coordinate equals 1, so equal points have equal vectors.
using Point = std::vector<gf::Elem>;

Point normalize_point(const gf::Field& F, Point coords);  // throws on the zero vector

/// All [v]_q points of PG(v-1, q) in ascending lexicographic coordinate order.
std::vector<Point> enumerate_points(const gf::Field& F, unsigned v);

struct Subspace {
    unsigned v = 0;                 // ambient dimension
    std::vector<Point> basis;       // linearly independent rows
    unsigned dim() const { return static_cast<unsigned>(basis.size()); }
};

/// Validates independence and dimension bounds.
Subspace make_subspace(const gf::Field& F, unsigned v, std::vector<Point> basis);

/// Multiset of points of PG(v-1, q): normalized points with positive
/// multiplicities. Immutable field/dimension, value semantics.
class PointMultiset {
public:
    PointMultiset(gf::Field field, unsigned v);

    const gf::Field& field() const { return field_; }
    unsigned v() const { return v_; }
    bool empty() const { return mult_.empty(); }
    unsigned long long cardinality() const;
    unsigned long long max_multiplicity() const;
    unsigned long long multiplicity(const Point& pt) const;

    /// Accumulates multiplicity on a point (normalizing the coordinates).
    void add(const Point& pt, unsigned long long mult);
    void set(const Point& pt, unsigned long long mult);

    const std::map<Point, unsigned long long>& entries() const { return mult_; }

    bool operator==(const PointMultiset& o) const;

private:
    gf::Field field_;
    unsigned v_;
    std::map<Point, unsigned long long> mult_;
};

/// Sum of multiplicities over the points of S.
unsigned long long subspace_multiplicity(const PointMultiset& M, const Subspace& S);

/// The defining criterion: #M == M(H) (mod Delta) for every hyperplane H.
/// The sweep runs on the span of the support, split into direct-sum
/// components, so block constructions with large ambient dimension stay cheap.
bool is_divisible(const PointMultiset& M, unsigned long long delta);

/// The largest Delta for which is_divisible(M, Delta) holds: the gcd of all
/// nonzero codeword weights of the associated code, computed geometrically.
/// 0 for the empty multiset.
unsigned long long divisibility_gcd(const PointMultiset& M);

PointMultiset chi_subspace(const gf::Field& F, const Subspace& S);
PointMultiset scale(const PointMultiset& M, unsigned long long c);
PointMultiset msum(const PointMultiset& a, const PointMultiset& b);
PointMultiset embed(const PointMultiset& M, unsigned v_new);

/// A p^(a*e-b)-divisible multiset of cardinality n assembled from the digit
/// expansion of n: c_0 copies of an (a+1)-space plus c_i copies of
/// p^(i*e-b)-fold (a-i+1)-spaces, all placed in a direct sum. Requires
/// feasible(n).
PointMultiset construct_from_expansion(const gf::Field& F, const expansion::Int& n,
                                       const expansion::DivParams& params);

/// Restriction to a hyperplane, re-coordinatized into PG(v-2, q).
PointMultiset restrict_hyperplane(const PointMultiset& M, const Subspace& H);

/// A hyperplane H with M(H) < #M / q (the minimizing hyperplane, first in
/// enumeration order on ties). Requires a non-empty multiset.
Subspace small_hyperplane(const PointMultiset& M);

/// Projection through Q: the multiset in PG(v-2, q) with
/// M_Q(L/Q) = M(L) - M(Q) for lines L through Q.
PointMultiset project(const PointMultiset& M, const Point& Q);

/// For a Delta-divisible multiset on a line (v = 2): the Delta-fold points
/// P_1..P_l (with repetition) and s < Delta with M = sum Delta*chi_Pi +
/// s*chi_L. Delta divides q*s.
std::pair<std::vector<Point>, unsigned long long> decompose_line_multiset(
    const PointMultiset& M, unsigned long long delta);

/// Repeatedly subtracts Delta from multiplicities >= Delta. Returns the
/// reduced multiset (max multiplicity < Delta) and the number of strips.
std::pair<PointMultiset, unsigned long long> strip_multiples(const PointMultiset& M,
                                                             unsigned long long delta);

/// p^e lines through a common point of PG(2, q), without the point itself:
/// p^e * q points, p^e-divisible. Requires p^e <= q + 1.
PointMultiset two_lines_construction(const gf::Field& F, unsigned e);

/// The subgeometry of PG(u-1, p^e) with coordinates in the subfield GF(p^f):
/// (p^(f*u) - 1)/(p^f - 1) points, p^(u*f-e)-divisible. Requires u >= 3 and
/// f a proper divisor of e.
PointMultiset baer_construction(unsigned u, unsigned p, unsigned e, unsigned f);

/// The conic {(1 : t : t^2)} with its nucleus: q+2 points of PG(2, q) met by
/// every line in 0 or 2 points. Requires q even.
PointMultiset hyperoval(const gf::Field& F);

/// Line intersection sizes of a point set in PG(2, q), aggregated as
/// size -> number of lines.
std::map<unsigned long long, unsigned long long> line_profile(const PointMultiset& S);

bool is_spanning(const PointMultiset& M);

/// (r-1)q + (p-1)r, a lower bound for the cardinality of r-divisible point
/// sets whose cardinality is divisible by r (1 < r < q = p^h).
unsigned long long ball_bound(unsigned long long r, unsigned long long q, unsigned long long p);

/// Structure predicates used to describe classified representatives.
bool is_line_set(const PointMultiset& S);
bool is_hyperoval_set(const PointMultiset& S);
/// KM-arc of type (0, 2, t): q+t points, every line meets S in 0, 2 or t points.
bool is_km_arc(const PointMultiset& S, unsigned long long t);

}  // namespace divcode::geometry

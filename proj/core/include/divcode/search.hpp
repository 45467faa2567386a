#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "divcode/geometry.hpp"
#include "divcode/gf.hpp"
#include "divcode/permgroup.hpp"

namespace divcode::search {

/// A bounded search problem: Delta-divisible multisets of points in
/// PG(v-1, q) of cardinality n with bounded point multiplicity.
struct SearchSpec {
    gf::Field field;
    unsigned v = 3;
    unsigned long long delta = 2;
    unsigned long long n = 0;
    unsigned long long max_mult = 1;  // 1 = projective (point sets)
    bool require_spanning = false;
    bool use_bounds = true;  // apply proven lower-bound cutoffs before searching
    std::uint64_t node_budget = 0;  // 0 = default (env DIVCODE_NODE_BUDGET or built-in)
    unsigned threads = 1;
};

std::uint64_t default_node_budget();

enum class SearchStatus { Exists, Absent, Inconclusive };

struct SearchResult {
    SearchStatus status = SearchStatus::Inconclusive;
    std::optional<geometry::PointMultiset> witness;
    std::uint64_t nodes = 0;
    double seconds = 0.0;
};

/// Backtracking search for a witness. Absent answers are certified: either a
/// completed traversal or (with use_bounds) a proven lower-bound cutoff.
/// Budget exhaustion reports Inconclusive, never nonexistence.
SearchResult exists_divisible_set(const SearchSpec& spec);

struct ClassificationResult {
    bool complete = false;  // false: node budget exhausted, counts not valid
    std::vector<geometry::PointMultiset> representatives;
    std::uint64_t nodes = 0;
    double seconds = 0.0;
    std::size_t count() const { return representatives.size(); }
};

/// Classification of projective Delta-divisible sets in PG(2, q) up to
/// semilinear equivalence, by orderly generation with exact minimal-orbit
/// tests against a stabilizer-chain of PGammaL(3, q). Scope: v = 3, q <= 9,
/// max_mult = 1. `relabel`, when given, permutes the point enumeration order
/// (classification counts are invariant under it).
ClassificationResult classify(const SearchSpec& spec,
                              const std::vector<unsigned>* relabel = nullptr);

enum class Structure { Line, Hyperoval, KMArc };

/// True iff every class found by classify(spec) satisfies the predicate.
bool uniqueness_check(const SearchSpec& spec, Structure property);

/// |PGammaL(3, q)| = e * q^3 (q^3 - 1)(q^2 - 1) for q = p^e.
boost::multiprecision::cpp_int pgammal_order(unsigned q);

/// Generators of PGammaL(3, q) acting on the canonical point enumeration.
std::vector<permgroup::Perm> pgammal_generators(const gf::Field& F);

}  // namespace divcode::search

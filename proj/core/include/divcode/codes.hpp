#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "divcode/geometry.hpp"
#include "divcode/gf.hpp"

namespace divcode::codes {

/// A linear [n, k] code over GF(q), given by a k x n generator matrix. The
/// effective length is the number of nonzero columns.
struct LinearCode {
    gf::Field field;
    unsigned k = 0, n = 0;
    std::vector<std::vector<gf::Elem>> rows;  // k rows of length n
};

/// One column per point, repeated by multiplicity, in the deterministic point
/// order of the multiset; k = v, n = #M.
LinearCode code_from_multiset(const geometry::PointMultiset& M);

/// Inverse correspondence: zero columns dropped, columns normalized to
/// points, multiplicities accumulated.
geometry::PointMultiset multiset_from_code(const LinearCode& C);

unsigned effective_length(const LinearCode& C);

/// The gcd of all nonzero codeword Hamming weights (the largest Delta such
/// that the code is Delta-divisible); 0 for the zero code. Enumerates the
/// [k]_q codewords up to scalar; guarded by q^k <= 2^28.
unsigned long long weight_divisibility(const LinearCode& C);

/// True iff the associated multiset has maximum point multiplicity 1.
bool is_projective(const LinearCode& C);

/// True iff the generator matrix has rank k.
bool is_spanning(const LinearCode& C);

/// Text format: one digit per entry (decimal for q <= 10, hex for q <= 16),
/// one row per line, optional header line "q=<int> k=<int> n=<int>".
/// Whitespace and parentheses are ignored.
LinearCode parse_matrix(std::string_view text, const gf::Field& field);
LinearCode parse_matrix(std::string_view text);  // requires the header line
std::string format_matrix(const LinearCode& C, bool with_header = false);

/// Curated base examples: projective divisible codes of lengths that are not
/// sums of known smaller lengths. Five [n,3] codes over GF(8) with even
/// weights (n = 12, 13, 14, 15, 17) and two [n,3] codes over GF(9) with
/// weights divisible by 3 (n = 27, 31).
const std::vector<LinearCode>& base_examples();

}  // namespace divcode::codes

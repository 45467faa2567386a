#include "divcode/codes.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "divcode/linalg.hpp"

namespace divcode::codes {

using gf::Elem;
using gf::Field;

LinearCode code_from_multiset(const geometry::PointMultiset& M) {
    if (M.empty()) throw std::invalid_argument("code_from_multiset: empty multiset");
    const unsigned long long card = M.cardinality();
    if (card > 10'000'000ull) throw std::invalid_argument("code_from_multiset: length too large");

    LinearCode C{M.field(), M.v(), static_cast<unsigned>(card), {}};
    C.rows.assign(C.k, std::vector<Elem>(C.n, 0));
    unsigned col = 0;
    for (const auto& [pt, m] : M.entries())
        for (unsigned long long rep = 0; rep < m; ++rep, ++col)
            for (unsigned r = 0; r < C.k; ++r) C.rows[r][col] = pt[r];
    return C;
}

geometry::PointMultiset multiset_from_code(const LinearCode& C) {
    geometry::PointMultiset M(C.field, C.k);
    for (unsigned j = 0; j < C.n; ++j) {
        geometry::Point col(C.k);
        bool zero = true;
        for (unsigned r = 0; r < C.k; ++r) {
            col[r] = C.rows[r][j];
            if (col[r] != 0) zero = false;
        }
        if (!zero) M.add(col, 1);
    }
    return M;
}

unsigned effective_length(const LinearCode& C) {
    unsigned eff = 0;
    for (unsigned j = 0; j < C.n; ++j)
        for (unsigned r = 0; r < C.k; ++r)
            if (C.rows[r][j] != 0) {
                ++eff;
                break;
            }
    return eff;
}

unsigned long long weight_divisibility(const LinearCode& C) {
    const unsigned q = C.field.q();
    const unsigned k = C.k;
    double size = 1;
    for (unsigned i = 0; i < k; ++i) size *= q;
    if (size > static_cast<double>(1u << 28))
        throw std::invalid_argument("weight_divisibility: q^k exceeds the enumeration guard");

    // Scalar multiples have equal weight, so messages are enumerated with
    // first nonzero coordinate 1 ([k]_q codewords).
    const Field& F = C.field;
    std::vector<std::vector<Elem>> buf(k + 1, std::vector<Elem>(C.n, 0));
    unsigned long long g = 0;

    auto weight_of = [&](const std::vector<Elem>& w) {
        unsigned long long cnt = 0;
        for (auto x : w)
            if (x != 0) ++cnt;
        return cnt;
    };
    auto add_row = [&](const std::vector<Elem>& src, std::vector<Elem>& dst, unsigned row, Elem c) {
        if (c == 0) {
            dst = src;
            return;
        }
        for (unsigned j = 0; j < C.n; ++j) dst[j] = F.add(src[j], F.mul(c, C.rows[row][j]));
    };

    // depth-first over the remaining message digits
    auto rec = [&](auto&& self, unsigned i, unsigned depth) -> bool {
        if (i == k) {
            const unsigned long long w = weight_of(buf[depth]);
            if (w) g = std::gcd(g, w);
            return g == 1;
        }
        for (unsigned c = 0; c < q; ++c) {
            add_row(buf[depth], buf[depth + 1], i, static_cast<Elem>(c));
            if (self(self, i + 1, depth + 1)) return true;
        }
        return false;
    };

    for (unsigned lead = 0; lead < k && g != 1; ++lead) {
        std::fill(buf[0].begin(), buf[0].end(), 0);
        add_row(buf[0], buf[1], lead, 1);
        rec(rec, lead + 1, 1);
    }
    return g;
}

bool is_projective(const LinearCode& C) {
    return multiset_from_code(C).max_multiplicity() <= 1;
}

bool is_spanning(const LinearCode& C) { return linalg::rank(C.field, C.rows) == C.k; }

namespace {

struct ParsedText {
    std::vector<std::string> rows;
    unsigned header_q = 0, header_k = 0, header_n = 0;
    bool has_header = false;
};

ParsedText split_rows(std::string_view text) {
    ParsedText out;
    std::string line;
    std::istringstream in{std::string(text)};
    while (std::getline(in, line)) {
        if (line.find('=') != std::string::npos) {
            std::istringstream hs(line);
            std::string tok;
            while (hs >> tok) {
                if (tok.rfind("q=", 0) == 0) out.header_q = std::stoul(tok.substr(2));
                else if (tok.rfind("k=", 0) == 0) out.header_k = std::stoul(tok.substr(2));
                else if (tok.rfind("n=", 0) == 0) out.header_n = std::stoul(tok.substr(2));
                else throw std::invalid_argument("parse_matrix: bad header token '" + tok + "'");
            }
            if (out.header_q == 0) throw std::invalid_argument("parse_matrix: header without q=");
            out.has_header = true;
            continue;
        }
        std::string digits;
        for (char c : line) {
            if (std::isspace(static_cast<unsigned char>(c))) continue;
            if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == '|') continue;
            digits.push_back(c);
        }
        if (!digits.empty()) out.rows.push_back(std::move(digits));
    }
    return out;
}

LinearCode from_rows(const std::vector<std::string>& rows, const Field& F) {
    if (rows.empty()) throw std::invalid_argument("parse_matrix: no rows");
    const std::size_t n = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != n) throw std::invalid_argument("parse_matrix: ragged rows");

    LinearCode C{F, static_cast<unsigned>(rows.size()), static_cast<unsigned>(n), {}};
    C.rows.assign(C.k, std::vector<Elem>(C.n, 0));
    for (unsigned r = 0; r < C.k; ++r)
        for (unsigned j = 0; j < C.n; ++j) C.rows[r][j] = F.parse_digit(rows[r][j]);
    return C;
}

Field field_for_q(unsigned q) {
    unsigned p = 2;
    while (q % p != 0) ++p;
    unsigned e = 0, t = q;
    while (t % p == 0) {
        t /= p;
        ++e;
    }
    if (t != 1) throw std::invalid_argument("parse_matrix: q is not a prime power");
    return Field::make(p, e);
}

}  // namespace

LinearCode parse_matrix(std::string_view text, const Field& field) {
    auto parsed = split_rows(text);
    if (parsed.has_header && parsed.header_q != field.q())
        throw std::invalid_argument("parse_matrix: header q disagrees with the supplied field");
    LinearCode C = from_rows(parsed.rows, field);
    if (parsed.has_header) {
        if (parsed.header_k && parsed.header_k != C.k)
            throw std::invalid_argument("parse_matrix: header k disagrees with the row count");
        if (parsed.header_n && parsed.header_n != C.n)
            throw std::invalid_argument("parse_matrix: header n disagrees with the row length");
    }
    return C;
}

LinearCode parse_matrix(std::string_view text) {
    auto parsed = split_rows(text);
    if (!parsed.has_header)
        throw std::invalid_argument("parse_matrix: no header line and no field supplied");
    return parse_matrix(text, field_for_q(parsed.header_q));
}

std::string format_matrix(const LinearCode& C, bool with_header) {
    std::string out;
    if (with_header) {
        out += "q=" + std::to_string(C.field.q()) + " k=" + std::to_string(C.k) +
               " n=" + std::to_string(C.n) + "\n";
    }
    for (unsigned r = 0; r < C.k; ++r) {
        for (unsigned j = 0; j < C.n; ++j) out.push_back(C.field.digit(C.rows[r][j]));
        out.push_back('\n');
    }
    return out;
}

namespace {

constexpr const char* kBaseExampleF8[] = {
    "111111111100\n"
    "001234567010\n"
    "136547277001\n",

    "1111111110100\n"
    "0225555661010\n"
    "3370237236001\n",

    "11111111111100\n"
    "00111234567010\n"
    "26124752344001\n",

    "111111111110100\n"
    "011223366771010\n"
    "656675667061001\n",

    "11111111111110100\n"
    "00022335566771010\n"
    "23737032634461001\n",
};

constexpr const char* kBaseExampleF9[] = {
    "111111111111111111111110100\n"
    "000011223344556666677881010\n"
    "125628242438071345624474001\n",

    "1111111111111111111111111100100\n"
    "0000011122233344455577788811010\n"
    "2467802514724612605827812514001\n",
};

}  // namespace

const std::vector<LinearCode>& base_examples() {
    static const std::vector<LinearCode> examples = [] {
        std::vector<LinearCode> v;
        const Field f8 = Field::make(2, 3);
        const Field f9 = Field::make(3, 2);
        for (const char* text : kBaseExampleF8) v.push_back(parse_matrix(text, f8));
        for (const char* text : kBaseExampleF9) v.push_back(parse_matrix(text, f9));
        return v;
    }();
    return examples;
}

}  // namespace divcode::codes

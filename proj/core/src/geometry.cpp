#include "divcode/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace divcode::geometry {

using gf::Elem;
using gf::Field;
using linalg::Mat;

namespace {

unsigned long long checked_mul(unsigned long long a, unsigned long long b, const char* what) {
    unsigned long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error(what);
    return r;
}

unsigned long long checked_add(unsigned long long a, unsigned long long b, const char* what) {
    unsigned long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error(what);
    return r;
}

// [v]_q as unsigned long long, throwing on overflow.
unsigned long long point_count(unsigned v, unsigned q) {
    unsigned long long n = 0, pw = 1;
    for (unsigned i = 0; i < v; ++i) {
        n = checked_add(n, pw, "point_count overflow");
        pw = checked_mul(pw, q, "point_count overflow");
    }
    return n;
}

// Incremental row echelon for rank queries.
struct Echelon {
    const Field& F;
    Mat rows;  // echelonized, each with a distinct leading column

    explicit Echelon(const Field& f) : F(f) {}

    unsigned rank() const { return static_cast<unsigned>(rows.size()); }

    // Reduces candidate against current rows; if independent, inserts it and
    // returns true.
    bool try_add(Point x) {
        for (const auto& r : rows) {
            std::size_t lead = 0;
            while (r[lead] == 0) ++lead;
            if (x[lead] != 0) {
                const Elem f = x[lead];
                for (std::size_t j = lead; j < x.size(); ++j)
                    x[j] = F.sub(x[j], F.mul(f, r[j]));
            }
        }
        std::size_t lead = 0;
        while (lead < x.size() && x[lead] == 0) ++lead;
        if (lead == x.size()) return false;
        const Elem s = F.inv(x[lead]);
        for (std::size_t j = lead; j < x.size(); ++j) x[j] = F.mul(x[j], s);
        rows.push_back(std::move(x));
        return true;
    }
};

struct UnionFind {
    std::vector<unsigned> parent;
    explicit UnionFind(unsigned n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    unsigned find(unsigned x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(unsigned a, unsigned b) { parent[find(a)] = find(b); }
};

void check_compatible(const PointMultiset& a, const PointMultiset& b, const char* what) {
    if (a.field() != b.field()) throw std::invalid_argument(std::string(what) + ": field mismatch");
    if (a.v() != b.v()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

Point normalize_point(const Field& F, Point coords) {
    std::size_t lead = 0;
    while (lead < coords.size() && coords[lead] == 0) ++lead;
    if (lead == coords.size())
        throw std::invalid_argument("normalize_point: zero vector is not a projective point");
    if (coords[lead] != 1) {
        const Elem s = F.inv(coords[lead]);
        for (std::size_t j = lead; j < coords.size(); ++j) coords[j] = F.mul(coords[j], s);
    }
    return coords;
}

std::vector<Point> enumerate_points(const Field& F, unsigned v) {
    if (v < 1) throw std::invalid_argument("enumerate_points: v must be >= 1");
    const unsigned q = F.q();
    const unsigned long long total = point_count(v, q);
    if (total > 50'000'000ull)
        throw std::invalid_argument("enumerate_points: PG(v-1,q) too large to enumerate");

    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(total));
    for (unsigned lead = v; lead-- > 0;) {
        const unsigned tail = v - 1 - lead;
        unsigned long long combos = 1;
        for (unsigned i = 0; i < tail; ++i) combos *= q;
        for (unsigned long long t = 0; t < combos; ++t) {
            Point p(v, 0);
            p[lead] = 1;
            unsigned long long u = t;
            for (unsigned i = tail; i-- > 0;) {  // most significant digit right after lead
                p[lead + 1 + i] = static_cast<Elem>(u % q);
                u /= q;
            }
            pts.push_back(std::move(p));
        }
    }
    return pts;
}

Subspace make_subspace(const Field& F, unsigned v, std::vector<Point> basis) {
    if (basis.empty() || basis.size() > v)
        throw std::invalid_argument("make_subspace: need 1 <= dim <= v basis vectors");
    Echelon ech(F);
    for (const auto& b : basis) {
        if (b.size() != v) throw std::invalid_argument("make_subspace: wrong vector length");
        if (!ech.try_add(b)) throw std::invalid_argument("make_subspace: basis is dependent");
    }
    return Subspace{v, std::move(basis)};
}

PointMultiset::PointMultiset(Field field, unsigned v) : field_(std::move(field)), v_(v) {
    if (v < 1) throw std::invalid_argument("PointMultiset: v must be >= 1");
}

unsigned long long PointMultiset::cardinality() const {
    unsigned long long total = 0;
    for (const auto& [pt, m] : mult_) total = checked_add(total, m, "cardinality overflow");
    return total;
}

unsigned long long PointMultiset::max_multiplicity() const {
    unsigned long long mx = 0;
    for (const auto& [pt, m] : mult_) mx = std::max(mx, m);
    return mx;
}

unsigned long long PointMultiset::multiplicity(const Point& pt) const {
    auto it = mult_.find(pt);
    return it == mult_.end() ? 0 : it->second;
}

void PointMultiset::add(const Point& pt, unsigned long long mult) {
    if (pt.size() != v_) throw std::invalid_argument("PointMultiset::add: wrong dimension");
    if (mult == 0) return;
    Point n = normalize_point(field_, pt);
    auto& slot = mult_[n];
    slot = checked_add(slot, mult, "multiplicity overflow");
}

void PointMultiset::set(const Point& pt, unsigned long long mult) {
    if (pt.size() != v_) throw std::invalid_argument("PointMultiset::set: wrong dimension");
    Point n = normalize_point(field_, pt);
    if (mult == 0)
        mult_.erase(n);
    else
        mult_[n] = mult;
}

bool PointMultiset::operator==(const PointMultiset& o) const {
    return field_ == o.field_ && v_ == o.v_ && mult_ == o.mult_;
}

unsigned long long subspace_multiplicity(const PointMultiset& M, const Subspace& S) {
    if (S.v != M.v()) throw std::invalid_argument("subspace_multiplicity: dimension mismatch");
    unsigned long long total = 0;
    for (const auto& [pt, m] : M.entries())
        if (linalg::coordinates(M.field(), S.basis, pt)) total += m;
    return total;
}

namespace {

struct SpanComponent {
    unsigned dim = 0;
    std::vector<Point> pts;  // support in component coordinates
    std::vector<unsigned long long> mults;
    unsigned long long card = 0;
};

// Coordinates of the support relative to a basis of its span, split into
// direct-sum components: the code of M is the outer direct sum of the
// component codes.
std::vector<SpanComponent> span_components(const PointMultiset& M) {
    const Field& F = M.field();
    std::vector<Point> pts;
    std::vector<unsigned long long> mults;
    for (const auto& [pt, m] : M.entries()) {
        pts.push_back(pt);
        mults.push_back(m);
    }
    Mat span = pts;
    auto pivots = linalg::rref(F, span);
    const unsigned w = static_cast<unsigned>(span.size());

    std::vector<Point> coords(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Point residual = pts[i];
        Point c(w, 0);
        for (unsigned r = 0; r < w; ++r) {
            const Elem f = residual[pivots[r]];
            if (f == 0) continue;
            c[r] = f;
            for (std::size_t j = 0; j < residual.size(); ++j)
                residual[j] = F.sub(residual[j], F.mul(f, span[r][j]));
        }
        coords[i] = std::move(c);
    }

    UnionFind uf(w);
    std::vector<unsigned> comp_of(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        int first = -1;
        for (unsigned j = 0; j < w; ++j) {
            if (coords[i][j] == 0) continue;
            if (first < 0)
                first = static_cast<int>(j);
            else
                uf.unite(static_cast<unsigned>(first), j);
        }
        comp_of[i] = static_cast<unsigned>(first);  // support points are nonzero
    }

    std::map<unsigned, std::vector<unsigned>> comp_dims;  // root -> coordinate indices
    for (unsigned j = 0; j < w; ++j) comp_dims[uf.find(j)].push_back(j);

    std::vector<SpanComponent> out;
    for (const auto& [root, dims] : comp_dims) {
        SpanComponent comp;
        comp.dim = static_cast<unsigned>(dims.size());
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (uf.find(comp_of[i]) != root) continue;
            Point local(comp.dim);
            for (unsigned j = 0; j < comp.dim; ++j) local[j] = coords[i][dims[j]];
            comp.pts.push_back(std::move(local));
            comp.mults.push_back(mults[i]);
            comp.card = checked_add(comp.card, mults[i], "cardinality overflow");
        }
        if (!comp.pts.empty()) out.push_back(std::move(comp));
    }
    return out;
}

void check_sweep_size(const SpanComponent& comp, unsigned q) {
    const unsigned long long hyperplanes = point_count(comp.dim, q);
    if (checked_mul(hyperplanes, comp.pts.size(), "hyperplane sweep work") > 200'000'000ull)
        throw std::invalid_argument("divisibility sweep: component too large");
}

}  // namespace

bool is_divisible(const PointMultiset& M, unsigned long long delta) {
    if (delta == 0) throw std::invalid_argument("is_divisible: Delta must be positive");
    if (delta == 1 || M.empty()) return true;
    const Field& F = M.field();
    for (const auto& comp : span_components(M)) {
        check_sweep_size(comp, F.q());
        for (const auto& h : enumerate_points(F, comp.dim)) {
            unsigned long long on_h = 0;
            for (std::size_t i = 0; i < comp.pts.size(); ++i)
                if (linalg::dot(F, h, comp.pts[i]) == 0) on_h += comp.mults[i];
            if ((comp.card - on_h) % delta != 0) return false;
        }
    }
    return true;
}

unsigned long long divisibility_gcd(const PointMultiset& M) {
    if (M.empty()) return 0;
    const Field& F = M.field();
    unsigned long long g = 0;
    for (const auto& comp : span_components(M)) {
        check_sweep_size(comp, F.q());
        for (const auto& h : enumerate_points(F, comp.dim)) {
            unsigned long long on_h = 0;
            for (std::size_t i = 0; i < comp.pts.size(); ++i)
                if (linalg::dot(F, h, comp.pts[i]) == 0) on_h += comp.mults[i];
            g = std::gcd(g, comp.card - on_h);
            if (g == 1) return 1;
        }
    }
    return g;
}

PointMultiset chi_subspace(const Field& F, const Subspace& S) {
    PointMultiset M(F, S.v);
    const unsigned d = S.dim();
    unsigned long long combos = 1;
    for (unsigned i = 0; i < d; ++i)
        combos = checked_mul(combos, F.q(), "chi_subspace too large");
    if (combos > 20'000'000ull) throw std::invalid_argument("chi_subspace: subspace too large");

    for (unsigned long long t = 1; t < combos; ++t) {
        Point x(S.v, 0);
        unsigned long long u = t;
        for (unsigned i = 0; i < d; ++i) {
            const Elem c = static_cast<Elem>(u % F.q());
            u /= F.q();
            if (c == 0) continue;
            for (unsigned j = 0; j < S.v; ++j) x[j] = F.add(x[j], F.mul(c, S.basis[i][j]));
        }
        M.set(x, 1);
    }
    return M;
}

PointMultiset scale(const PointMultiset& M, unsigned long long c) {
    PointMultiset r(M.field(), M.v());
    if (c == 0) return r;
    for (const auto& [pt, m] : M.entries())
        r.set(pt, checked_mul(m, c, "scale overflow"));
    return r;
}

PointMultiset msum(const PointMultiset& a, const PointMultiset& b) {
    check_compatible(a, b, "msum");
    PointMultiset r = a;
    for (const auto& [pt, m] : b.entries()) r.add(pt, m);
    return r;
}

PointMultiset embed(const PointMultiset& M, unsigned v_new) {
    if (v_new < M.v()) throw std::invalid_argument("embed: target dimension too small");
    PointMultiset r(M.field(), v_new);
    for (const auto& [pt, m] : M.entries()) {
        Point x = pt;
        x.resize(v_new, 0);
        r.set(x, m);
    }
    return r;
}

PointMultiset construct_from_expansion(const Field& F, const expansion::Int& n,
                                       const expansion::DivParams& params) {
    if (F.q() != params.q)
        throw std::invalid_argument("construct_from_expansion: field does not match parameters");
    if (n < 0 || !expansion::feasible(n, params))
        throw std::invalid_argument("construct_from_expansion: length is not feasible");

    const auto exp = expansion::expand(n, params);
    const unsigned a = params.a;

    std::vector<unsigned long long> c(a + 1);
    unsigned long long v = 0;
    for (unsigned i = 0; i <= a; ++i) {
        if (exp.coeffs[i] > 1'000'000'000)
            throw std::invalid_argument("construct_from_expansion: coefficient too large");
        c[i] = exp.coeffs[i].convert_to<unsigned long long>();
        v = checked_add(v, checked_mul(c[i], a - i + 1, "ambient dimension overflow"),
                        "ambient dimension overflow");
    }
    if (v > 4096) throw std::invalid_argument("construct_from_expansion: ambient dimension too large");
    if (v == 0) return PointMultiset(F, 1);  // n = 0

    PointMultiset M(F, static_cast<unsigned>(v));
    unsigned offset = 0;
    for (unsigned i = 0; i <= a; ++i) {
        const unsigned dim = a - i + 1;
        unsigned long long block_mult = 1;
        if (i > 0) {
            const unsigned exp = i * params.e - params.b;
            for (unsigned t = 0; t < exp; ++t)
                block_mult = checked_mul(block_mult, params.p, "block multiplicity overflow");
        }
        for (unsigned long long rep = 0; rep < c[i]; ++rep) {
            for (const auto& pt : enumerate_points(F, dim)) {
                Point x(static_cast<std::size_t>(v), 0);
                std::copy(pt.begin(), pt.end(), x.begin() + offset);
                M.add(x, block_mult);
            }
            offset += dim;
        }
    }
    return M;
}

PointMultiset restrict_hyperplane(const PointMultiset& M, const Subspace& H) {
    if (H.v != M.v() || H.dim() != M.v() - 1 || M.v() < 2)
        throw std::invalid_argument("restrict_hyperplane: H must be a hyperplane of the ambient space");
    PointMultiset r(M.field(), M.v() - 1);
    for (const auto& [pt, m] : M.entries()) {
        auto c = linalg::coordinates(M.field(), H.basis, pt);
        if (c) r.add(*c, m);
    }
    return r;
}

Subspace small_hyperplane(const PointMultiset& M) {
    if (M.empty()) throw std::invalid_argument("small_hyperplane: empty multiset");
    const Field& F = M.field();
    const unsigned v = M.v();
    if (v < 2) throw std::invalid_argument("small_hyperplane: v must be >= 2");

    std::optional<Point> best;
    unsigned long long best_val = 0;
    for (const auto& h : enumerate_points(F, v)) {
        unsigned long long val = 0;
        for (const auto& [pt, m] : M.entries())
            if (linalg::dot(F, h, pt) == 0) val += m;
        if (!best || val < best_val) {
            best = h;
            best_val = val;
        }
    }
    // The average over all hyperplanes is #M * [v-1]_q / [v]_q < #M / q, so
    // the minimum is strictly below #M / q.
    return make_subspace(F, v, linalg::nullspace(F, {*best}, v));
}

PointMultiset project(const PointMultiset& M, const Point& Q) {
    const unsigned v = M.v();
    if (v < 2) throw std::invalid_argument("project: v must be >= 2");
    if (Q.size() != v) throw std::invalid_argument("project: wrong point dimension");
    const Field& F = M.field();
    const Point Qn = normalize_point(F, Q);

    // Basis (Q, b_1, ..., b_{v-1}) with standard vectors completing Q.
    Mat basis{Qn};
    Echelon ech(F);
    ech.try_add(Qn);
    for (unsigned i = 0; i < v && basis.size() < v; ++i) {
        Point e(v, 0);
        e[i] = 1;
        if (ech.try_add(e)) basis.push_back(std::move(e));
    }

    PointMultiset r(F, v - 1);
    for (const auto& [pt, m] : M.entries()) {
        auto c = linalg::coordinates(F, basis, pt);
        Point img(c->begin() + 1, c->end());
        bool zero = std::all_of(img.begin(), img.end(), [](Elem x) { return x == 0; });
        if (zero) continue;  // pt = Q itself
        r.add(img, m);
    }
    return r;
}

std::pair<std::vector<Point>, unsigned long long> decompose_line_multiset(
    const PointMultiset& M, unsigned long long delta) {
    if (M.v() != 2) throw std::invalid_argument("decompose_line_multiset: requires v = 2");
    if (!is_divisible(M, delta))
        throw std::invalid_argument("decompose_line_multiset: multiset is not Delta-divisible");

    std::vector<Point> stripped;
    unsigned long long s = 0;
    bool s_known = false;
    for (const auto& pt : enumerate_points(M.field(), 2)) {
        unsigned long long m = M.multiplicity(pt);
        for (unsigned long long k = 0; k < m / delta; ++k) stripped.push_back(pt);
        const unsigned long long rem = m % delta;
        if (!s_known) {
            s = rem;
            s_known = true;
        } else if (rem != s) {
            throw std::logic_error("decompose_line_multiset: residues disagree");
        }
    }
    if ((static_cast<unsigned long long>(M.field().q()) * s) % delta != 0)
        throw std::logic_error("decompose_line_multiset: Delta does not divide q*s");
    return {std::move(stripped), s};
}

std::pair<PointMultiset, unsigned long long> strip_multiples(const PointMultiset& M,
                                                             unsigned long long delta) {
    if (delta == 0) throw std::invalid_argument("strip_multiples: Delta must be positive");
    PointMultiset reduced(M.field(), M.v());
    unsigned long long strips = 0;
    for (const auto& [pt, m] : M.entries()) {
        strips += m / delta;
        if (m % delta) reduced.set(pt, m % delta);
    }
    return {std::move(reduced), strips};
}

PointMultiset two_lines_construction(const Field& F, unsigned e) {
    if (e < 1) throw std::invalid_argument("two_lines_construction: e must be >= 1");
    unsigned long long pe = 1;
    for (unsigned i = 0; i < e; ++i) pe = checked_mul(pe, F.p(), "two_lines_construction overflow");
    const unsigned q = F.q();
    if (pe > static_cast<unsigned long long>(q) + 1)
        throw std::invalid_argument("two_lines_construction: not enough lines through a point");

    const Point center{1, 0, 0};
    // Lines through the center are the duals (0 : a : b).
    std::vector<Point> duals;
    for (const auto& ab : enumerate_points(F, 2)) {
        Point h{0, ab[0], ab[1]};
        duals.push_back(std::move(h));
        if (duals.size() == pe) break;
    }

    PointMultiset M(F, 3);
    for (const auto& pt : enumerate_points(F, 3)) {
        if (pt == center) continue;
        for (const auto& h : duals)
            if (linalg::dot(F, h, pt) == 0) {
                M.set(pt, 1);
                break;
            }
    }
    return M;
}

PointMultiset baer_construction(unsigned u, unsigned p, unsigned e, unsigned f) {
    if (u < 3) throw std::invalid_argument("baer_construction: u must be >= 3");
    if (f < 1 || f >= e || e % f != 0)
        throw std::invalid_argument("baer_construction: f must be a proper divisor of e");
    Field F = Field::make(p, e);

    unsigned long long pf = 1;
    for (unsigned i = 0; i < f; ++i) pf *= p;
    std::vector<Elem> subfield;
    for (unsigned x = 0; x < F.q(); ++x)
        if (F.pow(static_cast<Elem>(x), static_cast<long long>(pf)) == x)
            subfield.push_back(static_cast<Elem>(x));
    if (subfield.size() != pf) throw std::logic_error("baer_construction: subfield size mismatch");

    // Normalized vectors with all coordinates in the subfield, enumerated the
    // same way as enumerate_points.
    PointMultiset M(F, u);
    for (unsigned lead = u; lead-- > 0;) {
        const unsigned tail = u - 1 - lead;
        unsigned long long combos = 1;
        for (unsigned i = 0; i < tail; ++i) combos *= pf;
        for (unsigned long long t = 0; t < combos; ++t) {
            Point x(u, 0);
            x[lead] = 1;
            unsigned long long w = t;
            for (unsigned i = tail; i-- > 0;) {
                x[lead + 1 + i] = subfield[static_cast<std::size_t>(w % pf)];
                w /= pf;
            }
            M.set(x, 1);
        }
    }
    return M;
}

PointMultiset hyperoval(const Field& F) {
    if (F.p() != 2) throw std::invalid_argument("hyperoval: q must be even");
    PointMultiset M(F, 3);
    for (unsigned t = 0; t < F.q(); ++t) {
        const Elem te = static_cast<Elem>(t);
        M.set(Point{1, te, F.mul(te, te)}, 1);
    }
    M.set(Point{0, 0, 1}, 1);  // the conic's point at infinity
    M.set(Point{0, 1, 0}, 1);  // the nucleus
    return M;
}

std::map<unsigned long long, unsigned long long> line_profile(const PointMultiset& S) {
    if (S.v() != 3) throw std::invalid_argument("line_profile: requires v = 3");
    if (S.max_multiplicity() > 1)
        throw std::invalid_argument("line_profile: requires a set (max multiplicity 1)");
    std::map<unsigned long long, unsigned long long> profile;
    for (const auto& h : enumerate_points(S.field(), 3)) {
        unsigned long long cnt = 0;
        for (const auto& [pt, m] : S.entries())
            if (linalg::dot(S.field(), h, pt) == 0) cnt += m;
        ++profile[cnt];
    }
    return profile;
}

bool is_spanning(const PointMultiset& M) {
    Echelon ech(M.field());
    for (const auto& [pt, m] : M.entries())
        if (ech.try_add(pt) && ech.rank() == M.v()) return true;
    return false;
}

unsigned long long ball_bound(unsigned long long r, unsigned long long q, unsigned long long p) {
    if (!(1 < r && r < q)) throw std::invalid_argument("ball_bound: requires 1 < r < q");
    if (p < 2 || q % p != 0) throw std::invalid_argument("ball_bound: p must be the characteristic");
    return (r - 1) * q + (p - 1) * r;
}

bool is_line_set(const PointMultiset& S) {
    if (S.max_multiplicity() > 1) return false;
    if (S.cardinality() != static_cast<unsigned long long>(S.field().q()) + 1) return false;
    Echelon ech(S.field());
    for (const auto& [pt, m] : S.entries()) ech.try_add(pt);
    return ech.rank() == 2;
}

bool is_hyperoval_set(const PointMultiset& S) {
    if (S.v() != 3 || S.max_multiplicity() > 1) return false;
    if (S.cardinality() != static_cast<unsigned long long>(S.field().q()) + 2) return false;
    for (const auto& [sz, cnt] : line_profile(S))
        if (sz != 0 && sz != 2) return false;
    return true;
}

bool is_km_arc(const PointMultiset& S, unsigned long long t) {
    if (S.v() != 3 || S.max_multiplicity() > 1) return false;
    if (S.cardinality() != S.field().q() + t) return false;
    for (const auto& [sz, cnt] : line_profile(S))
        if (sz != 0 && sz != 2 && sz != t) return false;
    return true;
}

}  // namespace divcode::geometry

#include "divcode/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <stdexcept>

#include "divcode/linalg.hpp"

namespace divcode::search {

using geometry::Point;
using geometry::PointMultiset;
using gf::Elem;
using gf::Field;
using permgroup::OrbitLevel;
using permgroup::Perm;

std::uint64_t default_node_budget() {
    if (const char* env = std::getenv("DIVCODE_NODE_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 4'000'000'000ull;
}

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

/// Point/hyperplane incidence of PG(v-1, q).
struct Incidence {
    std::vector<Point> points;
    std::vector<std::vector<unsigned>> hyp_points;   // hyperplane -> incident points
    std::vector<std::vector<unsigned>> point_hyps;   // point -> incident hyperplanes
    unsigned N = 0;  // number of points == number of hyperplanes
};

Incidence build_incidence(const Field& F, unsigned v) {
    Incidence geo;
    geo.points = geometry::enumerate_points(F, v);
    geo.N = static_cast<unsigned>(geo.points.size());
    if (geo.N > 4096) throw std::invalid_argument("search: geometry too large");
    const auto duals = geo.points;  // hyperplanes share the same normal form
    geo.hyp_points.assign(geo.N, {});
    geo.point_hyps.assign(geo.N, {});
    for (unsigned h = 0; h < geo.N; ++h)
        for (unsigned p = 0; p < geo.N; ++p)
            if (linalg::dot(F, duals[h], geo.points[p]) == 0) {
                geo.hyp_points[h].push_back(p);
                geo.point_hyps[p].push_back(h);
            }
    return geo;
}

unsigned long long pow_ull(unsigned long long b, unsigned e) {
    unsigned long long r = 1;
    while (e--) r *= b;
    return r;
}

// [i]_q as unsigned long long (small arguments only).
unsigned long long gauss_ull(unsigned i, unsigned q) {
    unsigned long long r = 0, pw = 1;
    for (unsigned t = 0; t < i; ++t) {
        r += pw;
        pw *= q;
    }
    return r;
}

// ---------------------------------------------------------------------------
// exists_divisible_set: depth-first multiplicity assignment with residue
// propagation. Points are picked dynamically on the tightest unsatisfied
// hyperplane, so parity contradictions surface early.
// ---------------------------------------------------------------------------

class ExistsEngine {
public:
    ExistsEngine(const Field& F, const SearchSpec& spec, const Incidence& geo)
        : F_(F), geo_(geo), spec_(spec) {
        N_ = geo_.N;
        H_ = geo_.N;
        hyps_per_point_ = gauss_ull(spec.v - 1, F.q());
        mult_.assign(N_, -1);
        cnt_.assign(H_, 0);
        undecided_on_.assign(H_, 0);
        for (unsigned h = 0; h < H_; ++h)
            undecided_on_[h] = static_cast<unsigned>(geo_.hyp_points[h].size());
        need_.assign(H_, static_cast<unsigned long long>(spec.n % spec.delta));
        sum_r_ = 0;
        for (unsigned h = 0; h < H_; ++h) sum_r_ += need_[h];
        // two distinct points share [v-2]_q hyperplanes, two units on the same
        // point share [v-1]_q
        pair_cap_ = spec.v >= 2 && spec.max_mult == 1 ? gauss_ull(spec.v - 2, F.q())
                                                      : hyps_per_point_;
        budget_ = spec.node_budget ? spec.node_budget : default_node_budget();
    }

    SearchResult run(const std::vector<unsigned>& pinned) {
        SearchResult res;
        Timer timer;
        for (unsigned p : pinned) assign(p, 1);
        found_ = false;
        exhausted_ = false;
        if (!violated()) rec();
        res.nodes = nodes_;
        res.seconds = timer.seconds();
        if (found_) {
            res.status = SearchStatus::Exists;
            PointMultiset M(F_, spec_.v);
            for (unsigned p = 0; p < N_; ++p)
                if (mult_[p] > 0) M.add(geo_.points[p], static_cast<unsigned long long>(mult_[p]));
            res.witness = std::move(M);
        } else {
            res.status = exhausted_ ? SearchStatus::Inconclusive : SearchStatus::Absent;
        }
        return res;
    }

private:
    void assign(unsigned p, long long m) {
        mult_[p] = m;
        chosen_ += static_cast<unsigned long long>(m);
        for (unsigned h : geo_.point_hyps[p]) {
            --undecided_on_[h];
            if (m) {
                pair_sum_ += cnt_[h] * static_cast<unsigned long long>(m) +
                             static_cast<unsigned long long>(m) * (m - 1) / 2;
                cnt_[h] += static_cast<unsigned long long>(m);
                sum_r_ -= need_[h];
                need_[h] = (spec_.delta + (spec_.n % spec_.delta) - cnt_[h] % spec_.delta) %
                           spec_.delta;
                sum_r_ += need_[h];
            }
        }
        ++decided_;
    }

    void unassign(unsigned p) {
        const long long m = mult_[p];
        for (unsigned h : geo_.point_hyps[p]) {
            ++undecided_on_[h];
            if (m) {
                cnt_[h] -= static_cast<unsigned long long>(m);
                pair_sum_ -= cnt_[h] * static_cast<unsigned long long>(m) +
                             static_cast<unsigned long long>(m) * (m - 1) / 2;
                sum_r_ -= need_[h];
                need_[h] = (spec_.delta + (spec_.n % spec_.delta) - cnt_[h] % spec_.delta) %
                           spec_.delta;
                sum_r_ += need_[h];
            }
        }
        mult_[p] = -1;
        chosen_ -= static_cast<unsigned long long>(m);
        --decided_;
    }

    bool violated() const {
        if (chosen_ > spec_.n) return true;
        if (chosen_ + (N_ - decided_) * spec_.max_mult < spec_.n) return true;
        if (sum_r_ > (spec_.n - chosen_) * hyps_per_point_) return true;
        if (spec_.n >= 2 && pair_sum_ > spec_.n * (spec_.n - 1) / 2 * pair_cap_)
            return true;
        for (unsigned h = 0; h < H_; ++h)
            if (need_[h] > undecided_on_[h] * spec_.max_mult) return true;
        return false;
    }

    // Undecided point on the unsatisfied hyperplane closest to completion.
    int pick_point() const {
        int best_h = -1;
        for (unsigned h = 0; h < H_; ++h) {
            if (need_[h] == 0 || undecided_on_[h] == 0) continue;
            if (best_h < 0 || undecided_on_[h] < undecided_on_[static_cast<unsigned>(best_h)])
                best_h = static_cast<int>(h);
        }
        if (best_h >= 0) {
            for (unsigned p : geo_.hyp_points[static_cast<unsigned>(best_h)])
                if (mult_[p] < 0) return static_cast<int>(p);
        }
        for (unsigned p = 0; p < N_; ++p)
            if (mult_[p] < 0) return static_cast<int>(p);
        return -1;
    }

    void rec() {
        if (found_ || exhausted_) return;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return;
        }
        if (chosen_ == spec_.n && sum_r_ == 0) {
            if (!spec_.require_spanning || spans()) {
                found_ = true;
                return;
            }
        }
        const int p = pick_point();
        if (p < 0) return;
        const long long cap =
            static_cast<long long>(std::min<unsigned long long>(spec_.max_mult, spec_.n - chosen_));
        for (long long m = 0; m <= cap && !exhausted_; ++m) {
            assign(static_cast<unsigned>(p), m);
            if (!violated()) rec();
            if (found_) return;  // keep the assignment stack for the witness
            unassign(static_cast<unsigned>(p));
        }
    }

    bool spans() const {
        linalg::Mat rows;
        for (unsigned p = 0; p < N_; ++p)
            if (mult_[p] > 0) rows.push_back(geo_.points[p]);
        return linalg::rank(F_, rows) == spec_.v;
    }

    const Field& F_;
    const Incidence& geo_;
    SearchSpec spec_;
    unsigned N_ = 0, H_ = 0;
    unsigned long long hyps_per_point_ = 0;
    std::vector<long long> mult_;
    std::vector<unsigned long long> cnt_;
    std::vector<unsigned> undecided_on_;
    std::vector<unsigned long long> need_;
    unsigned long long sum_r_ = 0, chosen_ = 0, pair_sum_ = 0, pair_cap_ = 0;
    unsigned decided_ = 0;
    std::uint64_t nodes_ = 0, budget_ = 0;
    bool found_ = false, exhausted_ = false;
};

}  // namespace

namespace {

// Indices of the standard basis points (the frame e_1, ..., e_v) inside the
// canonical enumeration.
std::vector<unsigned> frame_indices(const Incidence& geo, unsigned v) {
    std::vector<unsigned> idx;
    for (unsigned i = 0; i < v; ++i) {
        Point e(v, 0);
        e[i] = 1;
        const auto it = std::lower_bound(geo.points.begin(), geo.points.end(), e);
        idx.push_back(static_cast<unsigned>(it - geo.points.begin()));
    }
    return idx;
}

// Spanning point-set search with the standard frame pinned: every spanning
// set contains v independent points, and PGL maps any such tuple onto the
// frame.
SearchResult exists_spanning_set(const SearchSpec& spec) {
    SearchResult res;
    if (spec.n < spec.v) {
        res.status = SearchStatus::Absent;
        return res;
    }
    const Incidence geo = build_incidence(spec.field, spec.v);
    if (spec.n > static_cast<unsigned long long>(geo.N)) {
        res.status = SearchStatus::Absent;
        return res;
    }
    SearchSpec sub = spec;
    sub.require_spanning = false;  // the pinned frame already spans
    ExistsEngine engine(spec.field, sub, geo);
    return engine.run(frame_indices(geo, spec.v));
}

}  // namespace

SearchResult exists_divisible_set(const SearchSpec& spec) {
    const Field& F = spec.field;
    if (spec.v < 1) throw std::invalid_argument("exists_divisible_set: v must be >= 1");
    if (spec.delta < 1) throw std::invalid_argument("exists_divisible_set: Delta must be >= 1");
    if (spec.max_mult < 1) throw std::invalid_argument("exists_divisible_set: max_mult must be >= 1");

    SearchResult res;
    if (spec.n == 0) {
        if (spec.require_spanning && spec.v >= 1) {
            res.status = SearchStatus::Absent;
            return res;
        }
        res.status = SearchStatus::Exists;
        res.witness = PointMultiset(F, spec.v);
        return res;
    }

    // Proven lower bounds decide some set instances outright.
    if (spec.use_bounds && spec.max_mult == 1 && spec.n > 0) {
        const unsigned long long q = F.q();
        if (F.p() == 2 && spec.delta == 2 && spec.n <= q) {
            res.status = SearchStatus::Absent;
            return res;
        }
        if (spec.delta > 1 && spec.delta < q && spec.n % spec.delta == 0 &&
            spec.n < geometry::ball_bound(spec.delta, q, F.p())) {
            res.status = SearchStatus::Absent;
            return res;
        }
    }

    if (spec.max_mult == 1) {
        // Point sets: split by the dimension actually spanned. Solutions
        // spanning w < v are embeddings of spanning solutions in PG(w-1, q).
        if (spec.require_spanning) return exists_spanning_set(spec);
        res.status = SearchStatus::Absent;
        const unsigned w_max =
            static_cast<unsigned>(std::min<unsigned long long>(spec.v, spec.n));
        for (unsigned w = 1; w <= w_max; ++w) {
            SearchSpec sub = spec;
            sub.v = w;
            auto part = exists_spanning_set(sub);
            res.nodes += part.nodes;
            res.seconds += part.seconds;
            if (part.status == SearchStatus::Exists) {
                res.status = SearchStatus::Exists;
                res.witness = geometry::embed(*part.witness, spec.v);
                return res;
            }
            if (part.status == SearchStatus::Inconclusive) res.status = SearchStatus::Inconclusive;
        }
        return res;
    }

    const Incidence geo = build_incidence(F, spec.v);
    if (spec.n > static_cast<unsigned long long>(geo.N) * spec.max_mult) {
        res.status = SearchStatus::Absent;
        return res;
    }
    ExistsEngine engine(F, spec, geo);
    return engine.run({});
}

// ---------------------------------------------------------------------------
// Classification by orderly generation: sorted point sets are grown index by
// index; a prefix survives only while it is the lexicographic minimum of its
// PGammaL-orbit, so exactly one representative per class reaches full size.
// ---------------------------------------------------------------------------

boost::multiprecision::cpp_int pgammal_order(unsigned q) {
    using boost::multiprecision::cpp_int;
    unsigned p = 2;
    while (q % p != 0) ++p;
    unsigned e = 0, t = q;
    while (t % p == 0) {
        t /= p;
        ++e;
    }
    cpp_int q3 = cpp_int(q) * q * q;
    cpp_int ord = q3 * (q3 - 1) * (cpp_int(q) * q - 1);
    return ord * e;
}

std::vector<Perm> pgammal_generators(const Field& F) {
    const unsigned v = 3;
    const auto points = geometry::enumerate_points(F, v);
    std::map<Point, unsigned> index;
    for (unsigned i = 0; i < points.size(); ++i) index[points[i]] = i;

    auto matrix_perm = [&](const std::vector<std::vector<Elem>>& A) {
        Perm g(points.size());
        for (unsigned i = 0; i < points.size(); ++i) {
            Point img(v, 0);
            for (unsigned r = 0; r < v; ++r)
                for (unsigned c = 0; c < v; ++c)
                    img[r] = F.add(img[r], F.mul(A[r][c], points[i][c]));
            g[i] = static_cast<std::uint16_t>(index.at(geometry::normalize_point(F, img)));
        }
        return g;
    };

    std::vector<Perm> gens;
    // transvections E_{rc}(1)
    for (unsigned r = 0; r < v; ++r)
        for (unsigned c = 0; c < v; ++c) {
            if (r == c) continue;
            std::vector<std::vector<Elem>> A(v, std::vector<Elem>(v, 0));
            for (unsigned i = 0; i < v; ++i) A[i][i] = 1;
            A[r][c] = 1;
            gens.push_back(matrix_perm(A));
        }
    // torus generators
    for (unsigned d = 0; d + 1 < v; ++d) {
        std::vector<std::vector<Elem>> A(v, std::vector<Elem>(v, 0));
        for (unsigned i = 0; i < v; ++i) A[i][i] = 1;
        A[d][d] = F.generator();
        gens.push_back(matrix_perm(A));
    }
    // coordinate cycle
    {
        std::vector<std::vector<Elem>> A(v, std::vector<Elem>(v, 0));
        for (unsigned i = 0; i < v; ++i) A[(i + 1) % v][i] = 1;
        gens.push_back(matrix_perm(A));
    }
    // field automorphism x -> x^p
    if (F.e() > 1) {
        Perm g(points.size());
        for (unsigned i = 0; i < points.size(); ++i) {
            Point img(v);
            for (unsigned r = 0; r < v; ++r) img[r] = F.frobenius(points[i][r]);
            g[i] = static_cast<std::uint16_t>(index.at(geometry::normalize_point(F, img)));
        }
        gens.push_back(std::move(g));
    }
    return gens;
}

namespace {

/// Point sets over a degree <= 128 as two machine words.
struct Bits {
    std::uint64_t w0 = 0, w1 = 0;
    void set(unsigned i) { (i < 64 ? w0 : w1) |= 1ull << (i & 63); }
    bool test(unsigned i) const { return ((i < 64 ? w0 : w1) >> (i & 63)) & 1; }
    bool operator==(const Bits& o) const { return w0 == o.w0 && w1 == o.w1; }
    bool operator<(const Bits& o) const { return w1 != o.w1 ? w1 < o.w1 : w0 < o.w0; }
};

Bits apply_perm(const Perm& g, const Bits& b, unsigned degree) {
    Bits r;
    for (unsigned i = 0; i < degree; ++i)
        if (b.test(i)) r.set(g[i]);
    return r;
}

class ClassifyEngine {
public:
    ClassifyEngine(const Field& F, const SearchSpec& spec, Incidence geo, std::vector<Perm> gens)
        : F_(F), spec_(spec), geo_(std::move(geo)), N_(geo_.N) {
        cnt_.assign(N_, 0);
        avail_.assign(N_, 0);
        for (unsigned h = 0; h < N_; ++h)
            avail_[h] = static_cast<unsigned>(geo_.hyp_points[h].size());
        need_.assign(N_, static_cast<unsigned>(spec.n % spec.delta));
        sum_r_ = 0;
        for (unsigned h = 0; h < N_; ++h) sum_r_ += need_[h];
        q1_ = static_cast<unsigned>(geo_.point_hyps[0].size());  // lines through a point
        budget_ = spec.node_budget ? spec.node_budget : default_node_budget();
        stack_.push_back(permgroup::make_orbit_level(std::move(gens), N_));
    }

    ClassificationResult run() {
        Timer timer;
        ClassificationResult out;
        rec(0);
        out.complete = !exhausted_;
        out.nodes = nodes_;
        out.seconds = timer.seconds();
        for (const auto& rep : reps_) {
            PointMultiset M(F_, spec_.v);
            for (unsigned p : rep) M.add(geo_.points[p], 1);
            out.representatives.push_back(std::move(M));
        }
        return out;
    }

private:
    // Exact test: is the current prefix the lexicographic minimum of its
    // orbit? Candidate cosets are tracked as image sets and refined one
    // matched position at a time through the stabilizer stack.
    bool prefix_is_minimal() const {
        const unsigned k = static_cast<unsigned>(prefix_.size());
        Bits start;
        for (unsigned p : prefix_) start.set(p);
        std::vector<Bits> cands{start};
        Bits matched;
        for (unsigned i = 0; i < k; ++i) {
            const OrbitLevel& G = stack_[i];
            const unsigned target = prefix_[i];
            unsigned m = N_;
            for (const auto& cand : cands)
                for (unsigned x = 0; x < N_; ++x)
                    if (cand.test(x) && !matched.test(x)) m = std::min<unsigned>(m, G.orbit_min[x]);
            if (m < target) return false;
            std::vector<Bits> next;
            for (const auto& cand : cands)
                for (unsigned x = 0; x < N_; ++x) {
                    if (!cand.test(x) || matched.test(x) || G.orbit_min[x] != m) continue;
                    Bits img = (x == m) ? cand : apply_perm(G.to_min(x), cand, N_);
                    if (std::find(next.begin(), next.end(), img) == next.end())
                        next.push_back(img);
                }
            cands.swap(next);
            matched.set(target);
        }
        return true;
    }

    void include(unsigned p) {
        prefix_.push_back(p);
        for (unsigned h : geo_.point_hyps[p]) {
            pair_sum_ += cnt_[h];
            ++cnt_[h];
            sum_r_ -= need_[h];
            need_[h] = (need_[h] + spec_.delta - 1) % static_cast<unsigned>(spec_.delta);
            sum_r_ += need_[h];
        }
    }

    void unclude(unsigned p) {
        prefix_.pop_back();
        for (unsigned h : geo_.point_hyps[p]) {
            --cnt_[h];
            pair_sum_ -= cnt_[h];
            sum_r_ -= need_[h];
            need_[h] = (need_[h] + 1) % static_cast<unsigned>(spec_.delta);
            sum_r_ += need_[h];
        }
    }

    void pass(unsigned p) {
        for (unsigned h : geo_.point_hyps[p]) --avail_[h];
    }
    void unpass(unsigned p) {
        for (unsigned h : geo_.point_hyps[p]) ++avail_[h];
    }

    bool violated() const {
        const unsigned long long chosen = prefix_.size();
        if (sum_r_ > (spec_.n - chosen) * q1_) return true;
        if (spec_.n >= 2 && pair_sum_ > spec_.n * (spec_.n - 1) / 2) return true;
        for (unsigned h = 0; h < N_; ++h)
            if (need_[h] > avail_[h]) return true;
        return false;
    }

    void rec(unsigned idx) {
        if (exhausted_) return;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return;
        }
        if (prefix_.size() == spec_.n) {
            if (sum_r_ == 0 && (!spec_.require_spanning || spans())) reps_.push_back(prefix_);
            return;
        }
        if (idx == N_) return;
        if (prefix_.size() + (N_ - idx) < spec_.n) return;

        // include idx
        include(idx);
        pass(idx);
        if (!violated() && prefix_is_minimal()) {
            stack_.push_back(permgroup::make_orbit_level(
                permgroup::point_stabilizer_gens(stack_.back(), idx, N_), N_));
            rec(idx + 1);
            stack_.pop_back();
        }
        unpass(idx);
        unclude(idx);
        if (exhausted_) return;

        // skip idx
        pass(idx);
        if (!violated()) rec(idx + 1);
        unpass(idx);
    }

    bool spans() const {
        linalg::Mat rows;
        for (unsigned p : prefix_) rows.push_back(geo_.points[p]);
        return linalg::rank(F_, rows) == spec_.v;
    }

    const Field& F_;
    SearchSpec spec_;
    Incidence geo_;
    unsigned N_ = 0, q1_ = 0;
    std::vector<unsigned long long> cnt_;
    std::vector<unsigned> avail_;
    std::vector<unsigned> need_;
    unsigned long long sum_r_ = 0, pair_sum_ = 0;
    std::vector<unsigned> prefix_;
    std::vector<OrbitLevel> stack_;
    std::vector<std::vector<unsigned>> reps_;
    std::uint64_t nodes_ = 0, budget_ = 0;
    bool exhausted_ = false;
};

}  // namespace

ClassificationResult classify(const SearchSpec& spec, const std::vector<unsigned>* relabel) {
    const Field& F = spec.field;
    if (spec.v != 3) throw std::invalid_argument("classify: current scope is v = 3");
    if (F.q() > 9) throw std::invalid_argument("classify: current scope is q <= 9");
    if (spec.max_mult != 1) throw std::invalid_argument("classify: current scope is projective sets");
    if (spec.delta < 1) throw std::invalid_argument("classify: Delta must be >= 1");

    Incidence geo = build_incidence(F, spec.v);
    std::vector<Perm> gens = pgammal_generators(F);

    if (relabel) {
        if (relabel->size() != geo.N)
            throw std::invalid_argument("classify: relabel must be a permutation of the points");
        // Position i of the enumeration now holds point relabel[i]; hyperplane
        // indices stay put, their incidence lists are renamed, and the group
        // generators are conjugated accordingly.
        std::vector<unsigned> inv(geo.N);
        for (unsigned i = 0; i < geo.N; ++i) inv[(*relabel)[i]] = i;
        Incidence g2;
        g2.N = geo.N;
        g2.points.resize(geo.N);
        g2.hyp_points.assign(geo.N, {});
        g2.point_hyps.assign(geo.N, {});
        for (unsigned i = 0; i < geo.N; ++i) g2.points[i] = geo.points[(*relabel)[i]];
        for (unsigned h = 0; h < geo.N; ++h) {
            for (unsigned p : geo.hyp_points[h]) g2.hyp_points[h].push_back(inv[p]);
            std::sort(g2.hyp_points[h].begin(), g2.hyp_points[h].end());
            for (unsigned p : g2.hyp_points[h]) g2.point_hyps[p].push_back(h);
        }
        for (auto& g : gens) {
            Perm c(geo.N);
            for (unsigned i = 0; i < geo.N; ++i)
                c[i] = static_cast<std::uint16_t>(inv[g[(*relabel)[i]]]);
            g = std::move(c);
        }
        geo = std::move(g2);
    }

    ClassifyEngine engine(F, spec, std::move(geo), std::move(gens));
    return engine.run();
}

bool uniqueness_check(const SearchSpec& spec, Structure property) {
    const auto result = classify(spec);
    if (!result.complete)
        throw std::runtime_error("uniqueness_check: classification exceeded the node budget");
    for (const auto& rep : result.representatives) {
        bool ok = false;
        switch (property) {
            case Structure::Line: ok = geometry::is_line_set(rep); break;
            case Structure::Hyperoval: ok = geometry::is_hyperoval_set(rep); break;
            case Structure::KMArc:
                ok = geometry::is_km_arc(rep, spec.n - spec.field.q());
                break;
        }
        if (!ok) return false;
    }
    return true;
}

}  // namespace divcode::search

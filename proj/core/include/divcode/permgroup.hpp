#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <vector>

namespace divcode::permgroup {

/// Permutation on {0, ..., degree-1} as its image table.
using Perm = std::vector<std::uint16_t>;

Perm identity(unsigned degree);
bool is_identity(const Perm& g);
Perm compose(const Perm& f, const Perm& g);  // (f*g)(x) = f[g[x]]
Perm inverse(const Perm& f);

/// Deterministic Schreier-Sims stabilizer chain over a small degree.
/// Supports incremental generator insertion, membership sifting and exact
/// order computation.
class StabChain {
public:
    explicit StabChain(unsigned degree) : degree_(degree) {}
    StabChain(unsigned degree, const std::vector<Perm>& gens) : degree_(degree) {
        for (const auto& g : gens) add_generator(g);
    }

    /// Inserts g; returns false if g was already contained.
    bool add_generator(const Perm& g);
    bool contains(const Perm& g) const;
    boost::multiprecision::cpp_int order() const;
    unsigned degree() const { return degree_; }

private:
    struct Level {
        unsigned beta = 0;
        std::vector<Perm> gens;        // strong generators fixing the base prefix
        std::vector<int> parent;       // Schreier tree: point -> predecessor point
        std::vector<int> parent_gen;   // index into gens
        std::vector<unsigned> orbit;   // BFS order, orbit[0] == beta
        mutable std::vector<std::optional<Perm>> transversal_cache;
    };

    void rebuild_orbit(std::size_t i);
    const Perm& transversal(std::size_t i, unsigned point) const;  // u(beta) = point
    std::pair<Perm, std::size_t> sift(Perm g, std::size_t from) const;
    void insert(std::size_t i, const Perm& g);
    void close();

    unsigned degree_;
    std::vector<Level> levels_;
};

/// Orbit data of one group in a descending stabilizer stack: orbit minima and
/// Schreier forests rooted at them, plus lazily built maps to the roots.
struct OrbitLevel {
    std::vector<Perm> gens;
    std::vector<std::uint16_t> orbit_min;  // point -> min element of its orbit
    std::vector<int> parent;
    std::vector<int> parent_gen;
    mutable std::vector<std::optional<Perm>> to_min_cache;

    bool trivial() const { return gens.empty(); }
    /// u with u(x) = orbit_min[x].
    const Perm& to_min(unsigned x) const;
};

OrbitLevel make_orbit_level(std::vector<Perm> gens, unsigned degree);

/// Generators of the stabilizer of `point` inside the group of `level`
/// (Schreier generators, pruned to an irredundant list by sifting).
std::vector<Perm> point_stabilizer_gens(const OrbitLevel& level, unsigned point, unsigned degree);

}  // namespace divcode::permgroup

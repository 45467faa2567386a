#include "divcode/permgroup.hpp"

#include <algorithm>
#include <stdexcept>

namespace divcode::permgroup {

Perm identity(unsigned degree) {
    Perm g(degree);
    for (unsigned i = 0; i < degree; ++i) g[i] = static_cast<std::uint16_t>(i);
    return g;
}

bool is_identity(const Perm& g) {
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i] != i) return false;
    return true;
}

Perm compose(const Perm& f, const Perm& g) {
    Perm r(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) r[i] = f[g[i]];
    return r;
}

Perm inverse(const Perm& f) {
    Perm r(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) r[f[i]] = static_cast<std::uint16_t>(i);
    return r;
}

void StabChain::rebuild_orbit(std::size_t i) {
    Level& lv = levels_[i];
    lv.parent.assign(degree_, -1);
    lv.parent_gen.assign(degree_, -1);
    lv.orbit.clear();
    lv.transversal_cache.assign(degree_, std::nullopt);
    lv.orbit.push_back(lv.beta);
    std::vector<char> seen(degree_, 0);
    seen[lv.beta] = 1;
    for (std::size_t head = 0; head < lv.orbit.size(); ++head) {
        const unsigned gamma = lv.orbit[head];
        for (std::size_t gi = 0; gi < lv.gens.size(); ++gi) {
            const unsigned delta = lv.gens[gi][gamma];
            if (!seen[delta]) {
                seen[delta] = 1;
                lv.parent[delta] = static_cast<int>(gamma);
                lv.parent_gen[delta] = static_cast<int>(gi);
                lv.orbit.push_back(delta);
            }
        }
    }
}

const Perm& StabChain::transversal(std::size_t i, unsigned point) const {
    const Level& lv = levels_[i];
    auto& slot = lv.transversal_cache[point];
    if (!slot) {
        if (point == lv.beta) {
            slot = identity(degree_);
        } else {
            const unsigned pred = static_cast<unsigned>(lv.parent[point]);
            slot = compose(lv.gens[static_cast<std::size_t>(lv.parent_gen[point])],
                           transversal(i, pred));
        }
    }
    return *slot;
}

std::pair<Perm, std::size_t> StabChain::sift(Perm g, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
        const unsigned gamma = g[levels_[i].beta];
        if (levels_[i].parent[gamma] < 0 && gamma != levels_[i].beta) return {std::move(g), i};
        g = compose(inverse(transversal(i, gamma)), g);
    }
    return {std::move(g), levels_.size()};
}

void StabChain::insert(std::size_t i, const Perm& g) {
    if (i == levels_.size()) {
        Level lv;
        for (unsigned x = 0; x < degree_; ++x)
            if (g[x] != x) {
                lv.beta = x;
                break;
            }
        levels_.push_back(std::move(lv));
    }
    // A generator fixing the first i base points serves every level <= i.
    for (std::size_t j = 0; j <= i && j < levels_.size(); ++j) {
        levels_[j].gens.push_back(g);
        rebuild_orbit(j);
    }
}

void StabChain::close() {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; !changed && i < levels_.size(); ++i) {
            // insert() may reallocate levels_, so everything is re-read from
            // levels_[i] and the loops bail out as soon as a change happens.
            for (std::size_t oi = 0; !changed && oi < levels_[i].orbit.size(); ++oi) {
                const unsigned gamma = levels_[i].orbit[oi];
                for (std::size_t gi = 0; !changed && gi < levels_[i].gens.size(); ++gi) {
                    const Perm x = levels_[i].gens[gi];
                    Perm sg = compose(inverse(transversal(i, x[gamma])),
                                      compose(x, transversal(i, gamma)));
                    if (is_identity(sg)) continue;
                    auto [res, lvl] = sift(std::move(sg), i + 1);
                    if (!is_identity(res)) {
                        insert(lvl, res);
                        changed = true;
                    }
                }
            }
        }
    }
}

bool StabChain::add_generator(const Perm& g) {
    if (g.size() != degree_) throw std::invalid_argument("StabChain: degree mismatch");
    if (is_identity(g)) return false;
    auto [res, lvl] = sift(g, 0);
    if (is_identity(res)) return false;
    insert(lvl, res);
    close();
    return true;
}

bool StabChain::contains(const Perm& g) const {
    if (g.size() != degree_) throw std::invalid_argument("StabChain: degree mismatch");
    auto [res, lvl] = sift(g, 0);
    return is_identity(res);
}

boost::multiprecision::cpp_int StabChain::order() const {
    boost::multiprecision::cpp_int o = 1;
    for (const auto& lv : levels_) o *= lv.orbit.size();
    return o;
}

const Perm& OrbitLevel::to_min(unsigned x) const {
    auto& slot = to_min_cache[x];
    if (!slot) {
        if (orbit_min[x] == x) {
            slot = identity(static_cast<unsigned>(orbit_min.size()));
        } else {
            // walk the Schreier forest towards the root, applying inverses
            Perm u = identity(static_cast<unsigned>(orbit_min.size()));
            unsigned cur = x;
            while (parent[cur] >= 0) {
                u = compose(inverse(gens[static_cast<std::size_t>(parent_gen[cur])]), u);
                cur = static_cast<unsigned>(parent[cur]);
            }
            slot = std::move(u);
        }
    }
    return *slot;
}

OrbitLevel make_orbit_level(std::vector<Perm> gens, unsigned degree) {
    OrbitLevel lv;
    lv.gens = std::move(gens);
    lv.orbit_min.resize(degree);
    lv.parent.assign(degree, -1);
    lv.parent_gen.assign(degree, -1);
    lv.to_min_cache.assign(degree, std::nullopt);
    if (lv.gens.empty()) {
        for (unsigned x = 0; x < degree; ++x) lv.orbit_min[x] = static_cast<std::uint16_t>(x);
        return lv;
    }
    std::vector<char> seen(degree, 0);
    for (unsigned root = 0; root < degree; ++root) {
        if (seen[root]) continue;
        // ascending scan: the first unseen point of an orbit is its minimum
        std::vector<unsigned> queue{root};
        seen[root] = 1;
        lv.orbit_min[root] = static_cast<std::uint16_t>(root);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const unsigned gamma = queue[head];
            for (std::size_t gi = 0; gi < lv.gens.size(); ++gi) {
                const unsigned delta = lv.gens[gi][gamma];
                if (!seen[delta]) {
                    seen[delta] = 1;
                    lv.orbit_min[delta] = static_cast<std::uint16_t>(root);
                    lv.parent[delta] = static_cast<int>(gamma);
                    lv.parent_gen[delta] = static_cast<int>(gi);
                    queue.push_back(delta);
                }
            }
        }
    }
    return lv;
}

std::vector<Perm> point_stabilizer_gens(const OrbitLevel& level, unsigned point, unsigned degree) {
    if (level.trivial()) return {};

    // BFS tree rooted at the point itself.
    std::vector<int> parent(degree, -1), parent_gen(degree, -1);
    std::vector<unsigned> orbit{point};
    std::vector<char> seen(degree, 0);
    seen[point] = 1;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
        const unsigned gamma = orbit[head];
        for (std::size_t gi = 0; gi < level.gens.size(); ++gi) {
            const unsigned delta = level.gens[gi][gamma];
            if (!seen[delta]) {
                seen[delta] = 1;
                parent[delta] = static_cast<int>(gamma);
                parent_gen[delta] = static_cast<int>(gi);
                orbit.push_back(delta);
            }
        }
    }
    if (orbit.size() == 1) return level.gens;  // every generator fixes the point

    // transversals t with t(point) = gamma, built in BFS order
    std::vector<Perm> trans(degree);
    trans[point] = identity(degree);
    for (std::size_t head = 1; head < orbit.size(); ++head) {
        const unsigned gamma = orbit[head];
        trans[gamma] = compose(level.gens[static_cast<std::size_t>(parent_gen[gamma])],
                               trans[static_cast<unsigned>(parent[gamma])]);
    }

    // Schreier generators, pruned by sifting through an incremental chain.
    StabChain pruner(degree);
    std::vector<Perm> kept;
    for (unsigned gamma : orbit) {
        for (const auto& g : level.gens) {
            Perm sg = compose(inverse(trans[g[gamma]]), compose(g, trans[gamma]));
            if (is_identity(sg)) continue;
            if (pruner.add_generator(sg)) kept.push_back(std::move(sg));
        }
    }
    return kept;
}

}  // namespace divcode::permgroup

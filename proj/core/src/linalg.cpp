#include "divcode/linalg.hpp"

#include <stdexcept>

namespace divcode::linalg {

using gf::Elem;
using gf::Field;

std::vector<unsigned> rref(const Field& F, Mat& m) {
    std::vector<unsigned> pivots;
    if (m.empty()) return pivots;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        const Elem s = F.inv(m[row][col]);
        for (std::size_t j = col; j < cols; ++j) m[row][j] = F.mul(m[row][j], s);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col] == 0) continue;
            const Elem f = m[i][col];
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] = F.sub(m[i][j], F.mul(f, m[row][j]));
        }
        pivots.push_back(static_cast<unsigned>(col));
        ++row;
    }
    m.resize(row);  // drop zero rows
    return pivots;
}

unsigned rank(const Field& F, Mat m) { return static_cast<unsigned>(rref(F, m).size()); }

std::optional<Vec> coordinates(const Field& F, const Mat& basis, const Vec& target) {
    // Eliminate target against an echelonized copy while tracking the
    // combination in terms of the original rows.
    Mat work = basis;
    Mat track(basis.size(), Vec(basis.size(), 0));
    for (std::size_t i = 0; i < basis.size(); ++i) track[i][i] = 1;

    const std::size_t cols = target.size();
    std::size_t row = 0;
    std::vector<std::pair<std::size_t, std::size_t>> piv;  // (row, col)
    for (std::size_t col = 0; col < cols && row < work.size(); ++col) {
        std::size_t sel = row;
        while (sel < work.size() && work[sel][col] == 0) ++sel;
        if (sel == work.size()) continue;
        std::swap(work[row], work[sel]);
        std::swap(track[row], track[sel]);
        const Elem s = F.inv(work[row][col]);
        for (auto& x : work[row]) x = F.mul(x, s);
        for (auto& x : track[row]) x = F.mul(x, s);
        for (std::size_t i = row + 1; i < work.size(); ++i) {
            if (work[i][col] == 0) continue;
            const Elem f = work[i][col];
            for (std::size_t j = 0; j < cols; ++j)
                work[i][j] = F.sub(work[i][j], F.mul(f, work[row][j]));
            for (std::size_t j = 0; j < track[i].size(); ++j)
                track[i][j] = F.sub(track[i][j], F.mul(f, track[row][j]));
        }
        piv.emplace_back(row, col);
        ++row;
    }
    if (row < work.size())
        throw std::invalid_argument("coordinates: basis rows are linearly dependent");

    Vec residual = target;
    Vec coeff(basis.size(), 0);
    for (auto [r, c] : piv) {
        if (residual[c] == 0) continue;
        const Elem f = residual[c];
        for (std::size_t j = 0; j < cols; ++j)
            residual[j] = F.sub(residual[j], F.mul(f, work[r][j]));
        for (std::size_t j = 0; j < coeff.size(); ++j)
            coeff[j] = F.add(coeff[j], F.mul(f, track[r][j]));
    }
    for (auto x : residual)
        if (x != 0) return std::nullopt;
    return coeff;
}

Mat nullspace(const Field& F, const Mat& m, unsigned cols) {
    Mat work = m;
    for (auto& r : work)
        if (r.size() != cols) throw std::invalid_argument("nullspace: ragged matrix");
    auto pivots = rref(F, work);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;

    Mat basis;
    for (unsigned free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        Vec x(cols, 0);
        x[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            x[pivots[r]] = F.neg(work[r][free]);
        basis.push_back(std::move(x));
    }
    return basis;
}

gf::Elem dot(const Field& F, const Vec& x, const Vec& y) {
    Elem s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s = F.add(s, F.mul(x[i], y[i]));
    return s;
}

}  // namespace divcode::linalg

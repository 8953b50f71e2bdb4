#pragma once

// Exact dense linear algebra over Q, just enough for kernels and ranks of
// the small systems this project solves.

#include <vector>

#include "curveproj/rat.hpp"

namespace curveproj {

using RatMatrix = std::vector<std::vector<Rat>>;

// Reduced row echelon form in place; returns the pivot column indices.
inline std::vector<int> rref(RatMatrix& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && m[sel][c].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[r]);
        Rat inv = m[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Rat f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

inline int rat_rank(RatMatrix m) { return static_cast<int>(rref(m).size()); }

// Basis of the right kernel of m (vectors v with m v = 0), deterministic.
inline std::vector<std::vector<Rat>> rat_kernel(RatMatrix m) {
    if (m.empty()) return {};
    const std::size_t cols = m[0].size();
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;

    std::vector<std::vector<Rat>> basis;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[free_c] = Rat(1);
        for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
            std::size_t pc = static_cast<std::size_t>(pivots[pi]);
            v[pc] = -m[pi][free_c];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace curveproj

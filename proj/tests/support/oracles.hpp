#pragma once

// Brute-force references used by the tests. They share no code with the
// library solvers beyond the Position3 value type.

#include "uavtwin/scene/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using uavtwin::scene::Position3;

constexpr double kC = 299792458.0;
constexpr double kPi = 3.14159265358979323846;

inline double dist(const Position3& a, const Position3& b) {
    return std::sqrt((a.east - b.east) * (a.east - b.east) + (a.north - b.north) * (a.north - b.north) +
                     (a.up - b.up) * (a.up - b.up));
}

/// Naive O(n^2) DFT with the exp(-j 2 pi k m / n) convention.
inline std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x) {
    const std::size_t n = x.size();
    std::vector<std::complex<double>> X(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc{};
        for (std::size_t m = 0; m < n; ++m)
            acc += x[m] * std::polar(1.0, -2.0 * kPi * static_cast<double>((k * m) % n) / static_cast<double>(n));
        X[k] = acc;
    }
    return X;
}

struct GridResult {
    Position3 best;
    double cost = 0.0;
    int expansions = 0;
};

/// Exhaustive search on the lattice `step` * Z^d inside a box of half width
/// `half` around `center` (d = 2 when altitude is given, else 3). The box is
/// doubled while the minimizer sits on its boundary.
inline GridResult grid_search(const std::function<double(const Position3&)>& cost, const Position3& center,
                              double half, double step, const double* altitude = nullptr) {
    GridResult r;
    for (;;) {
        const long ce = std::lround(center.east / step);
        const long cn = std::lround(center.north / step);
        const long cu = std::lround(center.up / step);
        const long h = static_cast<long>(std::ceil(half / step));
        double best = std::numeric_limits<double>::infinity();
        long bi = 0, bj = 0, bk = 0;
        const long hk = altitude ? 0 : h;
        for (long i = -h; i <= h; ++i)
            for (long j = -h; j <= h; ++j)
                for (long k = -hk; k <= hk; ++k) {
                    const Position3 p{static_cast<double>(ce + i) * step, static_cast<double>(cn + j) * step,
                                      altitude ? *altitude : static_cast<double>(cu + k) * step};
                    const double c = cost(p);
                    if (c < best) {
                        best = c;
                        bi = i;
                        bj = j;
                        bk = k;
                    }
                }
        const bool edge = std::abs(bi) == h || std::abs(bj) == h || (!altitude && std::abs(bk) == h);
        r.best = {static_cast<double>(ce + bi) * step, static_cast<double>(cn + bj) * step,
                  altitude ? *altitude : static_cast<double>(cu + bk) * step};
        r.cost = best;
        if (!edge || r.expansions >= 6) return r;
        half *= 2.0;
        ++r.expansions;
    }
}

/// True when every coordinate of a and b differs by at most one grid step.
inline bool within_one_cell(const Position3& a, const Position3& b, double step) {
    const double tol = step * (1.0 + 1e-9);
    return std::abs(a.east - b.east) <= tol && std::abs(a.north - b.north) <= tol && std::abs(a.up - b.up) <= tol;
}

/// Minimum total cost over all permutations (rows <= cols), by enumeration.
inline double brute_force_assignment(const std::vector<std::vector<double>>& cost) {
    const std::size_t rows = cost.size();
    const std::size_t cols = rows ? cost[0].size() : 0;
    std::vector<std::size_t> perm(cols);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < rows; ++i) total += cost[i][perm[i]];
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Quantile by full sort and linear interpolation between order statistics.
inline double sorted_quantile(std::vector<double> v, double q) {
    std::sort(v.begin(), v.end());
    const double pos = q * static_cast<double>(v.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= v.size()) return v.back();
    return v[lo] + (pos - static_cast<double>(lo)) * (v[lo + 1] - v[lo]);
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace oracle

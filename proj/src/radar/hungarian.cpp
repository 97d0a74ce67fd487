#include "uavtwin/radar/hungarian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace uavtwin::radar {

std::vector<int> hungarian(const Eigen::MatrixXd& cost) {
    const int rows = static_cast<int>(cost.rows());
    const int cols = static_cast<int>(cost.cols());
    std::vector<int> result(static_cast<std::size_t>(rows), -1);
    if (rows == 0 || cols == 0) return result;

    // Forbidden pairs get a cost above any feasible total, so they are only
    // used when nothing else fits and are dropped afterwards.
    double finite_max = 0.0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (std::isfinite(cost(i, j))) finite_max = std::max(finite_max, std::abs(cost(i, j)));
    const int n = std::max(rows, cols);
    const double big = (finite_max + 1.0) * static_cast<double>(n + 1);
    auto a = [&](int i, int j) {  // 1-based, padded square matrix
        if (i > rows || j > cols) return 0.0;
        const double c = cost(i - 1, j - 1);
        return std::isfinite(c) ? c : big;
    };

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = a(i0, j) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    for (int j = 1; j <= n; ++j) {
        const int i = p[j];
        if (i >= 1 && i <= rows && j <= cols && std::isfinite(cost(i - 1, j - 1)))
            result[static_cast<std::size_t>(i - 1)] = j - 1;
    }
    return result;
}

}  // namespace uavtwin::radar

#include "rlab/matching.hpp"

#include <limits>

#include "rlab/errors.hpp"

namespace rlab {

AssignmentResult min_cost_assignment(const std::vector<std::vector<long long>>& cost) {
    const int n = static_cast<int>(cost.size());
    if (n == 0) throw UsageError("min_cost_assignment: empty matrix");
    for (const auto& row : cost)
        if (static_cast<int>(row.size()) != n)
            throw UsageError("min_cost_assignment: matrix must be square");

    const long long INF = std::numeric_limits<long long>::max() / 4;
    // 1-based potentials formulation; p[j], way[j] over columns
    std::vector<long long> u(n + 1, 0), v(n + 1, 0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<long long> minv(n + 1, INF);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const int i0 = p[j0];
            long long delta = INF;
            int j1 = -1;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const long long cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
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
        } while (j0);
    }

    AssignmentResult result;
    result.row_to_col.assign(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) result.row_to_col[p[j] - 1] = j - 1;
    for (int i = 0; i < n; ++i) result.total_cost += cost[i][result.row_to_col[i]];
    return result;
}

}  // namespace rlab

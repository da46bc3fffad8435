#pragma once

#include <cstdint>
#include <vector>

namespace rlab {

// Exact minimum-cost perfect matching on a square integer cost matrix
// (shortest augmenting paths with potentials, O(n^3)). Returns the column
// assigned to each row and the total cost.
struct AssignmentResult {
    std::vector<int> row_to_col;
    long long total_cost = 0;
};

AssignmentResult min_cost_assignment(const std::vector<std::vector<long long>>& cost);

}  // namespace rlab

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace polymatch {

/// One constraint a·x <= b.
struct HalfSpace {
    std::vector<double> a;
    double b = 0.0;
};

struct LinearProgram {
    /// Maximized objective c·x.
    std::vector<double> objective;
    std::vector<HalfSpace> constraints;
    /// Every coordinate is additionally confined to [-bound, bound].
    double bound = 1e9;
};

/// Seidel's randomized incremental algorithm for small dimension. Returns an
/// optimal point, or nullopt when the program is infeasible. Constraints are
/// inserted in an order drawn from `seed`, so results are reproducible.
std::optional<std::vector<double>> solve_lp(const LinearProgram& lp, std::uint64_t seed = 0x5eed);

}  // namespace polymatch

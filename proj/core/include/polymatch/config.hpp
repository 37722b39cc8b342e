#pragma once

#include <cstdint>

namespace polymatch {

/// Tunable constants and switches shared by the approximation pipeline.
struct Config {
    /// Shrink factor applied to the overlap rectangle.
    double c3 = 20.0;
    /// Every pairwise overlap fits, under translation, in cR times the overlap rectangle.
    double cR = 100.0;
    /// Inner approximations use N = ceil(c4 / eps) slicing lines.
    double c4 = 32.0;
    /// Grid subdivisions per side for the small-in-large estimator: ceil(grid_factor / eps).
    double grid_factor = 4.0;
    std::uint64_t lp_seed = 0x5eed;

    /// Use the slice-onion construction instead of the grid for small-in-large pairs.
    bool slice_onion = false;
    /// Point location by linear scan instead of the trapezoidal map.
    bool linear_scan = false;
    /// Build pair approximations on worker threads.
    bool parallel_pairs = false;

    void validate() const;
};

}  // namespace polymatch

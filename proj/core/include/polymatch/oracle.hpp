#pragma once

#include "polymatch/geom.hpp"

namespace polymatch {

struct OracleOptions {
    int base_grid = 201;        ///< samples per axis on the coarse grid
    int refinement_levels = 3;  ///< each level is 10x finer around the incumbent
    int refine_grid = 21;       ///< samples per axis per refinement level
    bool parallel = true;
};

struct OracleReport {
    Point best_translation;
    double best_value = 0.0;
    double grid_pitch = 0.0;  ///< final pitch (larger axis)
    int refinement_levels = 0;
    /// (perimeter(P) + perimeter(Q)) * grid_pitch
    double value_slack_bound = 0.0;
};

/// Sum of pairwise convex overlaps of the two decompositions. Polygons without
/// parts are decomposed first.
double exact_overlap_general(const SimplePolygon& p, const SimplePolygon& q, const Point& t);

/// Dense-grid maximization of the overlap over the Minkowski-difference
/// bounding box of the supports.
OracleReport grid_max_overlap(const SimplePolygon& p, const SimplePolygon& q, const OracleOptions& opt = {});

}  // namespace polymatch

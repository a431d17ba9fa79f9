#pragma once

#include <cstdint>
#include <vector>

#include "localec/graph.hpp"

namespace localec {

struct ColorReductionResult {
    std::vector<int> colors;  // 0-based proper coloring
    int num_colors = 0;       // size of the final color space
    int rounds = 0;           // LOCAL rounds consumed (one per reduction step)
};

// Iterated set-system color reduction in the style of Linial's algorithm:
// from a proper coloring with colors in [0, k0) down to at most
// kLinialBeta * max(D,1)^2 colors, where D is the maximum degree.  Each step
// uses only the colors of the direct neighbors (radius 1).
ColorReductionResult linial_color_reduction(const Graph& g, const std::vector<int>& initial,
                                            long long k0);

// log_star(n): iterations of log2 until the value drops to <= 2.
int log_star(double n);

}  // namespace localec

#pragma once

#include <vector>

#include "nhskin/types.hpp"

namespace nhskin {

/// Minimal-cost perfect assignment on a square cost matrix; returns col index per row.
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost);

struct MatchResult {
  std::vector<int> assignment;  // b index per a index
  double max_distance = 0.0;
  double mean_distance = 0.0;
};

/// Bipartite matching of two equal-size multisets on |a_i - b_j|.
MatchResult match_spectra(const std::vector<cplx>& a, const std::vector<cplx>& b);

}  // namespace nhskin

#include "nhskin/matching.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace nhskin {

std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  for (const auto& row : cost)
    if (static_cast<int>(row.size()) != n) throw Error("hungarian: cost matrix must be square");
  const double inf = std::numeric_limits<double>::infinity();
  // Potentials over 1-based rows/columns; column 0 is the virtual start.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
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
  std::vector<int> assignment(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) assignment[p[j] - 1] = j - 1;
  return assignment;
}

MatchResult match_spectra(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  if (a.size() != b.size())
    throw Error("match_spectra: sizes differ (" + std::to_string(a.size()) + " vs " +
                std::to_string(b.size()) + ")");
  const std::size_t n = a.size();
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cost[i][j] = std::abs(a[i] - b[j]);
  MatchResult r;
  r.assignment = hungarian(cost);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = cost[i][static_cast<std::size_t>(r.assignment[i])];
    r.max_distance = std::max(r.max_distance, d);
    r.mean_distance += d;
  }
  if (n > 0) r.mean_distance /= static_cast<double>(n);
  return r;
}

}  // namespace nhskin

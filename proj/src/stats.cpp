#include "eigcount/stats.hpp"

#include <vector>

#include "eigcount/specfun.hpp"

namespace eigcount {

ChiSquareResult chi_square_two_sample(const std::map<int, std::uint64_t>& a,
                                      const std::map<int, std::uint64_t>& b) {
  std::map<int, std::pair<double, double>> table;
  for (const auto& [k, v] : a) table[k].first += double(v);
  for (const auto& [k, v] : b) table[k].second += double(v);

  double na = 0.0, nb = 0.0;
  for (const auto& [k, cell] : table) {
    na += cell.first;
    nb += cell.second;
  }
  ChiSquareResult r;
  if (na == 0.0 || nb == 0.0) return r;
  const double total = na + nb;
  int categories = 0;
  for (const auto& [k, cell] : table) {
    const double col = cell.first + cell.second;
    if (col == 0.0) continue;
    ++categories;
    const double ea = na * col / total;
    const double eb = nb * col / total;
    r.statistic += (cell.first - ea) * (cell.first - ea) / ea;
    r.statistic += (cell.second - eb) * (cell.second - eb) / eb;
  }
  r.degrees_of_freedom = categories - 1;
  if (r.degrees_of_freedom > 0) {
    r.p_value = specfun::regularized_gamma_q(0.5 * r.degrees_of_freedom, 0.5 * r.statistic);
  }
  return r;
}

}  // namespace eigcount

#include "opsampl/types.hpp"

#include <cmath>

namespace opsampl {

cplx unit_root(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("unit_root: zero denominator");
  if (den < 0) {
    den = -den;
    num = -num;
  }
  num = pos_mod(num, den);
  if (num == 0) return cplx{1.0, 0.0};
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(num) / static_cast<double>(den));
}

void SpreadingGrid::normalize() {
  params.validate();
  const std::int64_t n = params.N();
  for (const Entry& e : entries) {
    if (e.tau < 0 || e.tau >= n || e.mu < 0 || e.mu >= n)
      throw DomainError("SpreadingGrid: entry outside [0,N)^2");
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.tau != b.tau ? a.tau < b.tau : a.mu < b.mu;
  });
  std::vector<Entry> merged;
  merged.reserve(entries.size());
  for (const Entry& e : entries) {
    if (!merged.empty() && merged.back().tau == e.tau && merged.back().mu == e.mu)
      merged.back().value += e.value;
    else
      merged.push_back(e);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Entry& e) { return e.value == cplx{0.0, 0.0}; }),
               merged.end());
  entries = std::move(merged);
}

}  // namespace opsampl

#include "dickecool/types.hpp"

#include <cstdlib>
#include <mutex>

namespace dickecool {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  if (k > n - k) k = n - k;
  double result = 1.0;
  for (int i = 1; i <= k; ++i) {
    result *= static_cast<double>(n - k + i);
    result /= static_cast<double>(i);
  }
  return result;
}

std::int64_t symmetric_dimension(int n_qubits) {
  const std::int64_t n = n_qubits;
  return (n + 1) * (n + 2) * (n + 3) / 6;
}

std::int64_t max_dimension_cap() {
  static std::once_flag flag;
  static std::int64_t cap = 0;
  std::call_once(flag, [] {
    if (const char* env = std::getenv("DICKECOOL_MAX_DIM")) {
      cap = std::strtoll(env, nullptr, 10);
      if (cap < 0) cap = 0;
    }
  });
  return cap;
}

void check_dimension_cap(std::int64_t dim, const std::string& what) {
  const std::int64_t cap = max_dimension_cap();
  if (cap > 0 && dim > cap) {
    throw ParameterError(what + ": dimension " + std::to_string(dim) +
                         " exceeds DICKECOOL_MAX_DIM=" + std::to_string(cap));
  }
}

}  // namespace dickecool

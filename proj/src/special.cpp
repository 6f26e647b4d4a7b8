#include "qkerr/special.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace qkerr {

namespace {

constexpr int kMaxDegree = 10000;

// Cumulative ln(n!) table, grown on demand; all access under one mutex so
// concurrent growth cannot invalidate a reader's reference.
std::vector<double>& log_fact_table() {
  static std::vector<double> table{0.0, 0.0};  // 0!, 1!
  return table;
}
std::mutex table_mutex;

}  // namespace

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: n must be >= 0");
  {
    std::lock_guard<std::mutex> lock(table_mutex);
    auto& t = log_fact_table();
    while (static_cast<int>(t.size()) <= n) {
      int k = static_cast<int>(t.size());
      t.push_back(t.back() + std::log(static_cast<double>(k)));
    }
    return t[n];
  }
}

double binomial(long long n, long long k) {
  if (k < 0 || k > n || n < 0) return 0.0;
  if (k > n - k) k = n - k;
  if (n <= 60) {
    // multiplicative form stays in exact unsigned integers for n <= 60
    unsigned long long r = 1;
    for (long long i = 1; i <= k; ++i) {
      r = r * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned long long>(i);
    }
    return static_cast<double>(r);
  }
  double v = log_factorial(static_cast<int>(n)) - log_factorial(static_cast<int>(k)) -
             log_factorial(static_cast<int>(n - k));
  return std::round(std::exp(v));
}

namespace {

template <typename T>
T laguerre_recurrence(int m, int k, T z) {
  if (m == 0) return T(1);
  T lm1 = T(1);            // L_0^k
  T lm = T(1 + k) - z;     // L_1^k
  for (int i = 2; i <= m; ++i) {
    T next = ((T(2 * i - 1 + k) - z) * lm - T(i - 1 + k) * lm1) / T(i);
    lm1 = lm;
    lm = next;
  }
  return lm;
}

void check_degree(int m, int k) {
  if (m < 0 || k < 0) throw std::invalid_argument("assoc_laguerre: m, k must be >= 0");
  if (m > kMaxDegree) throw std::invalid_argument("assoc_laguerre: degree above supported range");
}

}  // namespace

cplx assoc_laguerre(int m, int k, cplx z) {
  check_degree(m, k);
  return laguerre_recurrence<cplx>(m, k, z);
}

double assoc_laguerre(int m, int k, double z) {
  check_degree(m, k);
  return laguerre_recurrence<double>(m, k, z);
}

cplx laguerre(int m, cplx z) { return assoc_laguerre(m, 0, z); }
double laguerre(int m, double z) { return assoc_laguerre(m, 0, z); }

}  // namespace qkerr

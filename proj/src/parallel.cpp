#include "abq/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

#include <omp.h>

namespace abq::parallel {
namespace {

std::atomic<int>& cap() {
  static std::atomic<int> value{std::max(1, omp_get_max_threads())};
  return value;
}

}  // namespace

int max_threads() { return cap().load(std::memory_order_relaxed); }

void set_max_threads(int n) { cap().store(std::max(1, n), std::memory_order_relaxed); }

void configure_from_env() {
  const char* env = std::getenv("ABQ_THREADS");
  if (env == nullptr || *env == '\0') return;
  try {
    set_max_threads(std::stoi(env));
  } catch (const std::exception&) {
    // ignore unparseable values and keep the OpenMP default
  }
}

}  // namespace abq::parallel

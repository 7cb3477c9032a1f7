#include "fftw_lock.hpp"

namespace abgauge::detail {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace abgauge::detail

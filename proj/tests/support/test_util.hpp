#pragma once

#include <functional>
#include <optional>

#include "abgauge/error.hpp"

namespace abgauge::testing {

inline std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace abgauge::testing

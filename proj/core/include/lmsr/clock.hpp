#pragma once

#include <chrono>
#include <cstddef>

#include "lmsr/config.hpp"

namespace lmsr {

/// Measures how much of a budget has been used, either on the steady clock
/// or in virtual work units.
class BudgetMeter {
 public:
  BudgetMeter(TimeSource source, double work_unit_s)
      : source_(source), unit_(work_unit_s), start_(std::chrono::steady_clock::now()) {}

  void charge(std::size_t units = 1) noexcept { units_ += units; }

  double elapsed() const noexcept {
    if (source_ == TimeSource::work) return static_cast<double>(units_) * unit_;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  TimeSource source_;
  double unit_;
  std::size_t units_ = 0;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace lmsr

#include "pcgym/ppcg/controller.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pcgym {

std::int64_t to_fixed(double value) {
  const double scaled = value * DifficultyController::kScale;
  const double rounded = std::round(scaled);
  if (!std::isfinite(scaled) || std::abs(scaled - rounded) > 1e-6) {
    throw std::invalid_argument("value is not a multiple of 1e-6");
  }
  return static_cast<std::int64_t>(rounded);
}

double from_fixed(std::int64_t value) {
  return static_cast<double>(value) / DifficultyController::kScale;
}

DifficultyController::DifficultyController(double alpha, double initial, bool keep_log)
    : alpha_(to_fixed(alpha)), value_(to_fixed(initial)), keep_log_(keep_log) {
  if (alpha_ <= 0 || alpha_ > kScale) throw std::invalid_argument("alpha must be in (0, 1]");
  if (value_ < 0 || value_ > kScale) throw std::invalid_argument("initial difficulty outside [0, 1]");
}

DifficultyController::Update DifficultyController::report(bool win) {
  std::lock_guard lock(mu_);
  Update u;
  u.seq = updates_++;
  u.win = win;
  u.before = value_;
  value_ = std::clamp<std::int64_t>(value_ + (win ? alpha_ : -alpha_), 0, kScale);
  u.after = value_;
  if (keep_log_) log_.push_back(u);
  return u;
}

double DifficultyController::difficulty() const { return from_fixed(difficulty_fixed()); }

std::int64_t DifficultyController::difficulty_fixed() const {
  std::lock_guard lock(mu_);
  return value_;
}

std::uint64_t DifficultyController::update_count() const {
  std::lock_guard lock(mu_);
  return updates_;
}

std::vector<DifficultyController::Update> DifficultyController::log() const {
  std::lock_guard lock(mu_);
  return log_;
}

double report_outcome(DifficultyController& controller, bool win) {
  return from_fixed(controller.report(win).after);
}

}  // namespace pcgym

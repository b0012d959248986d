#pragma once

#include <cstdint>
#include <mutex>
#include <vector>

namespace pcgym {

// Shared difficulty setting for progressive PCG. Stored in fixed point
// (micro-units) so that a fold over outcomes is exact: +alpha on a win,
// -alpha on a loss, clamped to [0, 1].
class DifficultyController {
 public:
  static constexpr std::int64_t kScale = 1'000'000;

  struct Update {
    std::uint64_t seq = 0;  // position in the serialization order
    bool win = false;
    std::int64_t before = 0;
    std::int64_t after = 0;
  };

  // alpha and initial must be representable in micro-units.
  explicit DifficultyController(double alpha = 0.01, double initial = 0.0, bool keep_log = false);

  DifficultyController(const DifficultyController&) = delete;
  DifficultyController& operator=(const DifficultyController&) = delete;

  // Atomic read-modify-write.
  Update report(bool win);

  double difficulty() const;
  std::int64_t difficulty_fixed() const;
  double alpha() const { return static_cast<double>(alpha_) / kScale; }
  std::int64_t alpha_fixed() const { return alpha_; }
  std::uint64_t update_count() const;
  // Every applied update in application order (only when keep_log is set).
  std::vector<Update> log() const;

 private:
  mutable std::mutex mu_;
  std::int64_t alpha_;
  std::int64_t value_;
  std::uint64_t updates_ = 0;
  bool keep_log_;
  std::vector<Update> log_;
};

// Applies one outcome and returns the new difficulty.
double report_outcome(DifficultyController& controller, bool win);

// Exact conversion helpers.
std::int64_t to_fixed(double value);
double from_fixed(std::int64_t value);

}  // namespace pcgym

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "pcgym/core/tiles.hpp"

namespace pcgym {

enum class Action : std::uint8_t { Nil, Up, Down, Left, Right, Use };

inline constexpr std::size_t kActionCount = 6;
inline constexpr std::array<Action, kActionCount> kAllActions{
    Action::Nil, Action::Up, Action::Down, Action::Left, Action::Right, Action::Use};

std::string_view action_name(Action a);
std::optional<Action> parse_action(std::string_view name);
// Up/Down/Left/Right map to their direction; Nil and Use map to None.
Direction action_direction(Action a);

enum class Termination : std::uint8_t { Win, Loss, Timeout };

std::string_view termination_name(Termination t);
std::optional<Termination> parse_termination(std::string_view name);

struct EpisodeOutcome {
  bool win = false;
  double score = 0.0;
  int steps = 0;
  Termination terminated_by = Termination::Loss;
};

}  // namespace pcgym

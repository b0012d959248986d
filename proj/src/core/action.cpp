#include "pcgym/core/action.hpp"

namespace pcgym {

std::string_view action_name(Action a) {
  switch (a) {
    case Action::Nil: return "nil";
    case Action::Up: return "up";
    case Action::Down: return "down";
    case Action::Left: return "left";
    case Action::Right: return "right";
    case Action::Use: return "use";
  }
  return "?";
}

std::optional<Action> parse_action(std::string_view name) {
  for (Action a : kAllActions) {
    if (action_name(a) == name) return a;
  }
  return std::nullopt;
}

Direction action_direction(Action a) {
  switch (a) {
    case Action::Up: return Direction::Up;
    case Action::Down: return Direction::Down;
    case Action::Left: return Direction::Left;
    case Action::Right: return Direction::Right;
    default: return Direction::None;
  }
}

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::Win: return "win";
    case Termination::Loss: return "loss";
    case Termination::Timeout: return "timeout";
  }
  return "?";
}

std::optional<Termination> parse_termination(std::string_view name) {
  for (Termination t : {Termination::Win, Termination::Loss, Termination::Timeout}) {
    if (termination_name(t) == name) return t;
  }
  return std::nullopt;
}

}  // namespace pcgym

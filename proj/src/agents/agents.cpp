#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <vector>

#include "pcgym/agents/agent.hpp"

namespace pcgym {

Action random_act(Rng& rng) { return kAllActions[rng.below(kActionCount)]; }

std::optional<EpisodeOutcome> AlwaysWinAgent::scripted_outcome(const Level&) {
  return EpisodeOutcome{true, 1.0, 1, Termination::Win};
}

std::optional<EpisodeOutcome> AlwaysLoseAgent::scripted_outcome(const Level&) {
  return EpisodeOutcome{false, 0.0, 1, Termination::Loss};
}

std::optional<EpisodeOutcome> BernoulliStubAgent::scripted_outcome(const Level& level) {
  const double d = level.difficulty().value_or(0.0);
  const bool win = rng_.bernoulli(1.0 - d);
  return EpisodeOutcome{win, win ? 1.0 : 0.0, 1, win ? Termination::Win : Termination::Loss};
}

QValues QTable::get(std::uint64_t state) const {
  const auto it = values.find(state);
  return it == values.end() ? QValues{} : it->second;
}

double QTable::max_value(std::uint64_t state) const {
  const QValues q = get(state);
  return *std::max_element(q.begin(), q.end());
}

void q_update(QTable& table, std::uint64_t state, Action action, double reward,
              std::uint64_t next_state, bool terminal) {
  const double bootstrap = terminal ? 0.0 : table.discount * table.max_value(next_state);
  double& q = table.values[state][static_cast<std::size_t>(action)];
  q += table.learning_rate * (reward + bootstrap - q);
}

QLearningAgent::QLearningAgent(Game game, QLearningConfig config, std::uint64_t seed)
    : game_(game), config_(config), rng_(seed) {
  table_.learning_rate = config.learning_rate;
  table_.discount = config.discount;
  table_.epsilon = config.epsilon_start;
}

Action QLearningAgent::act(const Observation& obs) {
  width_ = obs.width;
  height_ = obs.height;
  if (!greedy_ && rng_.bernoulli(table_.epsilon)) return random_act(rng_);
  const QValues q = table_.get(hash_observation(obs));
  const double best = *std::max_element(q.begin(), q.end());
  std::array<Action, kActionCount> ties{};
  std::size_t n = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] == best) ties[n++] = kAllActions[i];
  }
  return ties[rng_.below(n)];
}

void QLearningAgent::observe(const Transition& t) {
  if (greedy_) return;
  if (!t.observation || !t.next_observation) throw AgentFailure("transition without observations");
  q_update(table_, hash_observation(*t.observation), t.action, t.reward,
           hash_observation(*t.next_observation), t.terminal);
}

void QLearningAgent::end_episode(const EpisodeOutcome&) {
  if (greedy_) return;
  ++episodes_;
  update_epsilon();
}

void QLearningAgent::update_epsilon() {
  if (config_.decay_episodes <= 0) return;
  const double t = std::min(1.0, static_cast<double>(episodes_) / static_cast<double>(config_.decay_episodes));
  table_.epsilon = config_.epsilon_start + (config_.epsilon_end - config_.epsilon_start) * t;
}

void QLearningAgent::save(const std::filesystem::path& path) const {
  save_qtable(path, table_, game_, width_, height_);
}

QLearningAgent QLearningAgent::load(const std::filesystem::path& path, std::uint64_t seed) {
  QSnapshot snap = load_qtable(path);
  QLearningConfig cfg;
  cfg.learning_rate = snap.table.learning_rate;
  cfg.discount = snap.table.discount;
  cfg.epsilon_start = cfg.epsilon_end = snap.table.epsilon;
  QLearningAgent agent(snap.game, cfg, seed);
  agent.table_ = std::move(snap.table);
  agent.width_ = snap.width;
  agent.height_ = snap.height;
  return agent;
}

namespace {

constexpr char kMagic[4] = {'P', 'C', 'G', 'Q'};
constexpr std::uint32_t kVersion = 1;

void put_u64(std::ostream& out, std::uint64_t v, int bytes = 8) {
  for (int i = 0; i < bytes; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint64_t get_u64(std::istream& in, int bytes = 8) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) throw std::runtime_error("truncated Q-table snapshot");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

void save_qtable(const std::filesystem::path& path, const QTable& table, Game game, int width,
                 int height) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  std::vector<std::uint64_t> keys;
  keys.reserve(table.values.size());
  for (const auto& [k, v] : table.values) keys.push_back(k);
  std::sort(keys.begin(), keys.end());

  out.write(kMagic, 4);
  put_u64(out, kVersion, 4);
  put_u64(out, static_cast<std::uint64_t>(game), 1);
  put_u64(out, static_cast<std::uint32_t>(width), 4);
  put_u64(out, static_cast<std::uint32_t>(height), 4);
  put_u64(out, keys.size());
  put_f64(out, table.learning_rate);
  put_f64(out, table.discount);
  put_f64(out, table.epsilon);
  for (std::uint64_t k : keys) {
    put_u64(out, k);
    for (double q : table.values.at(k)) put_f64(out, q);
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

QSnapshot load_qtable(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open Q-table snapshot " + path.string());
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || !std::equal(magic, magic + 4, kMagic)) {
    throw std::runtime_error(path.string() + " is not a Q-table snapshot");
  }
  if (get_u64(in, 4) != kVersion) throw std::runtime_error("unsupported Q-table snapshot version");
  QSnapshot snap;
  const auto game = get_u64(in, 1);
  if (game > static_cast<std::uint64_t>(Game::Boulderdash)) throw std::runtime_error("bad game in snapshot");
  snap.game = static_cast<Game>(game);
  snap.width = static_cast<std::int32_t>(get_u64(in, 4));
  snap.height = static_cast<std::int32_t>(get_u64(in, 4));
  const std::uint64_t entries = get_u64(in);
  snap.table.learning_rate = get_f64(in);
  snap.table.discount = get_f64(in);
  snap.table.epsilon = get_f64(in);
  snap.table.values.reserve(entries);
  for (std::uint64_t i = 0; i < entries; ++i) {
    const std::uint64_t k = get_u64(in);
    QValues q{};
    for (double& v : q) {
      v = get_f64(in);
      if (!std::isfinite(v)) throw std::runtime_error("non-finite value in Q-table snapshot");
    }
    snap.table.values.emplace(k, q);
  }
  return snap;
}

}  // namespace pcgym

#include "pcgym/ppcg/training.hpp"

#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"

namespace pcgym {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Holds the lock only when the agent cannot take concurrent calls.
class AgentGuard {
 public:
  AgentGuard(std::mutex* mu) : mu_(mu) {
    if (mu_) mu_->lock();
  }
  ~AgentGuard() {
    if (mu_) mu_->unlock();
  }
  AgentGuard(const AgentGuard&) = delete;
  AgentGuard& operator=(const AgentGuard&) = delete;

 private:
  std::mutex* mu_;
};

EpisodeOutcome play(Agent& agent, const Simulator& sim, const Level& level, std::mutex* agent_mu) {
  {
    AgentGuard guard(agent_mu);
    if (auto scripted = agent.scripted_outcome(level)) {
      agent.end_episode(*scripted);
      return *scripted;
    }
  }
  GameState state = sim.reset(level);
  Observation obs = sim.observe(state);
  while (!state.terminal) {
    Action action;
    {
      AgentGuard guard(agent_mu);
      action = agent.act(obs);
    }
    StepResult r = sim.step(state, action);
    {
      AgentGuard guard(agent_mu);
      agent.observe(Transition{&obs, action, r.reward, &r.observation, r.terminal});
    }
    obs = std::move(r.observation);
  }
  const EpisodeOutcome outcome = state.outcome();
  AgentGuard guard(agent_mu);
  agent.end_episode(outcome);
  return outcome;
}

}  // namespace

std::string mode_name(const TrainingMode& mode) {
  return std::visit(overloaded{[](const PPCGMode&) { return std::string("ppcg"); },
                               [](const FixedPCGMode& m) { return "pcg-" + format_difficulty(m.difficulty); },
                               [](const FixedLevelMode&) { return std::string("level"); },
                               [](const LevelSetMode&) { return std::string("level-set"); }},
                    mode);
}

double RunLog::final_difficulty() const {
  return episodes.empty() ? initial_difficulty : episodes.back().difficulty_after;
}

std::vector<double> RunLog::smoothed_scores(std::size_t window) const {
  std::vector<double> out;
  out.reserve(episodes.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < episodes.size(); ++i) {
    sum += episodes[i].outcome.score;
    if (i >= window) sum -= episodes[i - window].outcome.score;
    out.push_back(sum / static_cast<double>(std::min(i + 1, window)));
  }
  return out;
}

std::vector<double> RunLog::difficulty_trajectory() const {
  std::vector<double> out;
  out.reserve(episodes.size());
  for (const auto& e : episodes) out.push_back(e.difficulty_after);
  return out;
}

Level next_level(const TrainingConfig& config, const DifficultyController& controller, Rng& rng) {
  return std::visit(
      overloaded{[&](const PPCGMode&) {
                   return generate({config.game, controller.difficulty(), rng.next()}, config.generator);
                 },
                 [&](const FixedPCGMode& m) {
                   return generate({config.game, m.difficulty, rng.next()}, config.generator);
                 },
                 [](const FixedLevelMode& m) { return m.level; },
                 [&](const LevelSetMode& m) {
                   if (m.levels.empty()) throw std::invalid_argument("empty level set");
                   return m.levels[rng.below(m.levels.size())];
                 }},
      config.mode);
}

EpisodeOutcome play_episode(Agent& agent, const Simulator& sim, const Level& level) {
  return play(agent, sim, level, nullptr);
}

RunLog run_training(Agent& agent, const TrainingConfig& config) {
  if (config.workers < 1) throw std::invalid_argument("workers must be positive");
  if (config.episode_budget < 0) throw std::invalid_argument("episode budget must be nonnegative");

  const bool progressive = std::holds_alternative<PPCGMode>(config.mode);
  DifficultyController controller(config.alpha, config.initial_difficulty);
  const Simulator sim(config.game, config.game_config);

  RunLog log;
  log.game = config.game;
  log.mode = mode_name(config.mode);
  log.seed = config.seed;
  log.workers = config.workers;
  log.alpha = config.alpha;
  log.initial_difficulty = config.initial_difficulty;
  log.episodes.reserve(static_cast<std::size_t>(config.episode_budget));

  std::atomic<long> next_episode{0};
  std::atomic<bool> stop{false};
  std::mutex log_mu;
  std::mutex agent_mu;
  std::mutex error_mu;
  std::exception_ptr error;
  std::mutex* agent_lock = (config.workers > 1 && !agent.thread_safe()) ? &agent_mu : nullptr;

  auto worker = [&](int worker_id) {
    Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(worker_id)));
    try {
      while (!stop.load()) {
        const long episode = next_episode.fetch_add(1);
        if (episode >= config.episode_budget) break;
        const Level level = next_level(config, controller, rng);
        EpisodeRecord rec;
        rec.episode_id = episode;
        rec.worker_id = worker_id;
        rec.level_seed = level.seed();
        rec.difficulty_at_start = level.difficulty().value_or(0.0);
        try {
          rec.outcome = play(agent, sim, level, agent_lock);
        } catch (const std::exception& e) {
          throw AgentFailure("episode " + std::to_string(episode) + " (worker " +
                             std::to_string(worker_id) + "): " + e.what());
        }

        // The controller update and the log append share one critical
        // section, so log order is the serialization order of updates.
        std::lock_guard lock(log_mu);
        rec.seq = log.episodes.size();
        if (progressive) {
          const auto u = controller.report(rec.outcome.win);
          rec.difficulty_at_start = from_fixed(u.before);
          rec.difficulty_after = from_fixed(u.after);
        } else {
          rec.difficulty_after = rec.difficulty_at_start;
        }
        log.episodes.push_back(rec);
        if (config.on_episode) config.on_episode(rec);
      }
    } catch (...) {
      std::lock_guard lock(error_mu);
      if (!error) error = std::current_exception();
      stop.store(true);
    }
  };

  const int threads = static_cast<int>(std::min<long>(config.workers, std::max(1L, config.episode_budget)));
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return log;
}

RunLog run_training(const AgentFactory& factory, const TrainingConfig& config) {
  std::unique_ptr<Agent> agent = factory();
  if (!agent) throw AgentFailure("agent factory returned no agent");
  return run_training(*agent, config);
}

void write_run_jsonl(const RunLog& log, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  nlohmann::ordered_json header = {{"type", "run"},
                                   {"game", std::string(game_name(log.game))},
                                   {"mode", log.mode},
                                   {"seed", log.seed},
                                   {"workers", log.workers},
                                   {"alpha", log.alpha},
                                   {"initial_difficulty", log.initial_difficulty}};
  out << header.dump() << '\n';
  for (const auto& e : log.episodes) {
    nlohmann::ordered_json j = {{"type", "episode"},
                                {"seq", e.seq},
                                {"episode_id", e.episode_id},
                                {"worker_id", e.worker_id},
                                {"level_seed", nullptr},
                                {"difficulty_at_start", e.difficulty_at_start},
                                {"difficulty_after", e.difficulty_after},
                                {"win", e.outcome.win},
                                {"outcome", std::string(termination_name(e.outcome.terminated_by))},
                                {"score", e.outcome.score},
                                {"steps", e.outcome.steps}};
    if (e.level_seed) j["level_seed"] = *e.level_seed;
    out << j.dump() << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void write_run_csv(const RunLog& log, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "episode,difficulty,score,outcome\n";
  for (const auto& e : log.episodes) {
    out << e.seq << ',' << format_difficulty(e.difficulty_at_start) << ',' << format_difficulty(e.outcome.score)
        << ',' << (e.outcome.win ? "win" : "loss") << '\n';
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

RunLog read_run_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  RunLog log;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    if (j.at("type") == "run") {
      const auto game = parse_game_name(j.at("game").get<std::string>());
      if (!game) throw std::runtime_error("unknown game in run log");
      log.game = *game;
      log.mode = j.at("mode").get<std::string>();
      log.seed = j.at("seed").get<std::uint64_t>();
      log.workers = j.at("workers").get<int>();
      log.alpha = j.at("alpha").get<double>();
      log.initial_difficulty = j.at("initial_difficulty").get<double>();
      continue;
    }
    EpisodeRecord e;
    e.seq = j.at("seq").get<std::uint64_t>();
    e.episode_id = j.at("episode_id").get<long>();
    e.worker_id = j.at("worker_id").get<int>();
    if (!j.at("level_seed").is_null()) e.level_seed = j.at("level_seed").get<std::uint64_t>();
    e.difficulty_at_start = j.at("difficulty_at_start").get<double>();
    e.difficulty_after = j.at("difficulty_after").get<double>();
    e.outcome.win = j.at("win").get<bool>();
    const auto how = parse_termination(j.at("outcome").get<std::string>());
    if (!how) throw std::runtime_error("unknown outcome in run log");
    e.outcome.terminated_by = *how;
    e.outcome.score = j.at("score").get<double>();
    e.outcome.steps = j.at("steps").get<int>();
    log.episodes.push_back(e);
  }
  return log;
}

}  // namespace pcgym

#include "pcgym/cli/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pcgym/agents/agent.hpp"
#include "pcgym/analysis/analysis.hpp"
#include "pcgym/ppcg/evaluate.hpp"
#include "pcgym/ppcg/training.hpp"

namespace pcgym {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kGameNames = {"zelda", "frogs", "solarfox", "boulderdash"};

Game game_from(const std::string& name) {
  const auto g = parse_game_name(name);
  if (!g) throw UsageError("unknown game '" + name + "'");
  return *g;
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << (v == 0.0 ? 0.0 : v);
  return s.str();
}

// --seed is optional everywhere; without it a fresh seed is drawn and logged
// so the run can be repeated.
struct SeedOption {
  std::uint64_t value = 0;
  CLI::Option* opt = nullptr;

  void add(CLI::App* app) { opt = app->add_option("--seed", value, "RNG seed (random and logged when omitted)"); }
  std::uint64_t resolve(std::ostream& err) {
    if (opt->count() == 0) {
      std::random_device rd;
      value = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
      err << "seed: " << value << '\n';
    }
    return value;
  }
};

void apply_env_prefix(CLI::App& app) {
  for (CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || !opt->get_envname().empty()) continue;
    std::string env = "PCGYM_";
    for (char c : name) env += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    opt->envname(env);
  }
  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) apply_env_prefix(*sub);
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::unique_ptr<Agent> make_eval_agent(const std::string& spec, Game game, std::uint64_t seed) {
  if (spec == "random") return std::make_unique<RandomAgent>(seed);
  if (spec.rfind("qtable:", 0) == 0) {
    const std::filesystem::path path = spec.substr(7);
    if (!std::filesystem::exists(path)) throw std::runtime_error("snapshot not found: " + path.string());
    auto agent = std::make_unique<QLearningAgent>(QLearningAgent::load(path, seed));
    if (agent->game() != game) {
      throw std::runtime_error("snapshot " + path.string() + " was trained on " +
                               std::string(game_name(agent->game())));
    }
    agent->set_greedy(true);
    return agent;
  }
  throw UsageError("unknown agent '" + spec + "' (expected random or qtable:<snapshot>)");
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
  std::string game;
  double difficulty = 1.0;
  int count = 1;
  SeedOption seed;
  std::string out = "levels_out";
};

int run_gen(GenArgs& a, std::ostream& out, std::ostream& err) {
  const Game game = game_from(a.game);
  const std::uint64_t seed = a.seed.resolve(err);
  const std::filesystem::path dir = a.out;
  std::filesystem::create_directories(dir);
  const int digits = std::max<int>(4, static_cast<int>(std::to_string(a.count - 1).size()));

  auto manifest = open_out(dir / "manifest.csv");
  manifest << "filename,game,difficulty,seed,hazards,collectibles,width,height\n";
  for (int i = 0; i < a.count; ++i) {
    const std::uint64_t level_seed = mix_seed(seed, static_cast<std::uint64_t>(i));
    const Level level = generate({game, a.difficulty, level_seed});
    std::ostringstream name;
    name << game_name(game) << '_' << std::setw(digits) << std::setfill('0') << i << ".txt";
    save_level_file(dir / name.str(), level);
    const LevelStats st = level_stats(level);
    manifest << name.str() << ',' << game_name(game) << ',' << format_difficulty(a.difficulty) << ','
             << level_seed << ',' << st.hazards << ',' << st.collectibles << ',' << st.width << ',' << st.height
             << '\n';
  }
  out << "wrote " << a.count << " levels to " << dir.string() << '\n';
  return kExitOk;
}

// ---- render ----------------------------------------------------------------

struct RenderArgs {
  std::string level;
  std::string game;
  std::string svg;
  int tile_size = 24;
};

int run_render(RenderArgs& a, std::ostream& out, std::ostream&) {
  std::optional<Game> game;
  if (!a.game.empty()) game = game_from(a.game);
  const Level level = load_level_file(a.level, game);
  const std::string text = serialize_level(level.with_provenance(std::nullopt, std::nullopt));
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!a.svg.empty()) {
    auto svg = open_out(a.svg);
    svg << render_svg(level, a.tile_size);
  }
  return kExitOk;
}

// ---- rollout ---------------------------------------------------------------

struct RolloutArgs {
  std::string game;
  std::string level;
  double difficulty = 1.0;
  std::string agent = "random";
  int episodes = 30;
  SeedOption seed;
  std::string trace;
  int max_steps = 2000;
};

int run_rollout(RolloutArgs& a, std::ostream& out, std::ostream& err) {
  const Game game = game_from(a.game);
  const std::uint64_t seed = a.seed.resolve(err);
  std::optional<Level> fixed_level;
  if (!a.level.empty()) fixed_level = load_level_file(a.level, game);
  auto agent = make_eval_agent(a.agent, game, mix_seed(seed, 0xA6E47));
  GameConfig cfg;
  cfg.max_episode_steps = a.max_steps;
  const Simulator sim(game, cfg);

  std::ofstream trace;
  if (!a.trace.empty()) trace = open_out(a.trace);
  double total = 0.0;
  int wins = 0;
  for (int ep = 0; ep < a.episodes; ++ep) {
    const Level level =
        fixed_level ? *fixed_level : generate({game, a.difficulty, mix_seed(seed, static_cast<std::uint64_t>(ep))});
    GameState state = sim.reset(level);
    Observation obs = sim.observe(state);
    while (!state.terminal) {
      const Action action = agent->act(obs);
      StepResult r = sim.step(state, action);
      agent->observe(Transition{&obs, action, r.reward, &r.observation, r.terminal});
      if (trace.is_open()) {
        nlohmann::ordered_json j = {{"episode", ep},          {"tick", state.tick},
                                    {"action", std::string(action_name(action))},
                                    {"reward", r.reward},     {"terminal", r.terminal},
                                    {"win", r.win}};
        trace << j.dump() << '\n';
      }
      obs = std::move(r.observation);
    }
    const EpisodeOutcome o = state.outcome();
    agent->end_episode(o);
    total += o.score;
    wins += o.win ? 1 : 0;
  }
  out << "episodes " << a.episodes << '\n';
  out << "mean_score " << fixed(total / a.episodes, 4) << '\n';
  out << "win_rate " << fixed(static_cast<double>(wins) / a.episodes, 4) << '\n';
  return kExitOk;
}

// ---- train -----------------------------------------------------------------

struct TrainArgs {
  std::string game;
  std::string mode = "ppcg";
  double difficulty = 1.0;
  double alpha = 0.01;
  int workers = 12;
  long episodes = 1000;
  SeedOption seed;
  std::string out = "run";
  std::string agent = "qlearning";
  std::vector<std::string> levels;
  std::string reference_dir = "levels/reference";
  int max_steps = 2000;
  double lr = 0.1;
  double discount = 0.99;
  long epsilon_decay = -1;
};

std::unique_ptr<Agent> make_train_agent(const TrainArgs& a, Game game, std::uint64_t seed) {
  if (a.agent == "qlearning") {
    QLearningConfig qc;
    qc.learning_rate = a.lr;
    qc.discount = a.discount;
    qc.decay_episodes = a.epsilon_decay >= 0 ? a.epsilon_decay : a.episodes / 2;
    return std::make_unique<QLearningAgent>(game, qc, seed);
  }
  if (a.agent == "random") return std::make_unique<RandomAgent>(seed);
  if (a.agent == "always-win-stub") return std::make_unique<AlwaysWinAgent>();
  if (a.agent == "always-lose-stub") return std::make_unique<AlwaysLoseAgent>();
  if (a.agent == "bernoulli-stub") return std::make_unique<BernoulliStubAgent>(seed);
  throw UsageError("unknown agent '" + a.agent + "'");
}

int run_train(TrainArgs& a, std::ostream& out, std::ostream& err) {
  TrainingConfig cfg;
  cfg.game = game_from(a.game);
  cfg.seed = a.seed.resolve(err);
  cfg.workers = a.workers;
  cfg.episode_budget = a.episodes;
  cfg.alpha = a.alpha;
  cfg.game_config.max_episode_steps = a.max_steps;

  auto level_list = [&](int default_count) {
    std::vector<Level> levels;
    if (a.levels.empty()) {
      auto refs = load_reference_levels(cfg.game, a.reference_dir);
      refs.erase(refs.begin() + default_count, refs.end());
      return refs;
    }
    for (const auto& p : a.levels) levels.push_back(load_level_file(p, cfg.game));
    return levels;
  };
  if (a.mode == "ppcg") {
    cfg.mode = PPCGMode{};
  } else if (a.mode == "pcg") {
    cfg.mode = FixedPCGMode{a.difficulty};
  } else if (a.mode == "level") {
    auto levels = level_list(1);
    if (levels.size() != 1) throw UsageError("--mode level takes exactly one --level");
    cfg.mode = FixedLevelMode{levels.front()};
  } else {
    cfg.mode = LevelSetMode{level_list(4)};
  }

  auto agent = make_train_agent(a, cfg.game, mix_seed(cfg.seed, 0xA6E47));
  const RunLog log = run_training(*agent, cfg);

  const std::filesystem::path dir = a.out;
  std::filesystem::create_directories(dir);
  write_run_jsonl(log, dir / "run.jsonl");
  write_run_csv(log, dir / "summary.csv");
  if (auto* q = dynamic_cast<QLearningAgent*>(agent.get())) q->save(dir / "qtable.bin");

  int wins = 0;
  double score = 0.0;
  for (const auto& e : log.episodes) {
    wins += e.outcome.win ? 1 : 0;
    score += e.outcome.score;
  }
  const double n = std::max<double>(1.0, static_cast<double>(log.episodes.size()));
  out << "mode " << log.mode << '\n';
  out << "episodes " << log.episodes.size() << '\n';
  out << "win_rate " << fixed(wins / n, 4) << '\n';
  out << "mean_score " << fixed(score / n, 4) << '\n';
  out << "final difficulty " << fixed(log.final_difficulty(), 2) << '\n';
  return kExitOk;
}

// ---- evaluate --------------------------------------------------------------

struct EvaluateArgs {
  std::string game;
  std::vector<std::string> agents = {"random"};
  SeedOption seed;
  int episodes = 30;
  std::string reference_dir = "levels/reference";
  std::string out;
  int max_steps = 2000;
};

int run_evaluate(EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  const Game game = game_from(a.game);
  const std::uint64_t seed = a.seed.resolve(err);
  GameConfig cfg;
  cfg.max_episode_steps = a.max_steps;
  const auto sets = standard_eval_sets(game, seed, a.reference_dir);
  std::vector<EvalRow> rows = {max_row(sets, cfg, a.episodes)};
  for (std::size_t i = 0; i < a.agents.size(); ++i) {
    std::string label = a.agents[i];
    std::string spec = a.agents[i];
    if (const auto eq = spec.find('='); eq != std::string::npos) {
      label = spec.substr(0, eq);
      spec = spec.substr(eq + 1);
    } else if (spec == "random") {
      label = "Random";
    } else if (spec.rfind("qtable:", 0) == 0) {
      label = std::filesystem::path(spec.substr(7)).stem().string();
    }
    auto agent = make_eval_agent(spec, game, mix_seed(seed, 0xE7A1 + i));
    rows.push_back(evaluate(*agent, label, sets, cfg, a.episodes));
  }
  out << game_name(game) << '\n' << format_eval_table(sets, rows);
  if (!a.out.empty()) {
    auto csv = open_out(a.out);
    csv << format_eval_csv(rows);
  }
  return kExitOk;
}

// ---- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string game;
  std::string input;
  int count = 1000;
  double difficulty = 1.0;
  SeedOption seed;
  std::string reference_dir = "levels/reference";
  bool no_reference = false;
  double eps = 0.5;
  int min_samples = 10;
  std::string out = "analysis";
};

int run_analyze(AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  const Game game = game_from(a.game);
  std::vector<Level> levels;
  std::vector<RowMeta> meta;
  auto add = [&](Level level, std::string id, std::string source) {
    RowMeta m{std::move(id), std::move(source), level.difficulty(), level.seed(), level_variant(level)};
    levels.push_back(std::move(level));
    meta.push_back(std::move(m));
  };

  if (!a.input.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(a.input)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw std::runtime_error("no level files in " + a.input);
    for (const auto& f : files) add(load_level_file(f, game), f.stem().string(), "generated");
  } else {
    const std::uint64_t seed = a.seed.resolve(err);
    for (int i = 0; i < a.count; ++i) {
      const std::uint64_t level_seed = mix_seed(seed, static_cast<std::uint64_t>(i));
      add(generate({game, a.difficulty, level_seed}), "gen" + std::to_string(i), "generated");
    }
  }
  if (!a.no_reference) {
    const auto refs = load_reference_levels(game, a.reference_dir);
    for (std::size_t i = 0; i < refs.size(); ++i) add(refs[i], "lv" + std::to_string(i), "human");
  }

  const AnalysisReport report = analyze(levels, std::move(meta), {a.eps, a.min_samples});
  const std::filesystem::path dir = a.out;
  std::filesystem::create_directories(dir);
  write_projection_csv(report, dir / "projection.csv");
  write_clusters_json(report, dir / "clusters.json");
  write_scatter_svg(report, dir / "scatter.svg");

  out << "levels " << report.meta.size() << '\n';
  out << "clusters " << report.clusters.cluster_count << '\n';
  out << "noise " << report.clusters.noise_count << '\n';
  for (const auto& r : report.references) {
    out << r.id << " label=" << r.label << " outlier=" << (r.outlier ? "yes" : "no")
        << " nearest_cluster=" << r.nearest_cluster << " distance="
        << (r.nearest_distance ? fixed(*r.nearest_distance, 4) : std::string("none")) << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Procedural level generation, progressive PCG training and level-distribution analysis"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate levels and a manifest");
  gen_cmd->add_option("--game", gen.game, "Game")->required()->check(CLI::IsMember(kGameNames));
  gen_cmd->add_option("--difficulty", gen.difficulty, "Difficulty in [0, 1]")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--count", gen.count, "Number of levels")->capture_default_str()->check(CLI::PositiveNumber);
  gen.seed.add(gen_cmd);
  gen_cmd->add_option("--out", gen.out, "Output directory")->capture_default_str();

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "Print a level as ASCII and optionally write an SVG");
  render_cmd->add_option("--level", render.level, "Level file")->required();
  render_cmd->add_option("--game", render.game, "Game (when the file has no game header)")->check(CLI::IsMember(kGameNames));
  render_cmd->add_option("--svg", render.svg, "SVG output path");
  render_cmd->add_option("--tile-size", render.tile_size, "SVG tile size in pixels")->capture_default_str()->check(CLI::PositiveNumber);

  RolloutArgs rollout;
  auto* rollout_cmd = app.add_subcommand("rollout", "Play episodes with an agent and report score and win rate");
  rollout_cmd->add_option("--game", rollout.game, "Game")->required()->check(CLI::IsMember(kGameNames));
  auto* rollout_level = rollout_cmd->add_option("--level", rollout.level, "Play this level every episode");
  rollout_cmd->add_option("--difficulty", rollout.difficulty, "Generate a fresh level per episode at this difficulty")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0))
      ->excludes(rollout_level);
  rollout_cmd->add_option("--agent", rollout.agent, "random or qtable:<snapshot>")->capture_default_str();
  rollout_cmd->add_option("--episodes", rollout.episodes, "Episodes")->capture_default_str()->check(CLI::PositiveNumber);
  rollout.seed.add(rollout_cmd);
  rollout_cmd->add_option("--trace", rollout.trace, "JSONL step trace output");
  rollout_cmd->add_option("--max-steps", rollout.max_steps, "Episode step limit")->capture_default_str()->check(CLI::PositiveNumber);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train an agent under a training regimen");
  train_cmd->add_option("--game", train.game, "Game")->required()->check(CLI::IsMember(kGameNames));
  train_cmd->add_option("--mode", train.mode, "ppcg, pcg, level or level-set")
      ->capture_default_str()
      ->check(CLI::IsMember({"ppcg", "pcg", "level", "level-set"}));
  train_cmd->add_option("--difficulty", train.difficulty, "Difficulty for --mode pcg")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  train_cmd->add_option("--alpha", train.alpha, "PPCG step size")->capture_default_str()->check(CLI::Range(1e-6, 1.0));
  train_cmd->add_option("--workers", train.workers, "Concurrent workers")->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--episodes", train.episodes, "Episode budget")->capture_default_str()->check(CLI::PositiveNumber);
  train.seed.add(train_cmd);
  train_cmd->add_option("--out", train.out, "Output directory")->capture_default_str();
  train_cmd->add_option("--agent", train.agent, "qlearning, random, always-win-stub, always-lose-stub, bernoulli-stub")
      ->capture_default_str()
      ->check(CLI::IsMember({"qlearning", "random", "always-win-stub", "always-lose-stub", "bernoulli-stub"}));
  train_cmd->add_option("--level", train.levels, "Level files for --mode level / level-set");
  train_cmd->add_option("--reference-dir", train.reference_dir, "Reference level directory")->capture_default_str();
  train_cmd->add_option("--max-steps", train.max_steps, "Episode step limit")->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--lr", train.lr, "Q-learning rate")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  train_cmd->add_option("--discount", train.discount, "Q-learning discount")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  train_cmd->add_option("--epsilon-decay", train.epsilon_decay, "Episodes of linear epsilon decay (default: half the budget)")
      ->check(CLI::NonNegativeNumber);

  EvaluateArgs evaluate_args;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Score agents on the PCG 0.5 / PCG 1 / reference test sets");
  evaluate_cmd->add_option("--game", evaluate_args.game, "Game")->required()->check(CLI::IsMember(kGameNames));
  evaluate_cmd->add_option("--agent", evaluate_args.agents, "[name=]random or [name=]qtable:<snapshot>, repeatable")
      ->capture_default_str();
  evaluate_args.seed.add(evaluate_cmd);
  evaluate_cmd->add_option("--episodes", evaluate_args.episodes, "Episodes per test set")->capture_default_str()->check(CLI::PositiveNumber);
  evaluate_cmd->add_option("--reference-dir", evaluate_args.reference_dir, "Reference level directory")->capture_default_str();
  evaluate_cmd->add_option("--out", evaluate_args.out, "CSV output path");
  evaluate_cmd->add_option("--max-steps", evaluate_args.max_steps, "Episode step limit")->capture_default_str()->check(CLI::PositiveNumber);

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "PCA + DBSCAN over a level corpus");
  analyze_cmd->add_option("--game", analyze_args.game, "Game")->required()->check(CLI::IsMember(kGameNames));
  auto* input = analyze_cmd->add_option("--input", analyze_args.input, "Directory of level files")->check(CLI::ExistingDirectory);
  analyze_cmd->add_option("--count", analyze_args.count, "Levels to generate when no --input is given")
      ->capture_default_str()
      ->check(CLI::PositiveNumber)
      ->excludes(input);
  analyze_cmd->add_option("--difficulty", analyze_args.difficulty, "Difficulty of generated levels")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0))
      ->excludes(input);
  analyze_args.seed.add(analyze_cmd);
  analyze_cmd->add_option("--reference-dir", analyze_args.reference_dir, "Reference level directory")->capture_default_str();
  analyze_cmd->add_flag("--no-reference", analyze_args.no_reference, "Leave the reference levels out");
  analyze_cmd->add_option("--eps", analyze_args.eps, "DBSCAN radius")->capture_default_str()->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--min-samples", analyze_args.min_samples, "DBSCAN minimum samples")->capture_default_str()->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--out", analyze_args.out, "Output directory")->capture_default_str();

  apply_env_prefix(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen, out, err);
    if (render_cmd->parsed()) return run_render(render, out, err);
    if (rollout_cmd->parsed()) return run_rollout(rollout, out, err);
    if (train_cmd->parsed()) return run_train(train, out, err);
    if (evaluate_cmd->parsed()) return run_evaluate(evaluate_args, out, err);
    if (analyze_cmd->parsed()) return run_analyze(analyze_args, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace pcgym

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "ludo/agents.hpp"
#include "ludo/board.hpp"
#include "ludo/llm_client.hpp"
#include "ludo/metrics.hpp"
#include "ludo/prompt.hpp"
#include "ludo/rng.hpp"
#include "ludo/spots.hpp"

namespace ludo {

/// A move-selection policy seated at a player position. decide returns
/// nullopt when there is no legal move (the turn passes).
class Agent {
 public:
  virtual ~Agent() = default;
  virtual std::string name() const = 0;
  virtual std::optional<Decision> decide(const BoardLayout& layout,
                                         const GameState& state, PlayerId player,
                                         int dice, Rng& rng) = 0;
};

class RandomAgent : public Agent {
 public:
  std::string name() const override { return "random"; }
  std::optional<Decision> decide(const BoardLayout& layout, const GameState& state,
                                 PlayerId player, int dice, Rng& rng) override {
    return random_decide(layout, state, player, dice, rng);
  }
};

class HeuristicAgent : public Agent {
 public:
  std::string name() const override { return "heuristic"; }
  std::optional<Decision> decide(const BoardLayout& layout, const GameState& state,
                                 PlayerId player, int dice, Rng&) override {
    return heuristic_decide(layout, state, player, dice);
  }
};

class GtAgent : public Agent {
 public:
  explicit GtAgent(SearchConfig cfg = {}) : cfg_(cfg) {}
  std::string name() const override { return "gt"; }
  std::optional<Decision> decide(const BoardLayout& layout, const GameState& state,
                                 PlayerId player, int dice, Rng&) override {
    return gt_decide(cfg_, layout, state, player, dice);
  }
  const SearchConfig& config() const { return cfg_; }

 private:
  SearchConfig cfg_;
};

/// Plays live games through the completion service: renders the prompt for
/// the current position, parses the reply and adjudicates with random-legal
/// fallback, so the game always continues.
class LlmAgent : public Agent {
 public:
  LlmAgent(CompletionTransport& transport, std::string model,
           Persona persona = Persona::kNone)
      : transport_(transport), model_(std::move(model)), persona_(persona) {}
  std::string name() const override { return "llm:" + model_; }
  std::optional<Decision> decide(const BoardLayout& layout, const GameState& state,
                                 PlayerId player, int dice, Rng& rng) override;

 private:
  CompletionTransport& transport_;
  std::string model_;
  Persona persona_;
};

/// Roster, game count and seeding for a tournament run.
struct MatchConfig {
  std::vector<std::string> roster;  // 2-4 of: random | heuristic | gt | llm:<model>
  int games_per_matchup = 200;
  uint64_t seed = 1;
  int turn_cap = 2000;  // half-turns; capped games adjudicate by progress
  SearchConfig search;
};

struct GameResult {
  PlayerId winner = -1;
  int half_turns = 0;
  bool capped = false;
  std::array<int, kMaxPlayers> captures{};  // captures made by each player
  std::array<int, kMaxPlayers> finishes{};
};

/// Simulates one full game: seeded dice, per-turn decisions, extra turns and
/// passes, win detection, and progress adjudication at the turn cap.
GameResult run_game(const BoardLayout& layout,
                    const std::vector<Agent*>& seats, uint64_t seed,
                    int turn_cap = 2000);

struct TournamentResult {
  std::vector<std::string> roster;
  // win_rate[i][j]: fraction of games agent i won against agent j (i != j).
  std::vector<std::vector<double>> win_rate;
  int games_per_matchup = 0;

  std::string to_csv() const;
};

/// Round-robin over ordered agent pairs; each matchup plays half its games
/// in each seat order with seeds derived from the master seed.
TournamentResult run_tournament(const MatchConfig& config,
                                const BoardLayout& layout = standard_layout());

using RecordSink = std::function<void(const EvalRecord&)>;
using DoneKey = std::pair<std::string, std::string>;  // (spot id, persona)

/// Evaluates a built-in agent on every (spot, persona). Personas never reach
/// the agent (its signature has no persona input); records are still emitted
/// per persona for alignment bookkeeping. Keys present in done are skipped
/// so interrupted runs resume without duplicates.
void run_spot_eval(Agent& agent, const BoardLayout& layout,
                   const std::vector<SpotScenario>& spots,
                   const std::vector<Persona>& personas, uint64_t seed,
                   const std::set<DoneKey>& done, const RecordSink& sink);

/// Evaluates a completion service on every (spot, persona): renders the
/// prompt (history block included for grudge spots), queries, parses and
/// adjudicates. Transport failures are recorded and the run continues.
void run_spot_eval_llm(CompletionTransport& transport, const std::string& model,
                       const BoardLayout& layout,
                       const std::vector<SpotScenario>& spots,
                       const std::vector<Persona>& personas, uint64_t seed,
                       const std::set<DoneKey>& done, const RecordSink& sink);

/// Identification block persisted with every run's outputs.
struct RunManifest {
  std::string run_id;
  std::string command;
  std::string corpus_provenance;
  uint64_t seed = 0;
  std::string rng_algorithm = Rng::kAlgorithm;
  std::string config_snapshot;  // JSON text
  std::string started_at;       // ISO-8601 UTC
  std::string to_json() const;
};

std::string iso8601_utc_now();

std::unique_ptr<Agent> make_builtin_agent(const std::string& spec,
                                          const SearchConfig& search);

}  // namespace ludo

#include "ludo/harness.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <sstream>

#include "json.hpp"

namespace ludo {

using nlohmann::ordered_json;

std::optional<Decision> LlmAgent::decide(const BoardLayout& layout,
                                         const GameState& state, PlayerId player,
                                         int dice, Rng& rng) {
  const auto moves = legal_moves(layout, state, player, dice);
  if (moves.empty()) return std::nullopt;

  SpotScenario spot;
  spot.id = "live_" + fingerprint(state);
  spot.category = Category::kCapture;  // unused for live play
  spot.llm_player_id = player;
  spot.dice = dice;
  spot.state = state;
  spot.state.current_player = static_cast<int8_t>(player);

  PromptSpec prompt_spec{spot, persona_, false};
  CompletionRequest request;
  request.prompt = render_prompt(prompt_spec, layout);
  request.model = model_;
  const CompletionResult result = transport_.complete(request);

  ParsedResponse parsed;
  if (result.ok) parsed = parse_response(result.text);
  const AdjudicatedDecision adj = adjudicate(parsed, spot, rng, layout);
  Decision d;
  d.move = adj.final_move;
  d.rationale = parsed.format_valid ? parsed.reason : "fallback: random legal move";
  return d;
}

GameResult run_game(const BoardLayout& layout, const std::vector<Agent*>& seats,
                    uint64_t seed, int turn_cap) {
  if (seats.size() < 2 || seats.size() > kMaxPlayers) {
    throw LudoError("run_game: need 2-4 seated agents");
  }
  std::vector<PlayerId> active;
  for (PlayerId p = 0; p < static_cast<int>(seats.size()); ++p) active.push_back(p);
  GameState state = initial_state(active);
  Rng rng(seed);
  GameResult result;

  while (true) {
    if (result.half_turns >= turn_cap) {
      // Adjudicate to the greatest summed relative progress, ties to the
      // lowest player id.
      result.capped = true;
      int best_progress = -1;
      for (PlayerId p : active) {
        const int prog = player_progress(layout, state, p);
        if (prog > best_progress) {
          best_progress = prog;
          result.winner = p;
        }
      }
      return result;
    }
    const int dice = rng.roll_dice();
    const PlayerId mover = state.current_player;
    const auto decision = seats[mover]->decide(layout, state, mover, dice, rng);
    if (decision) {
      const Move& m = decision->move;
      if (m.capture_victim) ++result.captures[mover];
      if (m.finishes) ++result.finishes[mover];
      state = apply_move(layout, state, mover, dice, m);
      ++result.half_turns;
      if (auto w = winner(layout, state)) {
        result.winner = *w;
        return result;
      }
    } else {
      ++result.half_turns;
    }
    state.current_player =
        static_cast<int8_t>(next_player(state, dice, decision.has_value()));
  }
}

TournamentResult run_tournament(const MatchConfig& config,
                                const BoardLayout& layout) {
  const int n = static_cast<int>(config.roster.size());
  if (n < 2 || n > kMaxPlayers) throw LudoError("run_tournament: roster size must be 2-4");
  TournamentResult result;
  result.roster = config.roster;
  result.games_per_matchup = config.games_per_matchup;
  result.win_rate.assign(n, std::vector<double>(n, 0.0));

  std::vector<std::unique_ptr<Agent>> agents;
  agents.reserve(n);
  for (const auto& spec : config.roster) {
    agents.push_back(make_builtin_agent(spec, config.search));
  }

  int matchup_index = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      int wins = 0;
      for (int g = 0; g < config.games_per_matchup; ++g) {
        // Even seat split: the first half seats i at player 0.
        const bool i_first = g < (config.games_per_matchup + 1) / 2;
        std::vector<Agent*> seats;
        if (i_first) seats = {agents[i].get(), agents[j].get()};
        else seats = {agents[j].get(), agents[i].get()};
        const uint64_t seed = derive_seed(config.seed, matchup_index, g);
        const GameResult game = run_game(layout, seats, seed, config.turn_cap);
        const PlayerId my_seat = i_first ? 0 : 1;
        if (game.winner == my_seat) ++wins;
      }
      result.win_rate[i][j] =
          static_cast<double>(wins) / config.games_per_matchup;
      ++matchup_index;
    }
  }
  return result;
}

std::string TournamentResult::to_csv() const {
  std::ostringstream out;
  out << "agent";
  for (const auto& name : roster) out << "," << name;
  out << "\n";
  for (size_t i = 0; i < roster.size(); ++i) {
    out << roster[i];
    for (size_t j = 0; j < roster.size(); ++j) {
      if (i == j) out << ",";
      else out << "," << win_rate[i][j];
    }
    out << "\n";
  }
  return out.str();
}

namespace {

EvalRecord base_record(const SpotScenario& spot, Persona persona,
                       const std::string& agent) {
  EvalRecord r;
  r.spot_id = spot.id;
  r.category = spot.category;
  r.persona = persona;
  r.agent = agent;
  return r;
}

void fill_move_effects(EvalRecord& r, const Move& m) {
  r.captures = m.capture_victim.has_value();
  if (m.capture_victim) r.captured_player = m.capture_victim->first;
  r.lands_safe = m.lands_safe;
  r.enters_home = m.enters_home;
  r.finishes = m.finishes;
  r.leaves_base = m.is_leave_base;
  r.moves_existing = !m.is_leave_base;
}

}  // namespace

void run_spot_eval(Agent& agent, const BoardLayout& layout,
                   const std::vector<SpotScenario>& spots,
                   const std::vector<Persona>& personas, uint64_t seed,
                   const std::set<DoneKey>& done, const RecordSink& sink) {
  for (const SpotScenario& spot : spots) {
    // One stream per spot: built-in decisions are persona-independent, so
    // the random agent too must answer identically across personas.
    for (const Persona persona : personas) {
      if (done.count({spot.id, to_string(persona)})) continue;
      Rng rng(derive_seed(seed, fnv1a64(spot.id), 0));
      const auto decision =
          agent.decide(layout, spot.state, spot.llm_player_id, spot.dice, rng);
      if (!decision) {
        throw LudoError("spot " + spot.id + " offers no legal move");
      }
      EvalRecord r = base_record(spot, persona, agent.name());
      r.chosen_token = decision->move.token_index;
      r.final_token = decision->move.token_index;
      fill_move_effects(r, decision->move);
      sink(r);
    }
  }
}

void run_spot_eval_llm(CompletionTransport& transport, const std::string& model,
                       const BoardLayout& layout,
                       const std::vector<SpotScenario>& spots,
                       const std::vector<Persona>& personas, uint64_t seed,
                       const std::set<DoneKey>& done, const RecordSink& sink) {
  const std::string agent_name = "llm:" + model;
  for (const SpotScenario& spot : spots) {
    for (size_t pi = 0; pi < personas.size(); ++pi) {
      const Persona persona = personas[pi];
      if (done.count({spot.id, to_string(persona)})) continue;
      PromptSpec spec{spot, persona, spot.history_text.has_value()};
      CompletionRequest request;
      request.prompt = render_prompt(spec, layout);
      request.model = model;
      const CompletionResult result = transport.complete(request);

      EvalRecord r = base_record(spot, persona, agent_name);
      Rng rng(derive_seed(seed, fnv1a64(spot.id), pi));
      if (!result.ok) {
        r.transport_error = true;
        r.raw_text = result.error;
        // A fallback move keeps downstream consumers total; metrics treat
        // transport errors as their own stratum.
        ParsedResponse none;
        const auto adj = adjudicate(none, spot, rng, layout);
        r.final_token = adj.final_move.token_index;
        sink(r);
        continue;
      }
      const ParsedResponse parsed = parse_response(result.text);
      const AdjudicatedDecision adj = adjudicate(parsed, spot, rng, layout);
      r.was_format_invalid = adj.was_format_invalid;
      r.was_move_invalid = adj.was_move_invalid;
      r.chosen_token = adj.chosen_token;
      r.final_token = adj.final_move.token_index;
      r.chose_blocked = adj.chose_blocked;
      r.chose_overshoot = adj.chose_overshoot;
      r.raw_text = result.text;
      if (!adj.was_format_invalid && !adj.was_move_invalid) {
        fill_move_effects(r, adj.final_move);
      }
      sink(r);
    }
  }
}

std::string iso8601_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string RunManifest::to_json() const {
  ordered_json j;
  j["run_id"] = run_id;
  j["command"] = command;
  j["corpus_provenance"] = corpus_provenance;
  j["seed"] = seed;
  j["rng_algorithm"] = rng_algorithm;
  j["config"] = config_snapshot.empty() ? ordered_json::object()
                                        : ordered_json::parse(config_snapshot);
  j["started_at"] = started_at;
  return j.dump(2) + "\n";
}

std::unique_ptr<Agent> make_builtin_agent(const std::string& spec,
                                          const SearchConfig& search) {
  if (spec == "random") return std::make_unique<RandomAgent>();
  if (spec == "heuristic") return std::make_unique<HeuristicAgent>();
  if (spec == "gt") return std::make_unique<GtAgent>(search);
  throw LudoError("unknown agent spec: " + spec +
                  " (expected random | heuristic | gt)");
}

}  // namespace ludo

#include "ludo/agents.hpp"

#include <algorithm>
#include <cmath>

namespace ludo {

std::optional<Decision> random_decide(const BoardLayout& layout,
                                      const GameState& state, PlayerId player,
                                      int dice, Rng& rng) {
  const auto moves = legal_moves(layout, state, player, dice);
  if (moves.empty()) return std::nullopt;
  const int pick = rng.uniform_int(0, static_cast<int>(moves.size()) - 1);
  Decision d;
  d.move = moves[pick];
  d.rationale = "uniform random legal move";
  return d;
}

double heuristic_score(const BoardLayout& layout, const GameState& state,
                       PlayerId player, int dice, const Move& move) {
  (void)state;
  (void)dice;
  if (move.is_leave_base) return 50.0;
  const int to_rel = rel_progress(layout, player, move.to);
  // Main-track destination: rel_pos + dice (== destination progress).
  // Home-path destination: 52 + 1-based home step (== destination progress + 1).
  double score = move.enters_home ? to_rel + 1.0 : to_rel;
  if (move.capture_victim) score += 100.0;
  if (move.lands_safe) score += 20.0;
  return score;
}

std::optional<Decision> heuristic_decide(const BoardLayout& layout,
                                         const GameState& state,
                                         PlayerId player, int dice) {
  const auto moves = legal_moves(layout, state, player, dice);
  if (moves.empty()) return std::nullopt;
  int best = 0;
  double best_score = heuristic_score(layout, state, player, dice, moves[0]);
  for (int i = 1; i < static_cast<int>(moves.size()); ++i) {
    const double s = heuristic_score(layout, state, player, dice, moves[i]);
    if (s > best_score) {
      best = i;
      best_score = s;
    }
  }
  Decision d;
  d.move = moves[best];
  d.value = best_score;
  return d;
}

PlayerCounts count_features(const BoardLayout& layout, const GameState& state,
                            PlayerId player) {
  PlayerCounts c;
  for (int t = 0; t < kTokensPerPlayer; ++t) {
    const int pos = state.token(player, t);
    if (pos == kBase) {
      ++c.in_base;
      continue;
    }
    c.progress += rel_progress(layout, player, pos);
    if (pos == layout.home_end(player)) ++c.finished;
    if (layout.on_main_track(pos) && layout.is_safe(pos)) ++c.on_safe;
  }
  return c;
}

namespace {

double clip_to(double v, double bound) {
  return std::max(-bound, std::min(bound, v));
}

double linear_score(const SearchConfig& cfg, const PlayerCounts& c) {
  return cfg.w_prog * c.progress + cfg.w_fin * c.finished -
         cfg.w_base * c.in_base + cfg.w_safe * c.on_safe;
}

}  // namespace

double evaluate_2p(const SearchConfig& cfg, const BoardLayout& layout,
                   const GameState& state, PlayerId root) {
  const auto active = state.active_players();
  if (active.size() != 2) throw LudoError("evaluate_2p: needs exactly 2 active players");
  const PlayerId opp = active[0] == root ? active[1] : active[0];
  if (opp == root || !state.is_active(root)) throw LudoError("evaluate_2p: bad root");
  const PlayerCounts a = count_features(layout, state, root);
  const PlayerCounts b = count_features(layout, state, opp);
  const double v = cfg.w_prog * (a.progress - b.progress) +
                   cfg.w_fin * (a.finished - b.finished) -
                   cfg.w_base * (a.in_base - b.in_base) +
                   cfg.w_safe * (a.on_safe - b.on_safe);
  return clip_to(v, cfg.clip);
}

std::vector<double> maxn_centered_scores(const SearchConfig& cfg,
                                         const BoardLayout& layout,
                                         const GameState& state) {
  const auto active = state.active_players();
  std::vector<double> scores(active.size());
  double mean = 0.0;
  for (size_t i = 0; i < active.size(); ++i) {
    scores[i] = linear_score(cfg, count_features(layout, state, active[i]));
    mean += scores[i];
  }
  mean /= static_cast<double>(active.size());
  for (double& s : scores) s -= mean;
  return scores;
}

std::vector<double> evaluate_maxn(const SearchConfig& cfg,
                                  const BoardLayout& layout,
                                  const GameState& state) {
  if (state.num_active() < 3) {
    throw LudoError("evaluate_maxn: needs 3 or 4 active players");
  }
  auto scores = maxn_centered_scores(cfg, layout, state);
  for (double& s : scores) s = clip_to(s, cfg.clip);
  return scores;
}

namespace {

// Shared recursion context: one per top-level decision, so cached values can
// never leak across root players or configurations.
struct Search2p {
  const SearchConfig& cfg;
  const BoardLayout& layout;
  PlayerId root;
  SearchStats* stats;
  MemoCache<double> cache;

  double chance(const GameState& state, PlayerId to_move, int depth) {
    if (stats) ++stats->chance_nodes;
    if (auto w = winner(layout, state)) return *w == root ? 1.0 : -1.0;
    if (depth <= 0) return evaluate_2p(cfg, layout, state, root);

    MemoKey key{NodeKind::kChance, {}, to_move, 0, depth};
    if (cfg.memo_enabled) {
      key.state_fp = fingerprint(state);
      if (const double* hit = cache.get(key)) {
        if (stats) ++stats->cache_hits;
        return *hit;
      }
    }
    double sum = 0.0;
    for (int d = 1; d <= 6; ++d) sum += decision(state, to_move, d, depth);
    const double v = sum / 6.0;
    if (cfg.memo_enabled) cache.put(key, v);
    return v;
  }

  double decision(const GameState& state, PlayerId to_move, int dice, int depth) {
    if (stats) ++stats->decision_nodes;
    MemoKey key{NodeKind::kDecision, {}, to_move, dice, depth};
    if (cfg.memo_enabled) {
      key.state_fp = fingerprint(state);
      if (const double* hit = cache.get(key)) {
        if (stats) ++stats->cache_hits;
        return *hit;
      }
    }
    const auto moves = legal_moves(layout, state, to_move, dice);
    const PlayerId after = successor_player(state, to_move, dice);
    double v;
    if (moves.empty()) {
      GameState passed = state;
      passed.current_player = static_cast<int8_t>(after);
      v = chance(passed, after, depth - 1);
    } else {
      const bool maximizing = (to_move == root);
      v = maximizing ? -2.0 : 2.0;
      for (const Move& m : moves) {
        GameState next = apply_move(layout, state, to_move, dice, m);
        next.current_player = static_cast<int8_t>(after);
        const double child = chance(next, after, depth - 1);
        if (maximizing ? child > v : child < v) v = child;
      }
    }
    if (cfg.memo_enabled) cache.put(key, v);
    return v;
  }

  PlayerId successor_player(const GameState& state, PlayerId to_move, int dice) const {
    GameState probe = state;
    probe.current_player = static_cast<int8_t>(to_move);
    return next_player(probe, dice, true);
  }
};

struct SearchMaxn {
  const SearchConfig& cfg;
  const BoardLayout& layout;
  SearchStats* stats;
  MemoCache<std::vector<double>> cache;

  int seat_of(const GameState& state, PlayerId p) const {
    int seat = 0;
    for (PlayerId q = 0; q < p; ++q) {
      if (state.is_active(q)) ++seat;
    }
    return seat;
  }

  std::vector<double> terminal_values(const GameState& state, PlayerId win) const {
    const int n = state.num_active();
    std::vector<double> v(n, -1.0 / (n - 1));
    v[seat_of(state, win)] = 1.0;
    return v;
  }

  std::vector<double> chance(const GameState& state, PlayerId to_move, int depth) {
    if (stats) ++stats->chance_nodes;
    if (auto w = winner(layout, state)) return terminal_values(state, *w);
    if (depth <= 0) return evaluate_maxn(cfg, layout, state);

    MemoKey key{NodeKind::kChance, {}, to_move, 0, depth};
    if (cfg.memo_enabled) {
      key.state_fp = fingerprint(state);
      if (const auto* hit = cache.get(key)) {
        if (stats) ++stats->cache_hits;
        return *hit;
      }
    }
    std::vector<double> sum(state.num_active(), 0.0);
    for (int d = 1; d <= 6; ++d) {
      const auto child = decision(state, to_move, d, depth);
      for (size_t i = 0; i < sum.size(); ++i) sum[i] += child[i];
    }
    for (double& s : sum) s /= 6.0;
    if (cfg.memo_enabled) cache.put(key, sum);
    return sum;
  }

  std::vector<double> decision(const GameState& state, PlayerId to_move,
                               int dice, int depth) {
    if (stats) ++stats->decision_nodes;
    MemoKey key{NodeKind::kDecision, {}, to_move, dice, depth};
    if (cfg.memo_enabled) {
      key.state_fp = fingerprint(state);
      if (const auto* hit = cache.get(key)) {
        if (stats) ++stats->cache_hits;
        return *hit;
      }
    }
    const auto moves = legal_moves(layout, state, to_move, dice);
    GameState probe = state;
    probe.current_player = static_cast<int8_t>(to_move);
    const PlayerId after = next_player(probe, dice, true);
    std::vector<double> best;
    if (moves.empty()) {
      GameState passed = state;
      passed.current_player = static_cast<int8_t>(after);
      best = chance(passed, after, depth - 1);
    } else {
      const int seat = seat_of(state, to_move);
      for (const Move& m : moves) {
        GameState next = apply_move(layout, state, to_move, dice, m);
        next.current_player = static_cast<int8_t>(after);
        auto child = chance(next, after, depth - 1);
        if (best.empty() || child[seat] > best[seat]) best = std::move(child);
      }
    }
    if (cfg.memo_enabled) cache.put(key, best);
    return best;
  }
};

}  // namespace

double chance_value_2p(const SearchConfig& cfg, const BoardLayout& layout,
                       const GameState& state, PlayerId to_move, PlayerId root,
                       int depth, SearchStats* stats) {
  Search2p s{cfg, layout, root, stats, {}};
  return s.chance(state, to_move, depth);
}

double decision_value_2p(const SearchConfig& cfg, const BoardLayout& layout,
                         const GameState& state, PlayerId to_move,
                         PlayerId root, int dice, int depth,
                         SearchStats* stats) {
  if (depth < 1) throw LudoError("decision_value_2p: depth must be >= 1");
  Search2p s{cfg, layout, root, stats, {}};
  return s.decision(state, to_move, dice, depth);
}

std::vector<double> chance_value_maxn(const SearchConfig& cfg,
                                      const BoardLayout& layout,
                                      const GameState& state, PlayerId to_move,
                                      int depth, SearchStats* stats) {
  SearchMaxn s{cfg, layout, stats, {}};
  return s.chance(state, to_move, depth);
}

std::vector<double> decision_value_maxn(const SearchConfig& cfg,
                                        const BoardLayout& layout,
                                        const GameState& state,
                                        PlayerId to_move, int dice, int depth,
                                        SearchStats* stats) {
  if (depth < 1) throw LudoError("decision_value_maxn: depth must be >= 1");
  SearchMaxn s{cfg, layout, stats, {}};
  return s.decision(state, to_move, dice, depth);
}

std::optional<Decision> gt_decide(const SearchConfig& cfg,
                                  const BoardLayout& layout,
                                  const GameState& state, PlayerId player,
                                  int dice, SearchStats* stats) {
  const auto moves = legal_moves(layout, state, player, dice);
  if (moves.empty()) return std::nullopt;
  const int child_depth = std::max(0, cfg.depth - 1);

  GameState probe = state;
  probe.current_player = static_cast<int8_t>(player);
  const PlayerId after = next_player(probe, dice, true);

  int best = -1;
  double best_value = 0.0;
  if (state.num_active() == 2) {
    Search2p search{cfg, layout, player, stats, {}};
    for (int i = 0; i < static_cast<int>(moves.size()); ++i) {
      GameState next = apply_move(layout, state, player, dice, moves[i]);
      next.current_player = static_cast<int8_t>(after);
      const double v = search.chance(next, after, child_depth);
      if (best < 0 || v > best_value) {
        best = i;
        best_value = v;
      }
    }
  } else {
    SearchMaxn search{cfg, layout, stats, {}};
    const int seat = search.seat_of(state, player);
    for (int i = 0; i < static_cast<int>(moves.size()); ++i) {
      GameState next = apply_move(layout, state, player, dice, moves[i]);
      next.current_player = static_cast<int8_t>(after);
      const auto v = search.chance(next, after, child_depth);
      if (best < 0 || v[seat] > best_value) {
        best = i;
        best_value = v[seat];
      }
    }
  }
  Decision d;
  d.move = moves[best];
  d.value = best_value;
  return d;
}

}  // namespace ludo

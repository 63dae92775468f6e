#include "ludo/board.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace ludo {

const BoardLayout& standard_layout() {
  static const BoardLayout layout{};
  return layout;
}

int GameState::num_active() const {
  return std::popcount(active_mask);
}

std::vector<PlayerId> GameState::active_players() const {
  std::vector<PlayerId> out;
  for (PlayerId p = 0; p < kMaxPlayers; ++p) {
    if (is_active(p)) out.push_back(p);
  }
  return out;
}

GameState initial_state(const std::vector<PlayerId>& active) {
  if (active.size() < 2 || active.size() > kMaxPlayers) {
    throw LudoError("initial_state: need 2-4 active players");
  }
  GameState s;
  for (auto& row : s.tokens) row.fill(kBase);
  for (PlayerId p : active) {
    if (p < 0 || p >= kMaxPlayers) throw LudoError("initial_state: player id out of range");
    if (s.is_active(p)) throw LudoError("initial_state: duplicate player id");
    s.active_mask |= static_cast<uint8_t>(1u << p);
  }
  s.current_player = static_cast<int8_t>(std::countr_zero(s.active_mask));
  return s;
}

static void check_dice(int dice) {
  if (dice < 1 || dice > 6) throw LudoError("dice value must be in [1, 6]");
}

int rel_progress(const BoardLayout& layout, PlayerId player, TokenPosition pos) {
  if (pos == kBase) throw LudoError("rel_progress: token is in base");
  if (layout.on_main_track(pos)) {
    return (pos - layout.start_square[player] + layout.main_track_len) %
           layout.main_track_len;
  }
  if (layout.in_home_range(player, pos)) {
    return layout.main_track_len + (pos - layout.home_start(player));
  }
  throw LudoError("rel_progress: position " + std::to_string(pos) +
                  " is not valid for player " + std::to_string(player));
}

int abs_from_rel(const BoardLayout& layout, PlayerId player, int rel) {
  if (rel < 0 || rel > kFinishedRel) throw LudoError("abs_from_rel: rel out of range");
  if (rel < layout.main_track_len) {
    return (layout.start_square[player] + rel) % layout.main_track_len;
  }
  return layout.home_start(player) + (rel - layout.main_track_len);
}

namespace {

struct TokenStep {
  std::optional<Move> move;
  TokenMoveBlock block = TokenMoveBlock::kNone;
};

TokenStep step_token(const BoardLayout& layout, const GameState& state,
                     PlayerId player, int dice, int t) {
  TokenStep out;
  const int pos = state.token(player, t);
  int dest;
  if (pos == kBase) {
    if (dice != 6) {
      out.block = TokenMoveBlock::kBaseNeedsSix;
      return out;
    }
    dest = layout.start_square[player];
  } else {
    if (pos == layout.home_end(player)) {
      out.block = TokenMoveBlock::kFinished;
      return out;
    }
    const int rel = rel_progress(layout, player, pos);
    if (rel + dice > kFinishedRel) {
      out.block = TokenMoveBlock::kOvershoot;
      return out;
    }
    dest = abs_from_rel(layout, player, rel + dice);
  }

  // Same-player stacking is blocked everywhere except home_end.
  if (dest != layout.home_end(player)) {
    for (int i = 0; i < kTokensPerPlayer; ++i) {
      if (i != t && state.token(player, i) == dest) {
        out.block = TokenMoveBlock::kOwnStacking;
        return out;
      }
    }
  }

  Move m;
  m.token_index = t;
  m.from = pos;
  m.to = dest;
  m.is_leave_base = (pos == kBase);
  m.enters_home = layout.in_home_range(player, dest);
  m.finishes = (dest == layout.home_end(player));
  m.lands_safe = layout.on_main_track(dest) && layout.is_safe(dest);
  if (layout.on_main_track(dest) && !layout.is_safe(dest)) {
    for (PlayerId o = 0; o < kMaxPlayers; ++o) {
      if (o == player || !state.is_active(o)) continue;
      for (int j = 0; j < kTokensPerPlayer; ++j) {
        if (state.token(o, j) == dest) {
          m.capture_victim = std::make_pair(o, j);
          break;
        }
      }
      if (m.capture_victim) break;
    }
  }
  out.move = m;
  return out;
}

}  // namespace

std::optional<Move> move_for_token(const BoardLayout& layout,
                                   const GameState& state, PlayerId player,
                                   int dice, int token_index) {
  check_dice(dice);
  return step_token(layout, state, player, dice, token_index).move;
}

TokenMoveBlock token_block_reason(const BoardLayout& layout,
                                  const GameState& state, PlayerId player,
                                  int dice, int token_index) {
  check_dice(dice);
  return step_token(layout, state, player, dice, token_index).block;
}

std::vector<Move> legal_moves(const BoardLayout& layout, const GameState& state,
                              PlayerId player, int dice) {
  check_dice(dice);
  if (!state.is_active(player)) throw LudoError("legal_moves: player not active");
  std::vector<Move> moves;
  for (int t = 0; t < kTokensPerPlayer; ++t) {
    if (auto m = step_token(layout, state, player, dice, t).move) {
      moves.push_back(*m);
    }
  }
  return moves;
}

GameState apply_move(const BoardLayout& layout, const GameState& state,
                     PlayerId player, int dice, const Move& move) {
  auto expected = move_for_token(layout, state, player, dice, move.token_index);
  if (!expected || !(*expected == move)) {
    throw LudoError("apply_move: move is not legal for (state, player, dice)");
  }
  GameState next = state;
  next.set_token(player, move.token_index, move.to);
  if (move.capture_victim) {
    next.set_token(move.capture_victim->first, move.capture_victim->second, kBase);
  }
  return next;
}

PlayerId next_player(const GameState& state, int dice, bool had_legal_move) {
  (void)had_legal_move;  // dice alone decides; a 6 keeps the turn even on a pass
  check_dice(dice);
  if (dice == 6) return state.current_player;
  const PlayerId cur = state.current_player;
  for (int step = 1; step <= kMaxPlayers; ++step) {
    const PlayerId p = (cur + step) % kMaxPlayers;
    if (state.is_active(p)) return p;
  }
  throw LudoError("next_player: no active players");
}

std::optional<PlayerId> winner(const BoardLayout& layout, const GameState& state) {
  for (PlayerId p = 0; p < kMaxPlayers; ++p) {
    if (!state.is_active(p)) continue;
    bool all_home = true;
    for (int t = 0; t < kTokensPerPlayer; ++t) {
      if (state.token(p, t) != layout.home_end(p)) {
        all_home = false;
        break;
      }
    }
    if (all_home) return p;
  }
  return std::nullopt;
}

std::vector<std::string> validate_state(const BoardLayout& layout,
                                        const GameState& state) {
  std::vector<std::string> issues;
  const int n = state.num_active();
  if (n < 2 || n > kMaxPlayers) {
    issues.push_back("active player count " + std::to_string(n) + " not in [2, 4]");
  }
  if (!state.is_active(state.current_player)) {
    issues.push_back("current_player " + std::to_string(state.current_player) +
                     " is not active");
  }
  for (PlayerId p = 0; p < kMaxPlayers; ++p) {
    if (!state.is_active(p)) continue;
    for (int t = 0; t < kTokensPerPlayer; ++t) {
      const int pos = state.token(p, t);
      const bool ok = pos == kBase || layout.on_main_track(pos) ||
                      layout.in_home_range(p, pos);
      if (!ok) {
        const bool foreign_home = pos >= layout.main_track_len;
        issues.push_back("player " + std::to_string(p) + " token " +
                         std::to_string(t) + " at " + std::to_string(pos) +
                         (foreign_home ? ": foreign home range" : ": invalid square"));
      }
    }
    // Own stacking off home_end.
    for (int a = 0; a < kTokensPerPlayer; ++a) {
      for (int b = a + 1; b < kTokensPerPlayer; ++b) {
        const int pa = state.token(p, a);
        if (pa == kBase || pa != state.token(p, b)) continue;
        if (pa == layout.home_end(p)) continue;
        issues.push_back("player " + std::to_string(p) + " tokens " +
                         std::to_string(a) + "," + std::to_string(b) +
                         " stacked at " + std::to_string(pa) +
                         ": own stacking off home_end");
      }
    }
  }
  // Cross-player co-occupancy on non-safe main-track squares.
  for (PlayerId p = 0; p < kMaxPlayers; ++p) {
    if (!state.is_active(p)) continue;
    for (PlayerId q = p + 1; q < kMaxPlayers; ++q) {
      if (!state.is_active(q)) continue;
      for (int a = 0; a < kTokensPerPlayer; ++a) {
        const int pa = state.token(p, a);
        if (!layout.on_main_track(pa) || layout.is_safe(pa)) continue;
        for (int b = 0; b < kTokensPerPlayer; ++b) {
          if (state.token(q, b) == pa) {
            issues.push_back("players " + std::to_string(p) + " and " +
                             std::to_string(q) + " share non-safe square " +
                             std::to_string(pa));
          }
        }
      }
    }
  }
  return issues;
}

std::string fingerprint(const GameState& state) {
  std::ostringstream out;
  out << "c" << static_cast<int>(state.current_player) << "|a"
      << static_cast<int>(state.active_mask);
  for (PlayerId p = 0; p < kMaxPlayers; ++p) {
    if (!state.is_active(p)) continue;
    out << "|";
    for (int t = 0; t < kTokensPerPlayer; ++t) {
      if (t) out << ",";
      out << static_cast<int>(state.token(p, t));
    }
  }
  return out.str();
}

int player_progress(const BoardLayout& layout, const GameState& state,
                    PlayerId player) {
  int sum = 0;
  for (int t = 0; t < kTokensPerPlayer; ++t) {
    const int pos = state.token(player, t);
    if (pos == kBase) continue;
    sum += rel_progress(layout, player, pos);
  }
  return sum;
}

}  // namespace ludo

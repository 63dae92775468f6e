#pragma once

// Shared test helpers: a random valid-state generator and an independent
// legal-move oracle that walks the player's path square by square instead of
// using modular arithmetic. The oracle exists only in test code so it can
// never drift together with the engine.

#include <optional>
#include <vector>

#include "ludo/board.hpp"
#include "ludo/rng.hpp"

namespace ludo::testutil {

inline std::vector<int> player_path(const BoardLayout& layout, PlayerId p) {
  std::vector<int> path;
  for (int i = 0; i < layout.main_track_len; ++i) {
    path.push_back((layout.start_square[p] + i) % layout.main_track_len);
  }
  for (int h = layout.home_start(p); h <= layout.home_end(p); ++h) {
    path.push_back(h);
  }
  return path;
}

/// Literal rule simulation: for each token, find its path index, step the
/// dice forward, and filter by the movement/capture rules.
inline std::vector<Move> oracle_moves(const BoardLayout& layout,
                                      const GameState& state, PlayerId player,
                                      int dice) {
  std::vector<Move> out;
  const auto path = player_path(layout, player);
  for (int t = 0; t < kTokensPerPlayer; ++t) {
    const int pos = state.token(player, t);
    std::optional<int> dest;
    bool leaves = false;
    if (pos == kBase) {
      if (dice == 6) {
        dest = layout.start_square[player];
        leaves = true;
      }
    } else {
      int idx = -1;
      for (int i = 0; i < static_cast<int>(path.size()); ++i) {
        if (path[i] == pos) {
          idx = i;
          break;
        }
      }
      if (idx >= 0 && idx != 57 && idx + dice <= 57) dest = path[idx + dice];
    }
    if (!dest) continue;
    bool blocked = false;
    if (*dest != layout.home_end(player)) {
      for (int i = 0; i < kTokensPerPlayer; ++i) {
        if (i != t && state.token(player, i) == *dest) blocked = true;
      }
    }
    if (blocked) continue;
    Move m;
    m.token_index = t;
    m.from = pos;
    m.to = *dest;
    m.is_leave_base = leaves;
    m.enters_home = *dest >= layout.main_track_len;
    m.finishes = (*dest == layout.home_end(player));
    m.lands_safe = *dest < layout.main_track_len && layout.is_safe(*dest);
    if (*dest < layout.main_track_len && !layout.is_safe(*dest)) {
      for (PlayerId o = 0; o < kMaxPlayers && !m.capture_victim; ++o) {
        if (o == player || !state.is_active(o)) continue;
        for (int j = 0; j < kTokensPerPlayer; ++j) {
          if (state.token(o, j) == *dest) {
            m.capture_victim = std::make_pair(o, j);
            break;
          }
        }
      }
    }
    out.push_back(m);
  }
  return out;
}

/// Random valid GameState with 2-4 active players and tokens scattered over
/// base, main track and home paths.
inline GameState random_state(const BoardLayout& layout, Rng& rng,
                              int force_players = 0) {
  const int n = force_players ? force_players : rng.uniform_int(2, 4);
  std::vector<PlayerId> ids{0, 1, 2, 3};
  for (int i = 3; i > 0; --i) std::swap(ids[i], ids[rng.uniform_int(0, i)]);
  std::vector<PlayerId> active(ids.begin(), ids.begin() + n);
  std::sort(active.begin(), active.end());
  GameState s = initial_state(active);

  auto occupied = [&](int sq) {
    for (PlayerId p : active) {
      for (int t = 0; t < kTokensPerPlayer; ++t) {
        if (s.token(p, t) == sq) return true;
      }
    }
    return false;
  };
  auto own_occupied = [&](PlayerId p, int sq) {
    for (int t = 0; t < kTokensPerPlayer; ++t) {
      if (s.token(p, t) == sq) return true;
    }
    return false;
  };

  for (PlayerId p : active) {
    for (int t = 0; t < kTokensPerPlayer; ++t) {
      const int zone = rng.uniform_int(0, 9);
      if (zone < 4) continue;  // stays in base
      for (int tries = 0; tries < 8; ++tries) {
        if (zone < 8) {
          const int sq = rng.uniform_int(0, layout.main_track_len - 1);
          if (own_occupied(p, sq)) continue;
          if (!layout.is_safe(sq) && occupied(sq)) continue;
          s.set_token(p, t, sq);
          break;
        }
        const int sq = layout.home_start(p) + rng.uniform_int(0, kHomePathLen - 1);
        if (sq != layout.home_end(p) && own_occupied(p, sq)) continue;
        s.set_token(p, t, sq);
        break;
      }
    }
  }
  s.current_player = static_cast<int8_t>(active[rng.uniform_int(0, n - 1)]);
  return s;
}

}  // namespace ludo::testutil

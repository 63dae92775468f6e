#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ludo {

using PlayerId = int;

inline constexpr int kMainTrackLen = 52;
inline constexpr int kTokensPerPlayer = 4;
inline constexpr int kMaxPlayers = 4;
inline constexpr int kBase = -1;
inline constexpr int kHomePathLen = 6;
/// Relative progress of a finished token (home_end in relative units).
inline constexpr int kFinishedRel = 57;

/// Thrown on rule and contract violations: invalid positions, illegal moves,
/// malformed states, bad configuration.
class LudoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Board geometry: the shared circular 52-square main track, per-player start
/// squares, private 6-square home paths, and the capture-immune safe squares.
/// Every start square is safe; home ranges are disjoint and start at index 52.
struct BoardLayout {
  int main_track_len = kMainTrackLen;
  std::array<int, kMaxPlayers> start_square{0, 13, 26, 39};
  std::array<std::pair<int, int>, kMaxPlayers> home_range{
      {{52, 57}, {58, 63}, {64, 69}, {70, 75}}};
  std::array<int, 8> safe_squares{0, 8, 13, 21, 26, 34, 39, 47};

  bool is_safe(int square) const {
    for (int s : safe_squares) {
      if (s == square) return true;
    }
    return false;
  }
  int home_start(PlayerId p) const { return home_range[p].first; }
  int home_end(PlayerId p) const { return home_range[p].second; }
  bool in_home_range(PlayerId p, int pos) const {
    return pos >= home_range[p].first && pos <= home_range[p].second;
  }
  bool on_main_track(int pos) const { return pos >= 0 && pos < main_track_len; }
};

const BoardLayout& standard_layout();

/// Token position encoding: -1 = base, 0..51 = absolute main-track square,
/// a value in the owner's home range = home path, owner's home_end = finished.
using TokenPosition = int;

/// Positions of all tokens for 2-4 active players plus whose turn it is.
/// Turn order is ascending player id, cyclic, so the active set is stored as
/// a bitmask. Trivially copyable; search clones states freely.
struct GameState {
  std::array<std::array<int8_t, kTokensPerPlayer>, kMaxPlayers> tokens{};
  uint8_t active_mask = 0;
  int8_t current_player = 0;

  bool is_active(PlayerId p) const {
    return p >= 0 && p < kMaxPlayers && ((active_mask >> p) & 1) != 0;
  }
  int num_active() const;
  std::vector<PlayerId> active_players() const;
  int token(PlayerId p, int i) const { return tokens[p][i]; }
  void set_token(PlayerId p, int i, int pos) {
    tokens[p][i] = static_cast<int8_t>(pos);
  }

  bool operator==(const GameState&) const = default;
};

/// All tokens in base, lowest active player to move.
GameState initial_state(const std::vector<PlayerId>& active);

/// A fully resolved token action with its effect flags. capture_victim is
/// (player id, token index) of the opposing token sent to base, present only
/// for captures on non-safe main-track squares.
struct Move {
  int token_index = 0;
  TokenPosition from = kBase;
  TokenPosition to = kBase;
  bool is_leave_base = false;
  std::optional<std::pair<PlayerId, int>> capture_victim;
  bool enters_home = false;
  bool finishes = false;
  bool lands_safe = false;

  bool operator==(const Move&) const = default;
};

/// Why a particular token has no legal move this turn.
enum class TokenMoveBlock {
  kNone,         // token has a legal move
  kBaseNeedsSix, // in base, dice != 6
  kFinished,     // already at home_end
  kOvershoot,    // destination would pass home_end
  kOwnStacking,  // destination occupied by own token (and is not home_end)
};

/// Relative progress of a position along the mover's path: main-track squares
/// map to (pos - start) mod 52 in [0, 51], home-path squares to [52, 57].
/// Throws for base positions and for squares in another player's home range.
int rel_progress(const BoardLayout& layout, PlayerId player, TokenPosition pos);

/// Inverse of rel_progress for rel in [0, 57].
int abs_from_rel(const BoardLayout& layout, PlayerId player, int rel);

/// The single legal move of one token for this dice value, if any.
std::optional<Move> move_for_token(const BoardLayout& layout,
                                   const GameState& state, PlayerId player,
                                   int dice, int token_index);

TokenMoveBlock token_block_reason(const BoardLayout& layout,
                                  const GameState& state, PlayerId player,
                                  int dice, int token_index);

/// Every legal move for (state, player, dice), ordered by token index.
/// Base exit only on a 6; forward movement with main-to-home transition;
/// exact landing on home_end, overshoot excluded; own-occupied destinations
/// excluded except home_end; opponents on non-safe squares are captured,
/// opponents on safe squares are shared without capture.
std::vector<Move> legal_moves(const BoardLayout& layout, const GameState& state,
                              PlayerId player, int dice);

/// Applies a legal move. The moved token relocates to move.to, any capture
/// victim returns to base; current_player is left unchanged (turn transition
/// is next_player's job). Throws if the move is not legal for the inputs.
GameState apply_move(const BoardLayout& layout, const GameState& state,
                     PlayerId player, int dice, const Move& move);

/// Dice 6 keeps the turn (extra-turn rule, whether or not a move was made);
/// otherwise the next active player in ascending cyclic order.
PlayerId next_player(const GameState& state, int dice, bool had_legal_move);

/// The player with all four tokens at their home_end, if any.
std::optional<PlayerId> winner(const BoardLayout& layout, const GameState& state);

/// Checks every state invariant; returns human-readable violations (empty on
/// success). Used by the spot corpus on load and by property tests.
std::vector<std::string> validate_state(const BoardLayout& layout,
                                        const GameState& state);

/// Canonical serialization of a state; equal states produce equal strings.
std::string fingerprint(const GameState& state);

/// Summed relative progress of a player's non-base tokens (finished tokens
/// contribute 57 each). Used by the evaluator and by turn-cap adjudication.
int player_progress(const BoardLayout& layout, const GameState& state,
                    PlayerId player);

}  // namespace ludo

#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ludo/board.hpp"
#include "ludo/rng.hpp"

namespace ludo {

/// A chosen move with optional diagnostics (search value or heuristic score).
struct Decision {
  Move move;
  std::optional<double> value;
  std::string rationale;
};

/// Search parameters for the game-theory agent. depth counts decision plies;
/// eval weights follow the linear evaluator (progress, finished, base
/// penalty, safe count); evaluator outputs are clipped to [-clip, clip].
struct SearchConfig {
  int depth = 2;
  double w_prog = 0.0025;
  double w_fin = 0.20;
  double w_base = 0.05;
  double w_safe = 0.01;
  double clip = 0.999;
  bool memo_enabled = true;
};

/// Uniform choice among legal moves; reproducible under a fixed seed.
/// Returns nullopt when there is no legal move (caller passes the turn).
std::optional<Decision> random_decide(const BoardLayout& layout,
                                      const GameState& state, PlayerId player,
                                      int dice, Rng& rng);

/// Composite one-step score of a legal move: base exit is a flat 50;
/// a main-track destination scores its relative progress; home-path
/// destinations score 53 plus the home offset; +100 for a capture and +20
/// for a safe destination are additive.
double heuristic_score(const BoardLayout& layout, const GameState& state,
                       PlayerId player, int dice, const Move& move);

/// Highest-scoring legal move, ties broken by lowest token index.
std::optional<Decision> heuristic_decide(const BoardLayout& layout,
                                         const GameState& state,
                                         PlayerId player, int dice);

/// Per-player feature counts consumed by the linear evaluator.
struct PlayerCounts {
  int progress = 0;  // summed relative progress of non-base tokens
  int finished = 0;  // tokens at home_end
  int in_base = 0;   // tokens at -1
  int on_safe = 0;   // tokens on safe main-track squares
};
PlayerCounts count_features(const BoardLayout& layout, const GameState& state,
                            PlayerId player);

/// Two-player linear evaluation from the root player's perspective:
/// w_prog*d_prog + w_fin*d_fin - w_base*d_base + w_safe*d_safe over
/// (root minus opponent) counts, clipped to [-clip, clip].
/// The state must be non-terminal with exactly two active players.
double evaluate_2p(const SearchConfig& cfg, const BoardLayout& layout,
                   const GameState& state, PlayerId root);

/// Per-player raw linear scores, mean-centered; pre-clip. One entry per
/// active player in ascending id order.
std::vector<double> maxn_centered_scores(const SearchConfig& cfg,
                                         const BoardLayout& layout,
                                         const GameState& state);

/// Multiplayer evaluation: centered scores with each entry clipped.
/// Requires 3 or 4 active players (two-player states use evaluate_2p).
std::vector<double> evaluate_maxn(const SearchConfig& cfg,
                                  const BoardLayout& layout,
                                  const GameState& state);

// ---- Transposition cache ----

enum class NodeKind : uint8_t { kChance, kDecision };

/// Key of a cached search node: node kind, canonical state serialization,
/// player to move, dice (decision nodes only) and remaining depth.
struct MemoKey {
  NodeKind kind = NodeKind::kChance;
  std::string state_fp;
  PlayerId player = 0;
  int dice = 0;  // 0 for chance nodes
  int depth = 0;

  bool operator==(const MemoKey&) const = default;
};

struct MemoKeyHash {
  size_t operator()(const MemoKey& k) const {
    uint64_t h = fnv1a64(k.state_fp);
    h = splitmix64(h ^ (static_cast<uint64_t>(k.player) << 1) ^
                   (static_cast<uint64_t>(k.dice) << 8) ^
                   (static_cast<uint64_t>(k.depth) << 16) ^
                   (static_cast<uint64_t>(k.kind) << 24));
    return static_cast<size_t>(h);
  }
};

/// Value store for search nodes. A value stored under a key is returned
/// verbatim on lookup; enabling the cache never changes search results.
template <typename V>
class MemoCache {
 public:
  const V* get(const MemoKey& key) const {
    auto it = map_.find(key);
    return it == map_.end() ? nullptr : &it->second;
  }
  void put(const MemoKey& key, V value) {
    map_.emplace(key, std::move(value));
  }
  size_t size() const { return map_.size(); }
  void clear() { map_.clear(); }

 private:
  std::unordered_map<MemoKey, V, MemoKeyHash> map_;
};

/// Node-expansion counters for one search, for diagnostics and bound checks.
struct SearchStats {
  long decision_nodes = 0;
  long chance_nodes = 0;
  long cache_hits = 0;
};

/// Two-player expectiminimax values. chance averages decision values over
/// the six dice outcomes; terminal states are +1 (root wins) / -1 (root
/// loses); depth 0 cuts off at the evaluator. decision maximizes for the
/// root and minimizes for the opponent; with no legal move the turn passes
/// with the state unchanged. Free-function forms run with a fresh cache.
double chance_value_2p(const SearchConfig& cfg, const BoardLayout& layout,
                       const GameState& state, PlayerId to_move, PlayerId root,
                       int depth, SearchStats* stats = nullptr);
double decision_value_2p(const SearchConfig& cfg, const BoardLayout& layout,
                         const GameState& state, PlayerId to_move,
                         PlayerId root, int dice, int depth,
                         SearchStats* stats = nullptr);

/// Multiplayer (MaxN) analogues: vector values, one entry per active player
/// in ascending id order; the mover maximizes its own component; terminal
/// states give the winner +1 and each loser -1/(n-1).
std::vector<double> chance_value_maxn(const SearchConfig& cfg,
                                      const BoardLayout& layout,
                                      const GameState& state, PlayerId to_move,
                                      int depth, SearchStats* stats = nullptr);
std::vector<double> decision_value_maxn(const SearchConfig& cfg,
                                        const BoardLayout& layout,
                                        const GameState& state,
                                        PlayerId to_move, int dice, int depth,
                                        SearchStats* stats = nullptr);

/// Depth-limited search decision: expectiminimax for two active players,
/// Expectimax-MaxN for three or four. Deterministic; ties broken by lowest
/// token index. Returns nullopt when there is no legal move.
std::optional<Decision> gt_decide(const SearchConfig& cfg,
                                  const BoardLayout& layout,
                                  const GameState& state, PlayerId player,
                                  int dice, SearchStats* stats = nullptr);

}  // namespace ludo

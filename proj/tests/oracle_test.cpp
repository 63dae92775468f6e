#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

// Property suite: the engine's move generator against the path-walking
// oracle, plus the closure/conservation/immunity properties, over a large
// population of random valid states.

#include "ludo/board.hpp"
#include "ludo/rng.hpp"
#include "test_util.hpp"

using namespace ludo;

TEST_CASE("legal_moves equals the brute-force oracle on 10k states x 6 dice") {
  const auto& L = standard_layout();
  Rng rng(20250809);
  long discrepancies = 0;
  for (int i = 0; i < 10000; ++i) {
    const GameState s = testutil::random_state(L, rng);
    REQUIRE(validate_state(L, s).empty());
    for (int dice = 1; dice <= 6; ++dice) {
      const auto engine = legal_moves(L, s, s.current_player, dice);
      const auto oracle = testutil::oracle_moves(L, s, s.current_player, dice);
      if (!(engine == oracle)) ++discrepancies;
    }
  }
  CHECK(discrepancies == 0);
}

TEST_CASE("closure: every legal move leads to a valid state") {
  const auto& L = standard_layout();
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const GameState s = testutil::random_state(L, rng);
    for (int dice = 1; dice <= 6; ++dice) {
      for (const Move& m : legal_moves(L, s, s.current_player, dice)) {
        const GameState next = apply_move(L, s, s.current_player, dice, m);
        CAPTURE(fingerprint(s));
        CAPTURE(dice);
        CHECK(validate_state(L, next).empty());
      }
    }
  }
}

TEST_CASE("token conservation: captures move two tokens, plain moves one") {
  const auto& L = standard_layout();
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const GameState s = testutil::random_state(L, rng);
    for (int dice = 1; dice <= 6; ++dice) {
      for (const Move& m : legal_moves(L, s, s.current_player, dice)) {
        const GameState next = apply_move(L, s, s.current_player, dice, m);
        int deltas = 0;
        for (PlayerId p = 0; p < kMaxPlayers; ++p) {
          if (!s.is_active(p)) continue;
          for (int t = 0; t < kTokensPerPlayer; ++t) {
            if (s.token(p, t) != next.token(p, t)) ++deltas;
          }
        }
        CHECK(deltas == (m.capture_victim ? 2 : 1));
      }
    }
  }
}

TEST_CASE("safe immunity and exact landing") {
  const auto& L = standard_layout();
  Rng rng(13);
  for (int i = 0; i < 3000; ++i) {
    const GameState s = testutil::random_state(L, rng);
    for (int dice = 1; dice <= 6; ++dice) {
      for (const Move& m : legal_moves(L, s, s.current_player, dice)) {
        if (m.capture_victim) {
          CHECK_FALSE(L.is_safe(m.to));
        }
        CHECK(rel_progress(L, s.current_player, m.to) <= kFinishedRel);
      }
    }
  }
}

TEST_CASE("determinism: repeated calls agree") {
  const auto& L = standard_layout();
  Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    const GameState s = testutil::random_state(L, rng);
    for (int dice = 1; dice <= 6; ++dice) {
      const auto a = legal_moves(L, s, s.current_player, dice);
      const auto b = legal_moves(L, s, s.current_player, dice);
      CHECK(a == b);
      for (const Move& m : a) {
        CHECK(apply_move(L, s, s.current_player, dice, m) ==
              apply_move(L, s, s.current_player, dice, m));
      }
    }
  }
}

TEST_CASE("moves are ordered by token index") {
  const auto& L = standard_layout();
  Rng rng(19);
  for (int i = 0; i < 1000; ++i) {
    const GameState s = testutil::random_state(L, rng);
    for (int dice = 1; dice <= 6; ++dice) {
      const auto moves = legal_moves(L, s, s.current_player, dice);
      for (size_t k = 1; k < moves.size(); ++k) {
        CHECK(moves[k - 1].token_index < moves[k].token_index);
      }
    }
  }
}

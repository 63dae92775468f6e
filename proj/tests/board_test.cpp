#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ludo/board.hpp"

using namespace ludo;

namespace {

// Two players, P1 to move: P1 tokens at 43 and 41, two in base; P0 token at
// 49 in capture range.
GameState capture_or_safe_state() {
  GameState s = initial_state({0, 1});
  s.set_token(0, 0, 49);
  s.set_token(1, 0, 43);
  s.set_token(1, 1, 41);
  s.current_player = 1;
  return s;
}

}  // namespace

TEST_CASE("rel_progress maps main track, home path and rejects foreign homes") {
  const auto& L = standard_layout();
  CHECK(rel_progress(L, 1, 43) == 30);
  CHECK(rel_progress(L, 0, 0) == 0);
  CHECK(rel_progress(L, 1, 60) == 54);
  CHECK(rel_progress(L, 0, 51) == 51);
  CHECK(rel_progress(L, 0, 57) == 57);
  CHECK_THROWS_AS(rel_progress(L, 0, 60), LudoError);   // P1's home path
  CHECK_THROWS_AS(rel_progress(L, 0, kBase), LudoError);
  CHECK_THROWS_AS(rel_progress(L, 2, 76), LudoError);
}

TEST_CASE("abs_from_rel inverts rel_progress") {
  const auto& L = standard_layout();
  for (PlayerId p = 0; p < 4; ++p) {
    for (int rel = 0; rel <= 57; ++rel) {
      CHECK(rel_progress(L, p, abs_from_rel(L, p, rel)) == rel);
    }
  }
}

TEST_CASE("layout invariants: starts are safe, home ranges disjoint") {
  const auto& L = standard_layout();
  for (PlayerId p = 0; p < 4; ++p) {
    CHECK(L.is_safe(L.start_square[p]));
    CHECK(L.home_start(p) >= 52);
    CHECK(L.home_end(p) - L.home_start(p) + 1 == 6);
    for (PlayerId q = 0; q < 4; ++q) {
      if (p == q) continue;
      CHECK_FALSE(L.in_home_range(q, L.home_start(p)));
      CHECK_FALSE(L.in_home_range(q, L.home_end(p)));
    }
  }
  for (int sq : L.safe_squares) CHECK(sq < L.main_track_len);
}

TEST_CASE("legal_moves: capture, safe landing and both leave-base candidates") {
  const auto& L = standard_layout();
  const GameState s = capture_or_safe_state();
  const auto moves = legal_moves(L, s, 1, 6);
  REQUIRE(moves.size() == 4);

  CHECK(moves[0].token_index == 0);
  CHECK(moves[0].to == 49);
  REQUIRE(moves[0].capture_victim.has_value());
  CHECK(moves[0].capture_victim->first == 0);
  CHECK(moves[0].capture_victim->second == 0);
  CHECK_FALSE(moves[0].lands_safe);

  CHECK(moves[1].token_index == 1);
  CHECK(moves[1].to == 47);
  CHECK(moves[1].lands_safe);
  CHECK_FALSE(moves[1].capture_victim.has_value());

  // Both base tokens are independently legal candidates for the same start.
  for (int i : {2, 3}) {
    CHECK(moves[i].token_index == i);
    CHECK(moves[i].is_leave_base);
    CHECK(moves[i].from == kBase);
    CHECK(moves[i].to == 13);
    CHECK(moves[i].lands_safe);  // start squares are safe
  }
}

TEST_CASE("legal_moves: base exit requires a six") {
  const auto& L = standard_layout();
  const GameState s = initial_state({0, 1});
  CHECK(legal_moves(L, s, 0, 3).empty());
  CHECK(legal_moves(L, s, 0, 6).size() == 4);
}

TEST_CASE("legal_moves: overshoot past home_end is excluded") {
  const auto& L = standard_layout();
  GameState s = initial_state({0, 1});
  s.set_token(0, 0, 55);  // home path, home_end = 57
  CHECK(legal_moves(L, s, 0, 3).empty());  // 55 + 3 would pass 57
  CHECK(token_block_reason(L, s, 0, 3, 0) == TokenMoveBlock::kOvershoot);
  const auto exact = legal_moves(L, s, 0, 2);
  REQUIRE(exact.size() == 1);
  CHECK(exact[0].to == 57);
  CHECK(exact[0].finishes);
}

TEST_CASE("legal_moves: own stacking blocks, home_end stacks freely") {
  const auto& L = standard_layout();
  GameState s = initial_state({0, 1});
  s.set_token(0, 0, 10);
  s.set_token(0, 1, 13);
  CHECK(legal_moves(L, s, 0, 3).size() == 1);  // token 0 blocked by token 1
  CHECK(token_block_reason(L, s, 0, 3, 0) == TokenMoveBlock::kOwnStacking);

  GameState h = initial_state({0, 1});
  h.set_token(0, 0, 57);  // finished
  h.set_token(0, 1, 55);
  const auto moves = legal_moves(L, h, 0, 2);
  REQUIRE(moves.size() == 1);
  CHECK(moves[0].token_index == 1);
  CHECK(moves[0].to == 57);  // lands on occupied home_end: allowed
}

TEST_CASE("legal_moves: safe squares shield opponents from capture") {
  const auto& L = standard_layout();
  GameState s = initial_state({0, 1});
  s.set_token(0, 0, 5);
  s.set_token(1, 0, 8);  // safe square
  const auto moves = legal_moves(L, s, 0, 3);
  REQUIRE(moves.size() == 1);
  CHECK(moves[0].to == 8);
  CHECK_FALSE(moves[0].capture_victim.has_value());
  CHECK(moves[0].lands_safe);
}

TEST_CASE("apply_move: capture sends the victim to base") {
  const auto& L = standard_layout();
  const GameState s = capture_or_safe_state();
  const auto moves = legal_moves(L, s, 1, 6);
  const GameState after = apply_move(L, s, 1, 6, moves[0]);
  CHECK(after.token(0, 0) == kBase);
  CHECK(after.token(1, 0) == 49);
  CHECK(after.current_player == 1);  // turn transition is separate
  CHECK(validate_state(L, after).empty());
}

TEST_CASE("apply_move: leave-base lands on the start square only") {
  const auto& L = standard_layout();
  const GameState s = capture_or_safe_state();
  const auto moves = legal_moves(L, s, 1, 6);
  const GameState after = apply_move(L, s, 1, 6, moves[2]);
  CHECK(after.token(1, 2) == 13);
  int deltas = 0;
  for (PlayerId p : {0, 1}) {
    for (int t = 0; t < 4; ++t) {
      if (after.token(p, t) != s.token(p, t)) ++deltas;
    }
  }
  CHECK(deltas == 1);
}

TEST_CASE("apply_move rejects moves that are not legal for the inputs") {
  const auto& L = standard_layout();
  const GameState s = capture_or_safe_state();
  Move bogus;
  bogus.token_index = 0;
  bogus.from = 43;
  bogus.to = 44;
  CHECK_THROWS_AS(apply_move(L, s, 1, 6, bogus), LudoError);
}

TEST_CASE("next_player: sixes keep the turn, otherwise ascending cyclic") {
  GameState two = initial_state({0, 1});
  two.current_player = 1;
  CHECK(next_player(two, 6, true) == 1);
  CHECK(next_player(two, 6, false) == 1);
  CHECK(next_player(two, 4, true) == 0);

  GameState four = initial_state({0, 1, 2, 3});
  four.current_player = 3;
  CHECK(next_player(four, 2, false) == 0);

  GameState gap = initial_state({0, 2, 3});
  gap.current_player = 0;
  CHECK(next_player(gap, 1, true) == 2);
}

TEST_CASE("winner: all four tokens at home_end") {
  const auto& L = standard_layout();
  GameState s = initial_state({0, 1});
  CHECK_FALSE(winner(L, s).has_value());
  for (int t = 0; t < 4; ++t) s.set_token(0, t, 57);
  REQUIRE(winner(L, s).has_value());
  CHECK(*winner(L, s) == 0);
  s.set_token(0, 3, 56);
  CHECK_FALSE(winner(L, s).has_value());
}

TEST_CASE("validate_state flags the spec's violations") {
  const auto& L = standard_layout();

  GameState stacked = initial_state({0, 1});
  stacked.set_token(0, 0, 5);
  stacked.set_token(0, 1, 5);
  auto issues = validate_state(L, stacked);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].find("own stacking") != std::string::npos);

  GameState foreign = initial_state({0, 1});
  foreign.set_token(0, 0, 60);  // P1's home path
  issues = validate_state(L, foreign);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].find("foreign home") != std::string::npos);

  GameState shared = initial_state({0, 1});
  shared.set_token(0, 0, 5);
  shared.set_token(1, 0, 5);
  issues = validate_state(L, shared);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].find("non-safe") != std::string::npos);

  CHECK(validate_state(L, capture_or_safe_state()).empty());
}

TEST_CASE("fingerprint: equal states agree, different states differ") {
  const GameState a = capture_or_safe_state();
  GameState b = capture_or_safe_state();
  CHECK(fingerprint(a) == fingerprint(b));
  b.set_token(1, 0, 44);
  CHECK(fingerprint(a) != fingerprint(b));
  GameState c = a;
  c.current_player = 0;
  CHECK(fingerprint(a) != fingerprint(c));
}

TEST_CASE("player_progress sums non-base relative progress") {
  const auto& L = standard_layout();
  GameState s = initial_state({0, 1});
  CHECK(player_progress(L, s, 0) == 0);
  s.set_token(0, 0, 57);
  s.set_token(0, 1, 1);
  CHECK(player_progress(L, s, 0) == 58);
  s.set_token(1, 0, 43);  // rel 30 for P1
  CHECK(player_progress(L, s, 1) == 30);
}

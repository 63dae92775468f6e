#include "ludo/spots.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ludo {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct CategoryName {
  Category cat;
  const char* name;
};

constexpr std::array<CategoryName, kNumCategories> kCategoryNames{{
    {Category::kBlocked, "blocked"},
    {Category::kCapture, "capture"},
    {Category::kCaptureVsHome, "capture_vs_home"},
    {Category::kCaptureVsHomeFinish, "capture_vs_home_finish"},
    {Category::kCaptureVsOpenExisting, "capture_vs_openexisting"},
    {Category::kCaptureVsSafe, "capture_vs_safe"},
    {Category::kExtraTurn, "extra_turn"},
    {Category::kGrudgePaired, "grudge_paired"},
    {Category::kHomeEntry, "home_entry"},
    {Category::kOvershoot, "overshoot"},
    {Category::kSafe, "safe"},
    {Category::kSafeVsOpenExisting, "safe_vs_openexisting"},
}};

}  // namespace

const std::vector<Category>& all_categories() {
  static const std::vector<Category> cats = [] {
    std::vector<Category> v;
    for (const auto& c : kCategoryNames) v.push_back(c.cat);
    return v;
  }();
  return cats;
}

std::string to_string(Category c) {
  for (const auto& e : kCategoryNames) {
    if (e.cat == c) return e.name;
  }
  return "unknown";
}

std::optional<Category> category_from_string(const std::string& name) {
  for (const auto& e : kCategoryNames) {
    if (name == e.name) return e.cat;
  }
  if (name == "grudge") return Category::kGrudgePaired;  // id-file alias
  return std::nullopt;
}

// ---- option classification & predicates ----

namespace {

struct OptionSet {
  bool any = false;
  bool capture = false;
  bool safe = false;          // safe landing by an on-board token
  bool home_any = false;      // entry or progress, including finish
  bool home_advance = false;  // entry or progress short of home_end
  bool finish = false;
  bool open = false;          // leave base
  bool move_existing = false;
  bool stacking_blocked = false;  // some token blocked by own stacking
  bool overshoot_blocked = false;
};

OptionSet classify(const BoardLayout& layout, const SpotScenario& spot) {
  OptionSet o;
  const PlayerId p = spot.llm_player_id;
  for (const Move& m : legal_moves(layout, spot.state, p, spot.dice)) {
    o.any = true;
    if (m.capture_victim) o.capture = true;
    if (m.lands_safe && !m.is_leave_base) o.safe = true;
    if (m.enters_home) {
      o.home_any = true;
      (m.finishes ? o.finish : o.home_advance) = true;
    }
    (m.is_leave_base ? o.open : o.move_existing) = true;
  }
  for (int t = 0; t < kTokensPerPlayer; ++t) {
    switch (token_block_reason(layout, spot.state, p, spot.dice, t)) {
      case TokenMoveBlock::kOwnStacking:
        o.stacking_blocked = true;
        break;
      case TokenMoveBlock::kOvershoot:
        o.overshoot_blocked = true;
        break;
      default:
        break;
    }
  }
  return o;
}

PredicateResult fail(const std::string& reason) { return {false, reason}; }
PredicateResult pass() { return {true, ""}; }

}  // namespace

PredicateResult category_predicate(Category category, const BoardLayout& layout,
                                   const SpotScenario& spot) {
  const OptionSet o = classify(layout, spot);
  switch (category) {
    case Category::kBlocked:
      if (!o.stacking_blocked) return fail("no token blocked by own stacking");
      if (!o.any) return fail("no legal alternative exists");
      return pass();
    case Category::kOvershoot:
      if (!o.overshoot_blocked) return fail("no token excluded by overshoot");
      if (!o.any) return fail("no legal alternative exists");
      return pass();
    case Category::kCapture:
      if (!o.capture) return fail("no capture move");
      if (o.home_any) return fail("competing home option present");
      if (o.safe) return fail("competing safe option present");
      if (o.open) return fail("competing leave-base option present");
      return pass();
    case Category::kHomeEntry:
      if (!o.home_advance) return fail("no home entry/advance move");
      if (o.finish) return fail("competing home-finish option present");
      if (o.capture) return fail("competing capture option present");
      if (o.safe) return fail("competing safe option present");
      if (o.open) return fail("competing leave-base option present");
      return pass();
    case Category::kSafe:
      if (!o.safe) return fail("no safe-square move");
      if (o.capture) return fail("competing capture option present");
      if (o.home_any) return fail("competing home option present");
      if (o.open) return fail("competing leave-base option present");
      return pass();
    case Category::kExtraTurn:
      if (spot.dice != 6) return fail("dice=6 scenario");
      if (!o.open) return fail("no leave-base option");
      if (!o.move_existing) return fail("no move-existing option");
      if (o.capture) return fail("competing capture option present");
      if (o.home_any) return fail("competing home option present");
      return pass();
    case Category::kCaptureVsHome:
      if (!o.capture) return fail("no capture move");
      if (!o.home_advance) return fail("no home entry/advance move");
      return pass();
    case Category::kCaptureVsHomeFinish:
      if (!o.capture) return fail("no capture move");
      if (!o.finish) return fail("no home-finish move");
      return pass();
    case Category::kCaptureVsOpenExisting:
      if (spot.dice != 6) return fail("dice=6 scenario");
      if (!o.capture) return fail("no capture move");
      if (!o.open) return fail("no leave-base option");
      return pass();
    case Category::kCaptureVsSafe:
      if (!o.capture) return fail("no capture move");
      if (!o.safe) return fail("no safe-square move");
      return pass();
    case Category::kSafeVsOpenExisting:
      if (spot.dice != 6) return fail("dice=6 scenario");
      if (!o.safe) return fail("no safe-square move");
      if (!o.open) return fail("no leave-base option");
      return pass();
    case Category::kGrudgePaired:
      if (!o.capture) return fail("no retaliatory capture available");
      return pass();
  }
  return fail("unknown category");
}

// ---- validation ----

std::vector<std::string> validate_spot(const BoardLayout& layout,
                                       const SpotScenario& spot) {
  std::vector<std::string> issues;
  if (spot.id.empty()) issues.push_back("empty id");
  if (spot.dice < 1 || spot.dice > 6) {
    issues.push_back("dice " + std::to_string(spot.dice) + " out of [1, 6]");
  }
  if (!spot.state.is_active(spot.llm_player_id)) {
    issues.push_back("llm_player_id not among active players");
  }
  if (spot.state.current_player != spot.llm_player_id) {
    issues.push_back("current_player must equal llm_player_id");
  }
  for (auto& v : validate_state(layout, spot.state)) {
    issues.push_back("board: " + v);
  }
  const bool is_grudge = spot.category == Category::kGrudgePaired;
  if (is_grudge && !spot.history_text) {
    issues.push_back("grudge_paired entry missing history_text");
  }
  if (!is_grudge && spot.history_text) {
    issues.push_back("history_text present outside grudge_paired");
  }
  if (!issues.empty()) return issues;  // predicate needs an engine-valid board

  if (winner(layout, spot.state)) issues.push_back("board is terminal");
  if (legal_moves(layout, spot.state, spot.llm_player_id, spot.dice).empty()) {
    issues.push_back("no legal moves for the acting player");
  }
  const auto pred = category_predicate(spot.category, layout, spot);
  if (!pred.holds) {
    issues.push_back("category predicate failed: " + pred.reason);
  }
  return issues;
}

// ---- JSON I/O ----

namespace {

SpotScenario parse_entry(const json& e, const BoardLayout& layout) {
  SpotScenario s;
  if (!e.is_object()) throw LudoError("entry is not an object");
  s.id = e.value("id", "");
  if (!e.contains("scenario")) throw LudoError("missing field: scenario");
  const std::string cat_name = e.at("scenario").get<std::string>();
  const auto cat = category_from_string(cat_name);
  if (!cat) throw LudoError("unknown category label: " + cat_name);
  s.category = *cat;
  for (const char* f : {"players", "llm_player_id", "current_player", "dice", "tokens"}) {
    if (!e.contains(f)) throw LudoError(std::string("missing field: ") + f);
  }
  const auto players = e.at("players").get<std::vector<int>>();
  s.state = initial_state(players);
  s.llm_player_id = e.at("llm_player_id").get<int>();
  s.state.current_player = static_cast<int8_t>(e.at("current_player").get<int>());
  s.dice = e.at("dice").get<int>();
  const auto& tokens = e.at("tokens");
  if (!tokens.is_object()) throw LudoError("tokens must be an object");
  std::set<int> seen;
  for (auto it = tokens.begin(); it != tokens.end(); ++it) {
    int p;
    try {
      p = std::stoi(it.key());
    } catch (const std::exception&) {
      throw LudoError("tokens key is not a player id: " + it.key());
    }
    if (!s.state.is_active(p)) throw LudoError("tokens key " + it.key() + " is not an active player");
    const auto positions = it.value().get<std::vector<int>>();
    if (positions.size() != kTokensPerPlayer) {
      throw LudoError("player " + it.key() + " must have exactly 4 token positions");
    }
    for (int t = 0; t < kTokensPerPlayer; ++t) s.state.set_token(p, t, positions[t]);
    seen.insert(p);
  }
  if (static_cast<int>(seen.size()) != s.state.num_active()) {
    throw LudoError("tokens must cover every active player");
  }
  s.note = e.value("note", "");
  if (e.contains("history_text") && !e.at("history_text").is_null()) {
    s.history_text = e.at("history_text").get<std::string>();
  }
  (void)layout;
  return s;
}

}  // namespace

LoadResult load_spots(const std::string& json_text, const BoardLayout& layout) {
  LoadResult result;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const std::exception& ex) {
    result.errors.push_back({"<file>", std::string("JSON parse error: ") + ex.what()});
    return result;
  }
  if (doc.is_null()) return result;
  if (!doc.is_array()) {
    result.errors.push_back({"<file>", "top-level JSON value must be an array of spot entries"});
    return result;
  }
  for (size_t i = 0; i < doc.size(); ++i) {
    std::string id = doc[i].is_object() ? doc[i].value("id", "entry[" + std::to_string(i) + "]")
                                        : "entry[" + std::to_string(i) + "]";
    try {
      SpotScenario s = parse_entry(doc[i], layout);
      if (auto issues = validate_spot(layout, s); !issues.empty()) {
        std::string reason;
        for (const auto& v : issues) {
          if (!reason.empty()) reason += "; ";
          reason += v;
        }
        result.errors.push_back({id, reason});
        continue;
      }
      result.spots.push_back(std::move(s));
    } catch (const std::exception& ex) {
      result.errors.push_back({id, ex.what()});
    }
  }
  return result;
}

std::string emit_spots(const std::vector<SpotScenario>& spots) {
  ordered_json arr = ordered_json::array();
  for (const SpotScenario& s : spots) {
    ordered_json e;
    e["id"] = s.id;
    e["scenario"] = to_string(s.category);
    e["players"] = s.players();
    e["llm_player_id"] = s.llm_player_id;
    e["current_player"] = static_cast<int>(s.state.current_player);
    e["dice"] = s.dice;
    ordered_json tokens = ordered_json::object();
    for (PlayerId p : s.players()) {
      std::vector<int> positions;
      for (int t = 0; t < kTokensPerPlayer; ++t) positions.push_back(s.state.token(p, t));
      tokens[std::to_string(p)] = positions;
    }
    e["tokens"] = tokens;
    e["note"] = s.note;
    if (s.history_text) e["history_text"] = *s.history_text;
    arr.push_back(e);
  }
  return arr.dump(2) + "\n";
}

// ---- grudge pairing ----

std::string neutral_history_text() { return "No prior conflicts noted."; }

std::string grudge_history_text(PlayerId aggressor) {
  return "Player " + std::to_string(aggressor) +
         " captured one of your tokens earlier in the game.";
}

std::optional<PlayerId> aggressor_from_history(const std::string& history_text) {
  static const std::regex re(R"(Player\s+(\d+))");
  std::smatch m;
  if (std::regex_search(history_text, m, re)) {
    return std::stoi(m[1].str());
  }
  return std::nullopt;
}

GrudgePair pair_grudge(const SpotScenario& base, PlayerId aggressor,
                       const std::string& neutral_text,
                       const std::string& grudge_text,
                       const BoardLayout& layout) {
  bool retaliation = false;
  for (const Move& m :
       legal_moves(layout, base.state, base.llm_player_id, base.dice)) {
    if (m.capture_victim && m.capture_victim->first == aggressor) {
      retaliation = true;
      break;
    }
  }
  if (!retaliation) {
    throw LudoError("pair_grudge: no retaliation move against player " +
                    std::to_string(aggressor));
  }
  GrudgePair pair;
  pair.aggressor = aggressor;
  pair.neutral = base;
  pair.neutral.id = base.id + "_a";
  pair.neutral.category = Category::kGrudgePaired;
  pair.neutral.history_text = neutral_text;
  pair.grudge = base;
  pair.grudge.id = base.id + "_b";
  pair.grudge.category = Category::kGrudgePaired;
  pair.grudge.history_text = grudge_text;
  return pair;
}

std::vector<GrudgePair> collect_grudge_pairs(const std::vector<SpotScenario>& spots) {
  auto strip = [](const std::string& id) -> std::optional<std::pair<std::string, char>> {
    if (id.size() > 2 && id[id.size() - 2] == '_' &&
        (id.back() == 'a' || id.back() == 'b')) {
      return std::make_pair(id.substr(0, id.size() - 2), id.back());
    }
    return std::nullopt;
  };
  std::map<std::string, std::pair<const SpotScenario*, const SpotScenario*>> groups;
  for (const SpotScenario& s : spots) {
    if (s.category != Category::kGrudgePaired) continue;
    const auto key = strip(s.id);
    if (!key) throw LudoError("grudge spot id lacks _a/_b suffix: " + s.id);
    auto& slot = groups[key->first];
    (key->second == 'a' ? slot.first : slot.second) = &s;
  }
  std::vector<GrudgePair> pairs;
  for (const auto& [prefix, sides] : groups) {
    if (!sides.first || !sides.second) continue;  // incomplete pair (partial file)
    const SpotScenario& a = *sides.first;
    const SpotScenario& b = *sides.second;
    if (a.state != b.state || a.dice != b.dice ||
        a.llm_player_id != b.llm_player_id) {
      throw LudoError("grudge pair " + prefix + ": boards differ between _a and _b");
    }
    const auto aggressor = aggressor_from_history(b.history_text.value_or(""));
    if (!aggressor) {
      throw LudoError("grudge pair " + prefix + ": cannot identify aggressor from history");
    }
    pairs.push_back(GrudgePair{a, b, *aggressor});
  }
  return pairs;
}

// ---- generation ----

namespace {

// Constructive placement: option tokens are placed first with their origin
// and destination squares reserved, fillers avoid reserved squares so they
// cannot block an option or create an accidental capture.
struct Builder {
  const BoardLayout& layout;
  Rng& rng;
  int player_count;
  PlayerId actor;
  int dice = 1;
  std::array<std::vector<int>, kMaxPlayers> placed;
  std::set<int> reserved;

  Builder(const BoardLayout& l, Rng& r, int k)
      : layout(l), rng(r), player_count(k), actor(r.uniform_int(0, k - 1)) {}

  std::vector<PlayerId> opponents() const {
    std::vector<PlayerId> out;
    for (PlayerId p = 0; p < player_count; ++p) {
      if (p != actor) out.push_back(p);
    }
    return out;
  }

  bool occupied(int sq) const {
    for (const auto& v : placed) {
      for (int pos : v) {
        if (pos == sq) return true;
      }
    }
    return false;
  }
  bool own_occupied(PlayerId p, int sq) const {
    for (int pos : placed[p]) {
      if (pos == sq) return true;
    }
    return false;
  }
  int remaining(PlayerId p) const {
    return kTokensPerPlayer - static_cast<int>(placed[p].size());
  }

  bool can_sit(PlayerId p, int pos) const {
    if (pos == kBase) return true;
    if (layout.on_main_track(pos)) {
      if (own_occupied(p, pos)) return false;
      if (!layout.is_safe(pos) && occupied(pos)) return false;
      return true;
    }
    if (layout.in_home_range(p, pos)) {
      return pos == layout.home_end(p) || !own_occupied(p, pos);
    }
    return false;
  }

  bool put(PlayerId p, int pos) {
    if (remaining(p) <= 0 || !can_sit(p, pos)) return false;
    placed[p].push_back(pos);
    return true;
  }

  // Places an actor token at relative progress from_rel so that its move this
  // turn is available; reserves both endpoint squares.
  bool place_mover(int from_rel, bool dest_must_be_free) {
    if (from_rel < 0 || from_rel + dice > kFinishedRel) return false;
    const int from_abs = abs_from_rel(layout, actor, from_rel);
    const int dest_abs = abs_from_rel(layout, actor, from_rel + dice);
    if (reserved.count(from_abs) || reserved.count(dest_abs)) return false;
    if (dest_abs != layout.home_end(actor) && own_occupied(actor, dest_abs)) return false;
    if (dest_must_be_free && occupied(dest_abs)) return false;
    if (!put(actor, from_abs)) return false;
    reserved.insert(from_abs);
    reserved.insert(dest_abs);
    return true;
  }

  // Capture option: victim on the mover's non-safe main destination.
  bool add_capture(PlayerId victim_owner, int max_victim_rel = 48) {
    for (int tries = 0; tries < 40; ++tries) {
      const int from_rel = rng.uniform_int(1, layout.main_track_len - 1 - dice);
      const int dest_abs = abs_from_rel(layout, actor, from_rel + dice);
      if (layout.is_safe(dest_abs)) continue;
      if (occupied(dest_abs) || reserved.count(dest_abs)) continue;
      if (rel_progress(layout, victim_owner, dest_abs) > max_victim_rel) continue;
      if (!put(victim_owner, dest_abs)) continue;
      if (place_mover(from_rel, /*dest_must_be_free=*/false)) return true;
      placed[victim_owner].pop_back();
    }
    return false;
  }

  // Safe-landing option: on-board token whose destination is a safe square.
  bool add_safe_landing() {
    auto squares = layout.safe_squares;
    for (int i = 7; i > 0; --i) std::swap(squares[i], squares[rng.uniform_int(0, i)]);
    for (int sq : squares) {
      const int dest_rel = rel_progress(layout, actor, sq);
      if (dest_rel < dice) continue;
      if (occupied(sq) || reserved.count(sq)) continue;
      if (place_mover(dest_rel - dice, /*dest_must_be_free=*/true)) return true;
    }
    return false;
  }

  // Home option: destination in [52, 56] (advance) or 57 (finish).
  bool add_home_move(bool finish) {
    for (int tries = 0; tries < 20; ++tries) {
      const int dest_rel = finish ? kFinishedRel : rng.uniform_int(52, 56);
      if (place_mover(dest_rel - dice, /*dest_must_be_free=*/!finish)) return true;
      if (finish) return false;  // single possible origin
    }
    return false;
  }

  // Plain filler move: stays on the main track, lands on a free non-safe square.
  bool add_plain_mover() {
    for (int tries = 0; tries < 40; ++tries) {
      const int from_rel = rng.uniform_int(0, layout.main_track_len - 1 - dice);
      const int dest_abs = abs_from_rel(layout, actor, from_rel + dice);
      if (layout.is_safe(dest_abs) || occupied(dest_abs)) continue;
      if (place_mover(from_rel, /*dest_must_be_free=*/true)) return true;
    }
    return false;
  }

  // Keeps the start square free and guarantees a leave-base option exists.
  bool require_open() {
    const int start = layout.start_square[actor];
    if (own_occupied(actor, start) || remaining(actor) == 0) return false;
    reserved.insert(start);
    return true;
  }

  // Token pair where the rear token is blocked by its own forward token.
  bool add_stacking_block() {
    for (int tries = 0; tries < 40; ++tries) {
      const int rear_rel = rng.uniform_int(0, layout.main_track_len - 1 - 2 * dice);
      const int front_rel = rear_rel + dice;
      const int rear_abs = abs_from_rel(layout, actor, rear_rel);
      if (reserved.count(rear_abs) || !can_sit(actor, rear_abs)) continue;
      if (!place_mover(front_rel, /*dest_must_be_free=*/true)) continue;
      if (!put(actor, rear_abs)) return false;
      reserved.insert(rear_abs);
      return true;
    }
    return false;
  }

  // Home-path token whose roll would pass home_end.
  bool add_overshooter() {
    const int lo = std::max(52, kFinishedRel + 1 - dice);
    if (lo > 56) return false;
    const int rel = rng.uniform_int(lo, 56);
    const int abs = abs_from_rel(layout, actor, rel);
    if (reserved.count(abs) || !put(actor, abs)) return false;
    reserved.insert(abs);
    return true;
  }

  // Remaining actor tokens for categories that must not expose a leave-base
  // option on dice 6: block the start with a plain mover when possible.
  bool settle_actor_remainder(bool open_allowed) {
    if (dice == 6 && !open_allowed && remaining(actor) > 0) {
      if (!own_occupied(actor, layout.start_square[actor])) {
        if (!place_mover(0, /*dest_must_be_free=*/true)) {
          while (remaining(actor) > 0) {
            if (!add_plain_mover()) return false;
          }
          return true;
        }
      }
    }
    while (remaining(actor) > 0) {
      if (dice != 6 || open_allowed || own_occupied(actor, layout.start_square[actor])) {
        if (!put(actor, kBase)) return false;
      } else if (!add_plain_mover()) {
        return false;
      }
    }
    return true;
  }

  bool fill_opponent_token(PlayerId o) {
    const int roll = rng.uniform_int(0, 99);
    if (roll < 55) return put(o, kBase);
    if (roll < 70) {
      const int pos = layout.home_start(o) + rng.uniform_int(0, kHomePathLen - 1);
      return can_sit(o, pos) ? put(o, pos) : put(o, kBase);
    }
    if (roll < 82) {
      const int sq = layout.safe_squares[rng.uniform_int(0, 7)];
      if (!reserved.count(sq) && can_sit(o, sq)) return put(o, sq);
      return put(o, kBase);
    }
    for (int tries = 0; tries < 10; ++tries) {
      const int sq = rng.uniform_int(0, layout.main_track_len - 1);
      if (reserved.count(sq) || !can_sit(o, sq)) continue;
      return put(o, sq);
    }
    return put(o, kBase);
  }

  bool fill_opponents() {
    for (PlayerId o : opponents()) {
      while (remaining(o) > 0) {
        if (!fill_opponent_token(o)) return false;
      }
    }
    return true;
  }

  GameState finish_state() {
    GameState s;
    for (auto& row : s.tokens) row.fill(kBase);
    for (PlayerId p = 0; p < player_count; ++p) {
      s.active_mask |= static_cast<uint8_t>(1u << p);
      auto positions = placed[p];
      positions.resize(kTokensPerPlayer, kBase);
      for (int i = kTokensPerPlayer - 1; i > 0; --i) {
        std::swap(positions[i], positions[rng.uniform_int(0, i)]);
      }
      for (int t = 0; t < kTokensPerPlayer; ++t) s.set_token(p, t, positions[t]);
    }
    s.current_player = static_cast<int8_t>(actor);
    return s;
  }
};

struct BuildOutcome {
  GameState state;
  PlayerId actor = 0;
  int dice = 1;
  PlayerId aggressor = -1;  // grudge only
  std::string note;
};

std::optional<BuildOutcome> build_board(Category cat, int player_count, Rng& rng,
                                        const BoardLayout& layout) {
  Builder b(layout, rng, player_count);
  const auto opps = b.opponents();
  const PlayerId opp = opps[rng.uniform_int(0, static_cast<int>(opps.size()) - 1)];
  BuildOutcome out;

  switch (cat) {
    case Category::kCapture:
      b.dice = rng.uniform_int(1, 6);
      if (!b.add_capture(opp)) return std::nullopt;
      if (!b.add_plain_mover()) return std::nullopt;
      if (!b.settle_actor_remainder(/*open_allowed=*/false)) return std::nullopt;
      out.note = "A capture is available with no competing option.";
      break;
    case Category::kHomeEntry:
      b.dice = rng.uniform_int(1, 6);
      if (!b.add_home_move(/*finish=*/false)) return std::nullopt;
      if (!b.add_plain_mover()) return std::nullopt;
      if (!b.settle_actor_remainder(/*open_allowed=*/false)) return std::nullopt;
      out.note = "A home-path move is available without competing options.";
      break;
    case Category::kSafe:
      b.dice = rng.uniform_int(1, 6);
      if (!b.add_safe_landing()) return std::nullopt;
      if (!b.add_plain_mover()) return std::nullopt;
      if (!b.settle_actor_remainder(/*open_allowed=*/false)) return std::nullopt;
      out.note = "A safe-square move is available without competing options.";
      break;
    case Category::kExtraTurn:
      b.dice = 6;
      if (!b.require_open()) return std::nullopt;
      if (!b.add_plain_mover()) return std::nullopt;
      if (rng.uniform_int(0, 1) && !b.add_plain_mover()) return std::nullopt;
      while (b.remaining(b.actor) > 0) {
        if (!b.put(b.actor, kBase)) return std::nullopt;
      }
      out.note = "Dice is 6: bring out a new token or advance an existing one.";
      break;
    case Category::kCaptureVsHome:
      b.dice = rng.uniform_int(1, 6);
      if (!b.add_capture(opp)) return std::nullopt;
      if (!b.add_home_move(/*finish=*/false)) return std::nullopt;
      if (!b.settle_actor_remainder(/*open_allowed=*/true)) return std::nullopt;
      out.note = "One token can capture; another can advance on the home path.";
      break;
    case Category::kCaptureVsHomeFinish:
      b.dice = rng.uniform_int(1, 6);
      if (!b.add_capture(opp, /*max_victim_rel=*/40)) return std::nullopt;
      if (!b.add_home_move(/*finish=*/true)) return std::nullopt;
      if (!b.settle_actor_remainder(/*open_allowed=*/true)) return std::nullopt;
      out.note = "One token can capture; another can finish at home_end.";
      break;
    case Category::kCaptureVsOpenExisting:
      b.dice = 6;
      if (!b.require_open()) return std::nullopt;
      if (!b.add_capture(opp)) return std::nullopt;
      while (b.remaining(b.actor) > 0) {
        if (!b.put(b.actor, kBase)) return std::nullopt;
      }
      out.note = "One token can capture; a new token can be opened from base.";
      break;
    case Category::kCaptureVsSafe:
      b.dice = rng.uniform_int(1, 6);
      if (!b.add_capture(opp)) return std::nullopt;
      if (!b.add_safe_landing()) return std::nullopt;
      if (!b.settle_actor_remainder(/*open_allowed=*/true)) return std::nullopt;
      out.note = "One capture option and one safe-square option.";
      break;
    case Category::kSafeVsOpenExisting:
      b.dice = 6;
      if (!b.require_open()) return std::nullopt;
      if (!b.add_safe_landing()) return std::nullopt;
      while (b.remaining(b.actor) > 0) {
        if (!b.put(b.actor, kBase)) return std::nullopt;
      }
      out.note = "One token can reach a safe square; a new token can be opened.";
      break;
    case Category::kBlocked:
      b.dice = rng.uniform_int(1, 6);
      if (!b.add_stacking_block()) return std::nullopt;
      if (!b.settle_actor_remainder(/*open_allowed=*/true)) return std::nullopt;
      out.note = "One token is blocked by its own token; a valid alternative exists.";
      break;
    case Category::kOvershoot:
      b.dice = rng.uniform_int(2, 6);
      if (!b.add_overshooter()) return std::nullopt;
      if (!b.add_plain_mover()) return std::nullopt;
      if (!b.settle_actor_remainder(/*open_allowed=*/true)) return std::nullopt;
      out.note = "One token would overshoot home_end; an alternative exists.";
      break;
    case Category::kGrudgePaired:
      b.dice = rng.uniform_int(1, 6);
      if (!b.add_capture(opp)) return std::nullopt;
      if (!b.add_plain_mover()) return std::nullopt;
      if (!b.settle_actor_remainder(/*open_allowed=*/true)) return std::nullopt;
      out.aggressor = opp;
      out.note = "A retaliatory capture against player " + std::to_string(opp) +
                 " is available.";
      break;
  }

  if (!b.fill_opponents()) return std::nullopt;
  out.state = b.finish_state();
  out.actor = b.actor;
  out.dice = b.dice;
  return out;
}

std::string sequence_id(Category cat, int player_count, int seq) {
  std::ostringstream id;
  if (cat == Category::kGrudgePaired) {
    id << "grudge_pair" << player_count << "p_";
  } else {
    id << to_string(cat) << "_" << player_count << "p_";
  }
  id.fill('0');
  id.width(3);
  id << seq;
  return id.str();
}

}  // namespace

std::vector<SpotScenario> generate_spots(Category category, int player_count,
                                         int n, Rng& rng,
                                         const BoardLayout& layout,
                                         int attempt_budget) {
  if (player_count < 2 || player_count > kMaxPlayers) {
    throw LudoError("generate_spots: player_count must be in [2, 4]");
  }
  if (n < 1) throw LudoError("generate_spots: n must be >= 1");

  std::vector<SpotScenario> out;
  int produced = 0;
  for (int attempts = 0; produced < n; ++attempts) {
    if (attempts >= attempt_budget) {
      throw LudoError("generate_spots: sampling budget exhausted for category " +
                      to_string(category));
    }
    auto built = build_board(category, player_count, rng, layout);
    if (!built) continue;

    SpotScenario s;
    s.id = sequence_id(category, player_count, produced + 1);
    s.category = category;
    s.llm_player_id = built->actor;
    s.dice = built->dice;
    s.state = built->state;
    s.note = built->note;

    if (category == Category::kGrudgePaired) {
      GrudgePair pair;
      try {
        pair = pair_grudge(s, built->aggressor, neutral_history_text(),
                           grudge_history_text(built->aggressor), layout);
      } catch (const LudoError&) {
        continue;
      }
      if (!validate_spot(layout, pair.neutral).empty() ||
          !validate_spot(layout, pair.grudge).empty()) {
        continue;
      }
      out.push_back(pair.neutral);
      out.push_back(pair.grudge);
    } else {
      if (!validate_spot(layout, s).empty()) continue;
      out.push_back(std::move(s));
    }
    ++produced;
  }
  return out;
}

}  // namespace ludo

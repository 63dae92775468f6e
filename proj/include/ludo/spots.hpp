#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ludo/board.hpp"
#include "ludo/rng.hpp"

namespace ludo {

/// The twelve benchmark decision categories.
enum class Category {
  kBlocked,
  kCapture,
  kCaptureVsHome,
  kCaptureVsHomeFinish,
  kCaptureVsOpenExisting,
  kCaptureVsSafe,
  kExtraTurn,
  kGrudgePaired,
  kHomeEntry,
  kOvershoot,
  kSafe,
  kSafeVsOpenExisting,
};

inline constexpr int kNumCategories = 12;

const std::vector<Category>& all_categories();
std::string to_string(Category c);
std::optional<Category> category_from_string(const std::string& name);

/// One benchmark decision point: a validated board, the dice roll, the acting
/// player (always the evaluated player) and the category being isolated.
/// history_text is present only for grudge_paired entries.
struct SpotScenario {
  std::string id;
  Category category = Category::kCapture;
  PlayerId llm_player_id = 0;
  int dice = 1;
  GameState state;  // active players, token positions, current player
  std::string note;
  std::optional<std::string> history_text;

  std::vector<PlayerId> players() const { return state.active_players(); }
  PlayerId current_player() const { return state.current_player; }

  bool operator==(const SpotScenario&) const = default;
};

/// Two spots with identical boards differing only in narrative history.
struct GrudgePair {
  SpotScenario neutral;  // id suffix _a
  SpotScenario grudge;   // id suffix _b
  PlayerId aggressor = 0;
};

struct SpotIssue {
  std::string id;  // entry id when known, else a positional marker
  std::string reason;
};

struct LoadResult {
  std::vector<SpotScenario> spots;
  std::vector<SpotIssue> errors;
};

/// Parses a spot file (a JSON array of entries). Malformed entries are
/// reported with id and reason, never silently dropped; entries that parse
/// but fail validation are also routed to errors.
LoadResult load_spots(const std::string& json_text,
                      const BoardLayout& layout = standard_layout());

/// Canonical JSON for a spot list; load_spots(emit_spots(s)) round-trips
/// field-for-field.
std::string emit_spots(const std::vector<SpotScenario>& spots);

/// Schema and engine checks for one spot: field constraints, engine-valid
/// board, history iff grudge, and the category predicate. Empty on success.
std::vector<std::string> validate_spot(const BoardLayout& layout,
                                       const SpotScenario& spot);

struct PredicateResult {
  bool holds = false;
  std::string reason;  // first failing condition when !holds
};

/// Evaluates a category's defining condition against the spot's legal moves.
PredicateResult category_predicate(Category category, const BoardLayout& layout,
                                   const SpotScenario& spot);

/// Default narrative templates for grudge pairs.
std::string neutral_history_text();
std::string grudge_history_text(PlayerId aggressor);

/// Aggressor named by a grudge narrative ("Player <k> ..."), if present.
std::optional<PlayerId> aggressor_from_history(const std::string& history_text);

/// Builds the _a/_b pair for a grudge-valid base spot: identical boards and
/// dice, differing only in history_text and id suffix. Throws when no capture
/// against the aggressor exists.
GrudgePair pair_grudge(const SpotScenario& base, PlayerId aggressor,
                       const std::string& neutral_text,
                       const std::string& grudge_text,
                       const BoardLayout& layout = standard_layout());

/// Rejection-samples engine-valid boards until the category predicate holds.
/// player_count in [2, 4]; ids follow "<category>_<k>p_<seq>". For
/// grudge_paired, n counts boards and the result holds 2n entries (_a then
/// _b for each board). Throws after the attempt budget is exhausted.
std::vector<SpotScenario> generate_spots(Category category, int player_count,
                                         int n, Rng& rng,
                                         const BoardLayout& layout = standard_layout(),
                                         int attempt_budget = 100000);

/// Groups a mixed spot list into grudge pairs by shared id prefix.
std::vector<GrudgePair> collect_grudge_pairs(const std::vector<SpotScenario>& spots);

}  // namespace ludo

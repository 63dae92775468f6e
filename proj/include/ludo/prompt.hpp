#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ludo/board.hpp"
#include "ludo/rng.hpp"
#include "ludo/spots.hpp"

namespace ludo {

enum class Persona { kNone, kAggressive, kGreedy, kSafe, kUnforgiving };

const std::vector<Persona>& all_personas();
std::string to_string(Persona p);
std::optional<Persona> persona_from_string(const std::string& name);

/// Persona instruction text injected into the PERSONA block; empty for kNone.
std::string persona_text(Persona p);

/// A prompt request: which spot, which persona block, and whether the
/// history block is included (requires spot.history_text).
struct PromptSpec {
  SpotScenario spot;
  Persona persona = Persona::kNone;
  bool include_history = false;
};

/// Renders the full evaluation prompt: role header, board/position system,
/// token states, the twelve game rules, the current game state with every
/// field filled, optional PERSONA and HISTORY/CONTEXT blocks, the closing
/// instruction and the strict output format. Byte-stable for fixed inputs.
std::string render_prompt(const PromptSpec& spec,
                          const BoardLayout& layout = standard_layout());

/// Outcome of parsing one raw model response against the strict
/// "<int> | <one line reason>" format.
struct ParsedResponse {
  std::optional<int> token_index;
  std::string reason;
  bool format_valid = false;
};

struct ParseOptions {
  /// Accept a bare in-range integer with no " | reason" part. Off by
  /// default: the strict format names both parts.
  bool lenient_index_only = false;
};

/// Scans the response line by line and parses the first line matching
/// "<int> | <reason>" with the integer in 0..3. Out-of-range integers and
/// everything else are format-invalid.
ParsedResponse parse_response(const std::string& text, ParseOptions opts = {});

/// A response resolved against the spot's legal moves. final_move is always
/// legal; the invalid flags describe the raw output before fallback.
struct AdjudicatedDecision {
  Move final_move;
  std::optional<int> chosen_token;  // parsed index, when format-valid
  bool was_format_invalid = false;
  bool was_move_invalid = false;
  bool chose_blocked = false;    // chosen token blocked by own stacking
  bool chose_overshoot = false;  // chosen token excluded by overshoot
  std::string raw_text;
};

/// Maps a parsed response to a final legal move: a valid choice takes the
/// chosen token's single legal move; format-invalid output or a blocked
/// token falls back to a uniformly random legal move. Throws when the spot
/// has no legal moves at all.
AdjudicatedDecision adjudicate(const ParsedResponse& parsed,
                               const SpotScenario& spot, Rng& rng,
                               const BoardLayout& layout = standard_layout());

}  // namespace ludo

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ludo/board.hpp"
#include "ludo/prompt.hpp"
#include "ludo/spots.hpp"

namespace ludo {

/// One agent decision on one spot under one persona. Effect flags describe
/// the chosen move and are meaningful only for valid records; the invalid
/// flags describe the raw output before fallback. Transport errors form a
/// third stratum, separate from format/move invalidity.
struct EvalRecord {
  std::string spot_id;
  Category category = Category::kCapture;
  Persona persona = Persona::kNone;
  std::string agent;

  bool transport_error = false;
  bool was_format_invalid = false;
  bool was_move_invalid = false;

  std::optional<int> chosen_token;  // pre-fallback choice when format-valid
  int final_token = -1;             // move actually applied (after fallback)

  // Effect flags of the chosen move (valid records only).
  bool captures = false;
  std::optional<PlayerId> captured_player;
  bool lands_safe = false;
  bool enters_home = false;
  bool finishes = false;
  bool leaves_base = false;
  bool moves_existing = false;

  bool chose_blocked = false;
  bool chose_overshoot = false;

  std::string raw_text;  // raw model output (LLM agents only)

  bool is_valid() const {
    return !transport_error && !was_format_invalid && !was_move_invalid;
  }

  bool operator==(const EvalRecord&) const = default;
};

std::string record_to_json_line(const EvalRecord& r);
EvalRecord record_from_json_line(const std::string& line);

/// A rate with its numerator and denominator. value is absent when the
/// denominator is zero; it serializes as null, never as 0.
struct RateValue {
  std::optional<double> value;
  int num = 0;
  int den = 0;

  static RateValue of(int num, int den) {
    RateValue r{std::nullopt, num, den};
    if (den > 0) r.value = static_cast<double>(num) / den;
    return r;
  }
  bool operator==(const RateValue&) const = default;
};

/// Behavioral rates over one (agent, category, persona) stratum. invalid_rate
/// is computed over all non-transport records pre-fallback; behavioral rates
/// over valid records only; block/overshoot rates over format-valid records.
struct RateSet {
  int records = 0;
  int valid_records = 0;
  int transport_errors = 0;
  RateValue invalid_rate;
  RateValue capture_rate;
  RateValue safe_rate;
  RateValue home_entry_rate;
  RateValue home_finish_rate;
  RateValue open_rate;
  RateValue bring_out_rate;
  RateValue move_existing_rate;
  RateValue block_rate;
  RateValue overshoot_rate;

  bool operator==(const RateSet&) const = default;
};

RateSet behavioral_rates(const std::vector<EvalRecord>& records);

/// Choice classes used by grudge transition counts.
enum class ChoiceClass { kCapture, kSafe, kHome, kOther };
std::string to_string(ChoiceClass c);
ChoiceClass choice_class(const EvalRecord& r);

struct GrudgePairRecord {
  EvalRecord neutral;
  EvalRecord grudge;
  PlayerId aggressor = 0;
};

/// Grudge sensitivity block: change_rate over valid pairs, retaliation rates
/// per side, their difference, and neutral-to-grudge transition counts.
struct GrudgeBlock {
  int pairs = 0;
  int valid_pairs = 0;
  RateValue change_rate;
  RateValue retaliation_grudge_rate;
  RateValue retaliation_noconflict_rate;
  std::optional<double> grudge_effect;  // grudge - noconflict
  std::map<std::string, int> transitions;  // "<from>-><to>" over valid pairs

  bool operator==(const GrudgeBlock&) const = default;
};

GrudgeBlock grudge_metrics(const std::vector<GrudgePairRecord>& pairs);

/// Agreement with the game-theory agent's choice, per category and pooled.
/// Invalid agent records count as disagreement by default; the exclusion
/// variant drops them from both numerator and denominator.
struct AlignmentBlock {
  std::map<std::string, RateValue> per_category;
  RateValue overall;
  std::map<std::string, RateValue> per_category_valid_only;
  RateValue overall_valid_only;

  bool operator==(const AlignmentBlock&) const = default;
};

AlignmentBlock gt_alignment(const std::vector<EvalRecord>& agent_records,
                            const std::vector<EvalRecord>& gt_records);

/// Full report: per-stratum rates plus grudge and alignment blocks, with
/// corpus provenance and the master seed carried alongside.
struct MetricsReport {
  std::string corpus_provenance;  // "official" or "generated"
  uint64_t seed = 0;
  // agent -> category -> persona -> rates
  std::map<std::string, std::map<std::string, std::map<std::string, RateSet>>> rates;
  // agent -> persona -> grudge block
  std::map<std::string, std::map<std::string, GrudgeBlock>> grudge;
  // agent -> alignment vs GT
  std::map<std::string, AlignmentBlock> alignment;
  // agent -> persona -> artifact-defined persona alignment score in [0, 1]
  std::map<std::string, std::map<std::string, double>> persona_alignment;

  bool operator==(const MetricsReport&) const = default;
};

/// Builds the full report from a record log. Grudge pairs and aggressors are
/// recovered from the corpus; GT alignment uses the "gt" agent's records as
/// reference when present.
MetricsReport build_report(const std::vector<EvalRecord>& records,
                           const std::vector<SpotScenario>& corpus,
                           const std::string& provenance, uint64_t seed);

/// One metric per row: agent,category,persona,metric,value,numerator,denominator.
std::string report_to_csv(const MetricsReport& report);

/// Structured form; parse_report(report_to_json(r)) == r.
std::string report_to_json(const MetricsReport& report);
MetricsReport parse_report(const std::string& json_text);

}  // namespace ludo

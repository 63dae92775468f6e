#include "ludo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"

namespace ludo {

using nlohmann::json;
using nlohmann::ordered_json;

// ---- record JSONL ----

std::string record_to_json_line(const EvalRecord& r) {
  ordered_json j;
  j["spot_id"] = r.spot_id;
  j["category"] = to_string(r.category);
  j["persona"] = to_string(r.persona);
  j["agent"] = r.agent;
  j["transport_error"] = r.transport_error;
  j["format_invalid"] = r.was_format_invalid;
  j["move_invalid"] = r.was_move_invalid;
  if (r.chosen_token) j["chosen_token"] = *r.chosen_token;
  else j["chosen_token"] = nullptr;
  j["final_token"] = r.final_token;
  j["captures"] = r.captures;
  if (r.captured_player) j["captured_player"] = *r.captured_player;
  else j["captured_player"] = nullptr;
  j["lands_safe"] = r.lands_safe;
  j["enters_home"] = r.enters_home;
  j["finishes"] = r.finishes;
  j["leaves_base"] = r.leaves_base;
  j["moves_existing"] = r.moves_existing;
  j["chose_blocked"] = r.chose_blocked;
  j["chose_overshoot"] = r.chose_overshoot;
  if (!r.raw_text.empty()) j["raw_text"] = r.raw_text;
  return j.dump();
}

EvalRecord record_from_json_line(const std::string& line) {
  const json j = json::parse(line);
  EvalRecord r;
  r.spot_id = j.at("spot_id").get<std::string>();
  const auto cat = category_from_string(j.at("category").get<std::string>());
  if (!cat) throw LudoError("record: unknown category");
  r.category = *cat;
  const auto persona = persona_from_string(j.at("persona").get<std::string>());
  if (!persona) throw LudoError("record: unknown persona");
  r.persona = *persona;
  r.agent = j.at("agent").get<std::string>();
  r.transport_error = j.value("transport_error", false);
  r.was_format_invalid = j.value("format_invalid", false);
  r.was_move_invalid = j.value("move_invalid", false);
  if (j.contains("chosen_token") && !j.at("chosen_token").is_null()) {
    r.chosen_token = j.at("chosen_token").get<int>();
  }
  r.final_token = j.value("final_token", -1);
  r.captures = j.value("captures", false);
  if (j.contains("captured_player") && !j.at("captured_player").is_null()) {
    r.captured_player = j.at("captured_player").get<int>();
  }
  r.lands_safe = j.value("lands_safe", false);
  r.enters_home = j.value("enters_home", false);
  r.finishes = j.value("finishes", false);
  r.leaves_base = j.value("leaves_base", false);
  r.moves_existing = j.value("moves_existing", false);
  r.chose_blocked = j.value("chose_blocked", false);
  r.chose_overshoot = j.value("chose_overshoot", false);
  r.raw_text = j.value("raw_text", "");
  return r;
}

// ---- behavioral rates ----

RateSet behavioral_rates(const std::vector<EvalRecord>& records) {
  RateSet out;
  int considered = 0;   // non-transport records
  int invalid = 0;      // pre-fallback invalid among considered
  int format_valid = 0; // parsed index, regardless of legality
  int valid = 0;
  int capture = 0, safe = 0, home_entry = 0, home_finish = 0;
  int open = 0, move_existing = 0, blocked = 0, overshoot = 0;

  out.records = static_cast<int>(records.size());
  for (const EvalRecord& r : records) {
    if (r.transport_error) {
      ++out.transport_errors;
      continue;
    }
    ++considered;
    if (r.was_format_invalid || r.was_move_invalid) ++invalid;
    if (!r.was_format_invalid) {
      ++format_valid;
      if (r.chose_blocked) ++blocked;
      if (r.chose_overshoot) ++overshoot;
    }
    if (!r.is_valid()) continue;
    ++valid;
    if (r.captures) ++capture;
    if (r.lands_safe && !r.leaves_base) ++safe;
    if (r.enters_home) ++home_entry;
    if (r.finishes) ++home_finish;
    if (r.leaves_base) ++open;
    if (r.moves_existing) ++move_existing;
  }
  out.valid_records = valid;
  out.invalid_rate = RateValue::of(invalid, considered);
  out.capture_rate = RateValue::of(capture, valid);
  out.safe_rate = RateValue::of(safe, valid);
  out.home_entry_rate = RateValue::of(home_entry, valid);
  out.home_finish_rate = RateValue::of(home_finish, valid);
  out.open_rate = RateValue::of(open, valid);
  out.bring_out_rate = RateValue::of(open, valid);
  out.move_existing_rate = RateValue::of(move_existing, valid);
  out.block_rate = RateValue::of(blocked, format_valid);
  out.overshoot_rate = RateValue::of(overshoot, format_valid);
  return out;
}

// ---- grudge ----

std::string to_string(ChoiceClass c) {
  switch (c) {
    case ChoiceClass::kCapture: return "capture";
    case ChoiceClass::kSafe: return "safe";
    case ChoiceClass::kHome: return "home";
    case ChoiceClass::kOther: return "other";
  }
  return "other";
}

ChoiceClass choice_class(const EvalRecord& r) {
  if (r.captures) return ChoiceClass::kCapture;
  if (r.enters_home) return ChoiceClass::kHome;
  if (r.lands_safe && !r.leaves_base) return ChoiceClass::kSafe;
  return ChoiceClass::kOther;
}

namespace {

std::string pair_prefix(const std::string& id) {
  if (id.size() > 2 && id[id.size() - 2] == '_') return id.substr(0, id.size() - 2);
  return id;
}

bool retaliates(const EvalRecord& r, PlayerId aggressor) {
  return r.captures && r.captured_player && *r.captured_player == aggressor;
}

}  // namespace

GrudgeBlock grudge_metrics(const std::vector<GrudgePairRecord>& pairs) {
  GrudgeBlock out;
  out.pairs = static_cast<int>(pairs.size());
  int changed = 0;
  int grudge_valid = 0, grudge_retaliate = 0;
  int neutral_valid = 0, neutral_retaliate = 0;
  for (const GrudgePairRecord& p : pairs) {
    if (pair_prefix(p.neutral.spot_id) != pair_prefix(p.grudge.spot_id)) {
      throw LudoError("grudge_metrics: mismatched pair " + p.neutral.spot_id +
                      " / " + p.grudge.spot_id);
    }
    if (p.grudge.is_valid()) {
      ++grudge_valid;
      if (retaliates(p.grudge, p.aggressor)) ++grudge_retaliate;
    }
    if (p.neutral.is_valid()) {
      ++neutral_valid;
      if (retaliates(p.neutral, p.aggressor)) ++neutral_retaliate;
    }
    if (!p.neutral.is_valid() || !p.grudge.is_valid()) continue;
    ++out.valid_pairs;
    if (p.neutral.chosen_token != p.grudge.chosen_token) ++changed;
    const std::string key =
        to_string(choice_class(p.neutral)) + "->" + to_string(choice_class(p.grudge));
    ++out.transitions[key];
  }
  out.change_rate = RateValue::of(changed, out.valid_pairs);
  out.retaliation_grudge_rate = RateValue::of(grudge_retaliate, grudge_valid);
  out.retaliation_noconflict_rate = RateValue::of(neutral_retaliate, neutral_valid);
  if (out.retaliation_grudge_rate.value && out.retaliation_noconflict_rate.value) {
    out.grudge_effect =
        *out.retaliation_grudge_rate.value - *out.retaliation_noconflict_rate.value;
  }
  return out;
}

// ---- GT alignment ----

AlignmentBlock gt_alignment(const std::vector<EvalRecord>& agent_records,
                            const std::vector<EvalRecord>& gt_records) {
  std::map<std::string, int> gt_choice;
  for (const EvalRecord& r : gt_records) {
    if (r.chosen_token) gt_choice.emplace(r.spot_id, *r.chosen_token);
  }
  AlignmentBlock out;
  std::map<std::string, std::pair<int, int>> strict;      // cat -> (agree, total)
  std::map<std::string, std::pair<int, int>> valid_only;  // cat -> (agree, valid)
  int agree_all = 0, total_all = 0, agree_valid = 0, total_valid = 0;
  for (const EvalRecord& r : agent_records) {
    const auto it = gt_choice.find(r.spot_id);
    if (it == gt_choice.end()) {
      throw LudoError("gt_alignment: no reference decision for spot " + r.spot_id);
    }
    const std::string cat = to_string(r.category);
    const bool agrees = r.is_valid() && r.chosen_token && *r.chosen_token == it->second;
    ++strict[cat].second;
    ++total_all;
    if (agrees) {
      ++strict[cat].first;
      ++agree_all;
    }
    if (r.is_valid()) {
      ++valid_only[cat].second;
      ++total_valid;
      if (agrees) {
        ++valid_only[cat].first;
        ++agree_valid;
      }
    }
  }
  for (const auto& [cat, counts] : strict) {
    out.per_category[cat] = RateValue::of(counts.first, counts.second);
  }
  for (const auto& [cat, counts] : valid_only) {
    out.per_category_valid_only[cat] = RateValue::of(counts.first, counts.second);
  }
  out.overall = RateValue::of(agree_all, total_all);
  out.overall_valid_only = RateValue::of(agree_valid, total_valid);
  return out;
}

// ---- report assembly ----

namespace {

// Pooled rate of records satisfying pred over valid records in the given
// categories for one persona.
RateValue pooled_rate(const std::vector<EvalRecord>& records,
                      const std::set<Category>& cats, Persona persona,
                      bool (*pred)(const EvalRecord&)) {
  int num = 0, den = 0;
  for (const EvalRecord& r : records) {
    if (r.persona != persona || !cats.count(r.category) || !r.is_valid()) continue;
    ++den;
    if (pred(r)) ++num;
  }
  return RateValue::of(num, den);
}

// Artifact-defined persona alignment: headroom-normalized shift of the
// persona's target metric away from the none baseline, clamped to [0, 1].
// This is a diagnostic score, not a reproduction of any published number.
std::optional<double> persona_alignment_score(
    const std::vector<EvalRecord>& agent_records,
    const std::vector<GrudgePairRecord>& none_pairs,
    const std::vector<GrudgePairRecord>& persona_pairs, Persona persona) {
  static const std::set<Category> kCaptureCats{
      Category::kCapture, Category::kCaptureVsHome, Category::kCaptureVsHomeFinish,
      Category::kCaptureVsOpenExisting, Category::kCaptureVsSafe};
  static const std::set<Category> kHomeCats{
      Category::kCaptureVsHome, Category::kCaptureVsHomeFinish, Category::kHomeEntry};
  static const std::set<Category> kSafeCats{
      Category::kSafe, Category::kCaptureVsSafe, Category::kSafeVsOpenExisting};

  RateValue baseline, shifted;
  switch (persona) {
    case Persona::kNone:
      return std::nullopt;
    case Persona::kAggressive:
      baseline = pooled_rate(agent_records, kCaptureCats, Persona::kNone,
                             [](const EvalRecord& r) { return r.captures; });
      shifted = pooled_rate(agent_records, kCaptureCats, Persona::kAggressive,
                            [](const EvalRecord& r) { return r.captures; });
      break;
    case Persona::kGreedy:
      baseline = pooled_rate(agent_records, kHomeCats, Persona::kNone,
                             [](const EvalRecord& r) { return r.enters_home; });
      shifted = pooled_rate(agent_records, kHomeCats, Persona::kGreedy,
                            [](const EvalRecord& r) { return r.enters_home; });
      break;
    case Persona::kSafe:
      baseline = pooled_rate(agent_records, kSafeCats, Persona::kNone,
                             [](const EvalRecord& r) {
                               return r.lands_safe && !r.leaves_base;
                             });
      shifted = pooled_rate(agent_records, kSafeCats, Persona::kSafe,
                            [](const EvalRecord& r) {
                              return r.lands_safe && !r.leaves_base;
                            });
      break;
    case Persona::kUnforgiving: {
      const auto base_block = grudge_metrics(none_pairs);
      const auto pers_block = grudge_metrics(persona_pairs);
      baseline = base_block.retaliation_grudge_rate;
      shifted = pers_block.retaliation_grudge_rate;
      break;
    }
  }
  if (!baseline.value || !shifted.value) return std::nullopt;
  const double headroom = 1.0 - *baseline.value;
  if (headroom <= 0.0) return *shifted.value >= *baseline.value ? 1.0 : 0.0;
  return std::clamp((*shifted.value - *baseline.value) / headroom, 0.0, 1.0);
}

std::vector<GrudgePairRecord> match_pairs(
    const std::vector<GrudgePair>& corpus_pairs,
    const std::map<std::pair<std::string, std::string>, const EvalRecord*>& by_key,
    const std::string& persona) {
  std::vector<GrudgePairRecord> out;
  for (const GrudgePair& p : corpus_pairs) {
    const auto a = by_key.find({p.neutral.id, persona});
    const auto b = by_key.find({p.grudge.id, persona});
    if (a == by_key.end() || b == by_key.end()) continue;
    out.push_back(GrudgePairRecord{*a->second, *b->second, p.aggressor});
  }
  return out;
}

}  // namespace

MetricsReport build_report(const std::vector<EvalRecord>& records,
                           const std::vector<SpotScenario>& corpus,
                           const std::string& provenance, uint64_t seed) {
  MetricsReport report;
  report.corpus_provenance = provenance;
  report.seed = seed;

  std::map<std::string, std::vector<EvalRecord>> by_agent;
  for (const EvalRecord& r : records) by_agent[r.agent].push_back(r);

  const auto corpus_pairs = collect_grudge_pairs(corpus);

  for (const auto& [agent, agent_records] : by_agent) {
    // Per-stratum rates.
    std::map<std::pair<std::string, std::string>, std::vector<EvalRecord>> strata;
    for (const EvalRecord& r : agent_records) {
      strata[{to_string(r.category), to_string(r.persona)}].push_back(r);
    }
    for (const auto& [key, rs] : strata) {
      report.rates[agent][key.first][key.second] = behavioral_rates(rs);
    }

    // Grudge blocks per persona.
    std::map<std::pair<std::string, std::string>, const EvalRecord*> by_key;
    for (const EvalRecord& r : agent_records) {
      by_key[{r.spot_id, to_string(r.persona)}] = &r;
    }
    std::map<std::string, std::vector<GrudgePairRecord>> pairs_by_persona;
    for (const Persona p : all_personas()) {
      auto pairs = match_pairs(corpus_pairs, by_key, to_string(p));
      if (!pairs.empty()) {
        report.grudge[agent][to_string(p)] = grudge_metrics(pairs);
        pairs_by_persona[to_string(p)] = std::move(pairs);
      }
    }

    // Persona alignment (artifact-defined diagnostic).
    for (const Persona p : all_personas()) {
      if (p == Persona::kNone) continue;
      const auto score = persona_alignment_score(
          agent_records, pairs_by_persona[to_string(Persona::kNone)],
          pairs_by_persona[to_string(p)], p);
      if (score) report.persona_alignment[agent][to_string(p)] = *score;
    }
  }

  // Alignment against the GT agent's none-persona decisions.
  const auto gt_it = by_agent.find("gt");
  if (gt_it != by_agent.end()) {
    std::vector<EvalRecord> gt_none;
    for (const EvalRecord& r : gt_it->second) {
      if (r.persona == Persona::kNone) gt_none.push_back(r);
    }
    for (const auto& [agent, agent_records] : by_agent) {
      if (agent == "gt" || gt_none.empty()) continue;
      std::vector<EvalRecord> agent_none;
      for (const EvalRecord& r : agent_records) {
        if (r.persona == Persona::kNone) agent_none.push_back(r);
      }
      if (agent_none.empty()) continue;
      report.alignment[agent] = gt_alignment(agent_none, gt_none);
    }
  }
  return report;
}

// ---- serialization ----

namespace {

ordered_json rate_to_json(const RateValue& r) {
  ordered_json j;
  if (r.value) j["value"] = *r.value;
  else j["value"] = nullptr;
  j["num"] = r.num;
  j["den"] = r.den;
  return j;
}

RateValue rate_from_json(const json& j) {
  RateValue r;
  if (!j.at("value").is_null()) r.value = j.at("value").get<double>();
  r.num = j.at("num").get<int>();
  r.den = j.at("den").get<int>();
  return r;
}

ordered_json rateset_to_json(const RateSet& s) {
  ordered_json j;
  j["records"] = s.records;
  j["valid_records"] = s.valid_records;
  j["transport_errors"] = s.transport_errors;
  j["invalid_rate"] = rate_to_json(s.invalid_rate);
  j["capture_rate"] = rate_to_json(s.capture_rate);
  j["safe_rate"] = rate_to_json(s.safe_rate);
  j["home_entry_rate"] = rate_to_json(s.home_entry_rate);
  j["home_finish_rate"] = rate_to_json(s.home_finish_rate);
  j["open_rate"] = rate_to_json(s.open_rate);
  j["bring_out_rate"] = rate_to_json(s.bring_out_rate);
  j["move_existing_rate"] = rate_to_json(s.move_existing_rate);
  j["block_rate"] = rate_to_json(s.block_rate);
  j["overshoot_rate"] = rate_to_json(s.overshoot_rate);
  return j;
}

RateSet rateset_from_json(const json& j) {
  RateSet s;
  s.records = j.at("records").get<int>();
  s.valid_records = j.at("valid_records").get<int>();
  s.transport_errors = j.at("transport_errors").get<int>();
  s.invalid_rate = rate_from_json(j.at("invalid_rate"));
  s.capture_rate = rate_from_json(j.at("capture_rate"));
  s.safe_rate = rate_from_json(j.at("safe_rate"));
  s.home_entry_rate = rate_from_json(j.at("home_entry_rate"));
  s.home_finish_rate = rate_from_json(j.at("home_finish_rate"));
  s.open_rate = rate_from_json(j.at("open_rate"));
  s.bring_out_rate = rate_from_json(j.at("bring_out_rate"));
  s.move_existing_rate = rate_from_json(j.at("move_existing_rate"));
  s.block_rate = rate_from_json(j.at("block_rate"));
  s.overshoot_rate = rate_from_json(j.at("overshoot_rate"));
  return s;
}

ordered_json grudge_to_json(const GrudgeBlock& g) {
  ordered_json j;
  j["pairs"] = g.pairs;
  j["valid_pairs"] = g.valid_pairs;
  j["change_rate"] = rate_to_json(g.change_rate);
  j["retaliation_grudge_rate"] = rate_to_json(g.retaliation_grudge_rate);
  j["retaliation_noconflict_rate"] = rate_to_json(g.retaliation_noconflict_rate);
  if (g.grudge_effect) j["grudge_effect"] = *g.grudge_effect;
  else j["grudge_effect"] = nullptr;
  j["transitions"] = g.transitions;
  return j;
}

GrudgeBlock grudge_from_json(const json& j) {
  GrudgeBlock g;
  g.pairs = j.at("pairs").get<int>();
  g.valid_pairs = j.at("valid_pairs").get<int>();
  g.change_rate = rate_from_json(j.at("change_rate"));
  g.retaliation_grudge_rate = rate_from_json(j.at("retaliation_grudge_rate"));
  g.retaliation_noconflict_rate = rate_from_json(j.at("retaliation_noconflict_rate"));
  if (!j.at("grudge_effect").is_null()) g.grudge_effect = j.at("grudge_effect").get<double>();
  g.transitions = j.at("transitions").get<std::map<std::string, int>>();
  return g;
}

ordered_json alignment_to_json(const AlignmentBlock& a) {
  ordered_json j;
  ordered_json per = ordered_json::object();
  for (const auto& [cat, rate] : a.per_category) per[cat] = rate_to_json(rate);
  j["per_category"] = per;
  j["overall"] = rate_to_json(a.overall);
  ordered_json perv = ordered_json::object();
  for (const auto& [cat, rate] : a.per_category_valid_only) perv[cat] = rate_to_json(rate);
  j["per_category_valid_only"] = perv;
  j["overall_valid_only"] = rate_to_json(a.overall_valid_only);
  return j;
}

AlignmentBlock alignment_from_json(const json& j) {
  AlignmentBlock a;
  for (auto it = j.at("per_category").begin(); it != j.at("per_category").end(); ++it) {
    a.per_category[it.key()] = rate_from_json(it.value());
  }
  a.overall = rate_from_json(j.at("overall"));
  for (auto it = j.at("per_category_valid_only").begin();
       it != j.at("per_category_valid_only").end(); ++it) {
    a.per_category_valid_only[it.key()] = rate_from_json(it.value());
  }
  a.overall_valid_only = rate_from_json(j.at("overall_valid_only"));
  return a;
}

}  // namespace

std::string report_to_json(const MetricsReport& report) {
  ordered_json j;
  j["corpus_provenance"] = report.corpus_provenance;
  j["seed"] = report.seed;
  ordered_json rates = ordered_json::object();
  for (const auto& [agent, cats] : report.rates) {
    ordered_json jc = ordered_json::object();
    for (const auto& [cat, personas] : cats) {
      ordered_json jp = ordered_json::object();
      for (const auto& [persona, set] : personas) jp[persona] = rateset_to_json(set);
      jc[cat] = jp;
    }
    rates[agent] = jc;
  }
  j["rates"] = rates;
  ordered_json grudge = ordered_json::object();
  for (const auto& [agent, personas] : report.grudge) {
    ordered_json jp = ordered_json::object();
    for (const auto& [persona, block] : personas) jp[persona] = grudge_to_json(block);
    grudge[agent] = jp;
  }
  j["grudge"] = grudge;
  ordered_json alignment = ordered_json::object();
  for (const auto& [agent, block] : report.alignment) {
    alignment[agent] = alignment_to_json(block);
  }
  j["alignment"] = alignment;
  ordered_json pa = ordered_json::object();
  for (const auto& [agent, personas] : report.persona_alignment) {
    ordered_json jp = ordered_json::object();
    for (const auto& [persona, score] : personas) jp[persona] = score;
    pa[agent] = jp;
  }
  j["persona_alignment"] = pa;
  return j.dump(2) + "\n";
}

MetricsReport parse_report(const std::string& json_text) {
  const json j = json::parse(json_text);
  MetricsReport report;
  report.corpus_provenance = j.at("corpus_provenance").get<std::string>();
  report.seed = j.at("seed").get<uint64_t>();
  for (auto agent = j.at("rates").begin(); agent != j.at("rates").end(); ++agent) {
    for (auto cat = agent.value().begin(); cat != agent.value().end(); ++cat) {
      for (auto persona = cat.value().begin(); persona != cat.value().end(); ++persona) {
        report.rates[agent.key()][cat.key()][persona.key()] =
            rateset_from_json(persona.value());
      }
    }
  }
  for (auto agent = j.at("grudge").begin(); agent != j.at("grudge").end(); ++agent) {
    for (auto persona = agent.value().begin(); persona != agent.value().end(); ++persona) {
      report.grudge[agent.key()][persona.key()] = grudge_from_json(persona.value());
    }
  }
  for (auto agent = j.at("alignment").begin(); agent != j.at("alignment").end(); ++agent) {
    report.alignment[agent.key()] = alignment_from_json(agent.value());
  }
  for (auto agent = j.at("persona_alignment").begin();
       agent != j.at("persona_alignment").end(); ++agent) {
    for (auto persona = agent.value().begin(); persona != agent.value().end(); ++persona) {
      report.persona_alignment[agent.key()][persona.key()] = persona.value().get<double>();
    }
  }
  return report;
}

namespace {

std::string csv_value(const RateValue& r) {
  if (!r.value) return "null";
  return std::to_string(*r.value);
}

void csv_rate_row(std::string& out, const std::string& agent,
                  const std::string& cat, const std::string& persona,
                  const std::string& metric, const RateValue& r) {
  out += agent + "," + cat + "," + persona + "," + metric + "," + csv_value(r) +
         "," + std::to_string(r.num) + "," + std::to_string(r.den) + "\n";
}

}  // namespace

std::string report_to_csv(const MetricsReport& report) {
  std::string out = "agent,category,persona,metric,value,numerator,denominator\n";
  for (const auto& [agent, cats] : report.rates) {
    for (const auto& [cat, personas] : cats) {
      for (const auto& [persona, s] : personas) {
        csv_rate_row(out, agent, cat, persona, "invalid_rate", s.invalid_rate);
        csv_rate_row(out, agent, cat, persona, "capture_rate", s.capture_rate);
        csv_rate_row(out, agent, cat, persona, "safe_rate", s.safe_rate);
        csv_rate_row(out, agent, cat, persona, "home_entry_rate", s.home_entry_rate);
        csv_rate_row(out, agent, cat, persona, "home_finish_rate", s.home_finish_rate);
        csv_rate_row(out, agent, cat, persona, "open_rate", s.open_rate);
        csv_rate_row(out, agent, cat, persona, "bring_out_rate", s.bring_out_rate);
        csv_rate_row(out, agent, cat, persona, "move_existing_rate", s.move_existing_rate);
        csv_rate_row(out, agent, cat, persona, "block_rate", s.block_rate);
        csv_rate_row(out, agent, cat, persona, "overshoot_rate", s.overshoot_rate);
      }
    }
  }
  for (const auto& [agent, personas] : report.grudge) {
    for (const auto& [persona, g] : personas) {
      csv_rate_row(out, agent, "grudge_paired", persona, "change_rate", g.change_rate);
      csv_rate_row(out, agent, "grudge_paired", persona, "retaliation_grudge_rate",
                   g.retaliation_grudge_rate);
      csv_rate_row(out, agent, "grudge_paired", persona, "retaliation_noconflict_rate",
                   g.retaliation_noconflict_rate);
      out += agent + ",grudge_paired," + persona + ",grudge_effect," +
             (g.grudge_effect ? std::to_string(*g.grudge_effect) : "null") + ",,\n";
      for (const auto& [key, count] : g.transitions) {
        out += agent + ",grudge_paired," + persona + ",transition:" + key + "," +
               std::to_string(count) + ",,\n";
      }
    }
  }
  for (const auto& [agent, a] : report.alignment) {
    for (const auto& [cat, rate] : a.per_category) {
      csv_rate_row(out, agent, cat, "none", "gt_alignment", rate);
    }
    csv_rate_row(out, agent, "overall", "none", "gt_alignment", a.overall);
    csv_rate_row(out, agent, "overall", "none", "gt_alignment_valid_only",
                 a.overall_valid_only);
  }
  for (const auto& [agent, personas] : report.persona_alignment) {
    for (const auto& [persona, score] : personas) {
      out += agent + ",overall," + persona + ",persona_alignment," +
             std::to_string(score) + ",,\n";
    }
  }
  return out;
}

}  // namespace ludo

#include "ludo/prompt.hpp"

#include <cctype>
#include <sstream>

namespace ludo {

const std::vector<Persona>& all_personas() {
  static const std::vector<Persona> v{Persona::kNone, Persona::kAggressive,
                                      Persona::kGreedy, Persona::kSafe,
                                      Persona::kUnforgiving};
  return v;
}

std::string to_string(Persona p) {
  switch (p) {
    case Persona::kNone: return "none";
    case Persona::kAggressive: return "aggressive";
    case Persona::kGreedy: return "greedy";
    case Persona::kSafe: return "safe";
    case Persona::kUnforgiving: return "unforgiving";
  }
  return "none";
}

std::optional<Persona> persona_from_string(const std::string& name) {
  for (Persona p : all_personas()) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

std::string persona_text(Persona p) {
  switch (p) {
    case Persona::kNone:
      return "";
    case Persona::kAggressive:
      return "You are an aggressive Ludo player. Prioritize capturing opponent "
             "pieces whenever possible. Attacking opponents is more important "
             "than protecting your own pieces or advancing toward home.";
    case Persona::kGreedy:
      return "You are a greedy Ludo player focused on winning. Prioritize "
             "advancing your own pieces toward home above all else. Getting "
             "pieces to the finish is more important than capturing opponents.";
    case Persona::kSafe:
      return "You are a cautious Ludo player. Prioritize moving to safe "
             "squares and avoiding risky positions. Protecting your pieces "
             "from capture is more important than aggressive play.";
    case Persona::kUnforgiving:
      return "You are an unforgiving Ludo player. If an opponent has captured "
             "your piece, prioritize retaliating by capturing their pieces in "
             "return. Do not let attacks go unpunished.";
  }
  return "";
}

namespace {

constexpr const char* kRuler = "--------------------";

std::string int_list(const std::vector<int>& values) {
  std::ostringstream out;
  out << "[";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out << ", ";
    out << values[i];
  }
  out << "]";
  return out.str();
}

std::string token_list(const GameState& state, PlayerId p) {
  std::vector<int> positions;
  for (int t = 0; t < kTokensPerPlayer; ++t) positions.push_back(state.token(p, t));
  return int_list(positions);
}

}  // namespace

std::string render_prompt(const PromptSpec& spec, const BoardLayout& layout) {
  const SpotScenario& spot = spec.spot;
  if (spec.persona != Persona::kNone && persona_text(spec.persona).empty()) {
    throw LudoError("render_prompt: missing persona text");
  }
  if (spec.include_history && !spot.history_text) {
    throw LudoError("render_prompt: include_history set but spot has no history_text");
  }
  const PlayerId me = spot.llm_player_id;
  const auto players = spot.players();

  std::ostringstream out;
  out << "You are an AI agent playing Ludo as Player " << me
      << ". Your job is to choose exactly ONE of your token indices.\n"
      << "\n"
      << "IMPORTANT:\n"
      << "- You must output ONLY a token index (0,1,2,3) followed by \" | \" "
         "and a one-line reason.\n"
      << "- Do NOT output board positions or text without the token index.\n"
      << "- The token index MUST refer to one of your own 4 tokens (0-3).\n"
      << "- If you output anything else, it is invalid.\n"
      << "\n"
      << "\n"
      << kRuler << "\n"
      << "BOARD & POSITION SYSTEM\n"
      << kRuler << "\n"
      << "1. Main circular board: 52 squares (0-51).\n"
      << "2. Each player has a fixed START square.\n"
      << "3. Tokens move forward relative to START.\n"
      << "4. After one full lap (52 steps), tokens enter that player's HOME PATH.\n"
      << "5. Each player has a UNIQUE HOME PATH (>= 52).\n"
      << "6. Final home position is HOME_END.\n"
      << "7. Tokens must land EXACTLY on HOME_END.\n"
      << "8. Overshooting HOME_END is illegal.\n"
      << "\n"
      << "\n"
      << kRuler << "\n"
      << "TOKEN STATES\n"
      << kRuler << "\n"
      << "- Position = -1  : Token is in base\n"
      << "- Position 0-51  : Token is on main board\n"
      << "- Position >= 52 : Token is in home path\n"
      << "- HOME_END       : Token has finished\n"
      << "\n"
      << "\n"
      << kRuler << "\n"
      << "GAME RULES\n"
      << kRuler << "\n"
      << "1.  All tokens start in base (-1).\n"
      << "2.  Leave base ONLY on dice = 6.\n"
      << "3.  Leaving base places token at START square.\n"
      << "4.  Tokens move forward by dice value.\n"
      << "5.  No stacking (one token per square).\n"
      << "6.  CAPTURE: land on opponent on non-safe square -> opponent sent to base (-1).\n"
      << "7.  Captures NEVER happen on safe squares.\n"
      << "8.  Safe squares protect tokens from capture.\n"
      << "9.  Rolling 6 grants an extra turn.\n"
      << "10. No legal move -> turn skipped.\n"
      << "11. First to move ALL tokens to HOME_END wins.\n"
      << "12. Home paths are private to each player.\n"
      << "\n"
      << kRuler << "\n"
      << "CURRENT GAME STATE\n"
      << kRuler << "\n"
      << "Number of players: " << players.size() << "\n"
      << "Active player ids: " << int_list(players) << "\n"
      << "Dice rolled: " << spot.dice << "\n"
      << "\n"
      << "Your token positions (Player " << me << "):\n"
      << token_list(spot.state, me) << "\n"
      << "\n"
      << "Other players' token positions:\n";
  for (PlayerId p : players) {
    if (p == me) continue;
    out << "Player " << p << ": " << token_list(spot.state, p) << "\n";
  }
  out << "\n"
      << "Your start square: " << layout.start_square[me] << "\n"
      << "Your home path: " << layout.home_start(me) << " to " << layout.home_end(me) << "\n"
      << "Safe squares: "
      << int_list({layout.safe_squares.begin(), layout.safe_squares.end()}) << "\n"
      << "Player path ranges: ";
  for (size_t i = 0; i < players.size(); ++i) {
    const PlayerId p = players[i];
    if (i) out << "; ";
    out << "Player " << p << ": start=" << layout.start_square[p]
        << ", home=" << layout.home_start(p) << "-" << layout.home_end(p);
  }
  out << "\n";

  if (spec.persona != Persona::kNone) {
    out << "\n"
        << kRuler << "\n"
        << "PERSONA\n"
        << kRuler << "\n"
        << "You must play with this persona style:\n"
        << persona_text(spec.persona) << "\n";
  }
  if (spec.include_history) {
    out << "\n"
        << kRuler << "\n"
        << "HISTORY / CONTEXT\n"
        << kRuler << "\n"
        << *spot.history_text << "\n";
  }

  out << "\n"
      << "Choose the BEST legal move to win.\n"
      << "\n"
      << kRuler << "\n"
      << "OUTPUT FORMAT (STRICT)\n"
      << kRuler << "\n"
      << "<int> | <one line reason>\n";
  return out.str();
}

namespace {

std::string trim(const std::string& s) {
  size_t a = 0;
  size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// Parses one line as "<digits> | <reason>". Returns the index (possibly out
// of range) and the reason; nullopt when the line does not match the shape.
std::optional<std::pair<long, std::string>> match_line(const std::string& line,
                                                       bool lenient) {
  const std::string t = trim(line);
  if (t.empty() || !std::isdigit(static_cast<unsigned char>(t[0]))) {
    return std::nullopt;
  }
  size_t i = 0;
  while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
  const long index = std::stol(t.substr(0, i));
  size_t j = i;
  while (j < t.size() && (t[j] == ' ' || t[j] == '\t')) ++j;
  if (j == t.size()) {
    if (lenient) return std::make_pair(index, std::string());
    return std::nullopt;  // bare integer, no separator
  }
  if (t[j] != '|') return std::nullopt;
  ++j;
  while (j < t.size() && (t[j] == ' ' || t[j] == '\t')) ++j;
  const std::string reason = t.substr(j);
  if (reason.empty()) {
    if (lenient) return std::make_pair(index, std::string());
    return std::nullopt;
  }
  return std::make_pair(index, reason);
}

}  // namespace

ParsedResponse parse_response(const std::string& text, ParseOptions opts) {
  ParsedResponse out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    auto m = match_line(line, opts.lenient_index_only);
    if (!m) continue;
    if (m->first < 0 || m->first >= kTokensPerPlayer) {
      // An index outside 0..3 can never name one of the player's tokens.
      return out;
    }
    out.token_index = static_cast<int>(m->first);
    out.reason = m->second;
    out.format_valid = true;
    return out;
  }
  return out;
}

AdjudicatedDecision adjudicate(const ParsedResponse& parsed,
                               const SpotScenario& spot, Rng& rng,
                               const BoardLayout& layout) {
  const auto moves =
      legal_moves(layout, spot.state, spot.llm_player_id, spot.dice);
  if (moves.empty()) {
    throw LudoError("adjudicate: spot " + spot.id + " has no legal moves");
  }
  AdjudicatedDecision out;
  if (!parsed.format_valid) {
    out.was_format_invalid = true;
  } else {
    out.chosen_token = parsed.token_index;
    for (const Move& m : moves) {
      if (m.token_index == *parsed.token_index) {
        out.final_move = m;
        return out;
      }
    }
    out.was_move_invalid = true;
    switch (token_block_reason(layout, spot.state, spot.llm_player_id,
                               spot.dice, *parsed.token_index)) {
      case TokenMoveBlock::kOwnStacking:
        out.chose_blocked = true;
        break;
      case TokenMoveBlock::kOvershoot:
        out.chose_overshoot = true;
        break;
      default:
        break;
    }
  }
  out.final_move = moves[rng.uniform_int(0, static_cast<int>(moves.size()) - 1)];
  return out;
}

}  // namespace ludo

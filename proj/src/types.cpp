#include "voterec/types.hpp"

namespace voterec {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Sntv: return "sntv";
    case Rule::Bloc: return "bloc";
    case Rule::KBorda: return "kborda";
    case Rule::Stv: return "stv";
    case Rule::Cc: return "cc";
    case Rule::Monroe: return "monroe";
    case Rule::CcExact: return "cc-exact";
    case Rule::MonroeExact: return "monroe-exact";
  }
  return "?";
}

const char* rule_display_name(Rule r) {
  switch (r) {
    case Rule::Sntv: return "SNTV";
    case Rule::Bloc: return "Bloc";
    case Rule::KBorda: return "k-Borda";
    case Rule::Stv: return "STV";
    case Rule::Cc: return "CC";
    case Rule::Monroe: return "Monroe";
    case Rule::CcExact: return "CC-exact";
    case Rule::MonroeExact: return "Monroe-exact";
  }
  return "?";
}

Rule parse_rule(const std::string& name) {
  for (Rule r : {Rule::Sntv, Rule::Bloc, Rule::KBorda, Rule::Stv, Rule::Cc,
                 Rule::Monroe, Rule::CcExact, Rule::MonroeExact}) {
    if (name == rule_name(r)) return r;
  }
  throw InputError("unknown voting rule '" + name +
                   "' (expected one of: sntv, bloc, kborda, stv, cc, monroe, "
                   "cc-exact, monroe-exact)");
}

const char* side_name(Side s) {
  switch (s) {
    case Side::Left: return "left";
    case Side::Right: return "right";
    case Side::Neutral: return "neutral";
  }
  return "?";
}

Side parse_side(const std::string& name) {
  if (name == "left") return Side::Left;
  if (name == "right") return Side::Right;
  if (name == "neutral") return Side::Neutral;
  throw InputError("unknown label '" + name + "' (expected left, right or neutral)");
}

}  // namespace voterec

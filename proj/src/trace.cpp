#include "seif/trace.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace seif {

std::string InputTrace::to_jsonl() const {
  using nlohmann::json;
  std::ostringstream os;
  os << json{{"kind", "header"}, {"from_reset", from_reset}, {"cycles", cycles()}, {"initial", initial}}.dump()
     << "\n";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    os << json{{"kind", "cycle"}, {"cycle", i}, {"inputs", steps[i]}}.dump() << "\n";
  }
  os << json{{"kind", "observe"}, {"cycle", steps.size()}, {"inputs", observe}}.dump() << "\n";
  return os.str();
}

InputTrace InputTrace::from_jsonl(const std::string& text) {
  using nlohmann::json;
  InputTrace t;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    const std::string kind = j.at("kind");
    if (kind == "header") {
      t.from_reset = j.at("from_reset");
      t.initial = j.at("initial").get<Valuation>();
    } else if (kind == "cycle") {
      if (j.at("cycle").get<std::size_t>() != t.steps.size()) {
        throw std::runtime_error("trace cycles out of order");
      }
      t.steps.push_back(j.at("inputs").get<Valuation>());
    } else if (kind == "observe") {
      t.observe = j.at("inputs").get<Valuation>();
    } else {
      throw std::runtime_error("unknown trace record '" + kind + "'");
    }
  }
  return t;
}

}  // namespace seif

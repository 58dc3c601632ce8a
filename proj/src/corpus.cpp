#include "seif/corpus.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace seif {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Config, "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

DesignIR load_design_files(const std::vector<std::string>& files, const std::string& top) {
  if (files.empty()) throw Error(ErrorKind::Config, "no design files given");
  verilog::SourceUnit unit;
  for (const auto& f : files) unit.files.push_back({f, slurp(f)});
  unit.top_module = top;
  return load_design(unit);
}

std::vector<CorpusEntry> load_manifest(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(slurp(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Config, path + ": " + e.what());
  }
  const std::filesystem::path dir = std::filesystem::path(path).parent_path();
  std::vector<CorpusEntry> out;
  try {
    for (const auto& d : j.at("designs")) {
      CorpusEntry e;
      e.name = d.at("name").get<std::string>();
      for (const auto& f : d.at("files")) e.files.push_back((dir / f.get<std::string>()).string());
      e.top = d.value("top", "");
      e.sources = d.at("sources").get<std::vector<std::string>>();
      if (d.contains("sink")) e.sink = d.at("sink").get<std::string>();
      out.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Config, path + ": " + e.what());
  }
  return out;
}

}  // namespace seif

#include "test_support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace seif::test {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string corpus_path(const std::string& name) { return std::string(SEIF_CORPUS_DIR) + "/" + name; }

DesignIR load_text(const std::string& text, const std::string& top) {
  verilog::SourceUnit u;
  u.files.push_back({"<test>", text});
  u.top_module = top;
  return load_design(u);
}

DesignIR load_corpus(const std::string& file, const std::string& top) {
  verilog::SourceUnit u;
  u.files.push_back({corpus_path(file), read_file(corpus_path(file))});
  u.top_module = top;
  return load_design(u);
}

SmtOptions solver_options() {
  SmtOptions o;
  o.solver_path = SEIF_SOLVER;
  o.timeout_ms = 10000;
  return o;
}

}  // namespace seif::test

#pragma once

#include <string>

#include "seif/design.hpp"
#include "seif/smt.hpp"

namespace seif::test {

std::string read_file(const std::string& path);
std::string corpus_path(const std::string& name);
DesignIR load_text(const std::string& text, const std::string& top = "");
DesignIR load_corpus(const std::string& file, const std::string& top = "");
SmtOptions solver_options();

}  // namespace seif::test

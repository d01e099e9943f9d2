#pragma once

// Loader for tests/corpus/*.lisp. Each top-level expression is preceded by a
// line "; expect: <printed result>"; any other comment lines are ignored.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vsalisp/sexpr.hpp"

namespace vsalisp::testing {

struct CorpusCase {
  SExpr expr;
  std::string expected;
};

struct CorpusProgram {
  std::string name;
  std::vector<CorpusCase> cases;
};

inline CorpusProgram load_corpus_program(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  CorpusProgram program{path.stem().string(), {}};
  const std::string marker = "; expect:";
  std::vector<std::string> expectations;
  std::vector<std::string> chunks;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(marker, 0) == 0) {
      std::string value = line.substr(marker.size());
      value.erase(0, value.find_first_not_of(' '));
      value.erase(value.find_last_not_of(" \r") + 1);
      expectations.push_back(value);
      chunks.emplace_back();
    } else if (!chunks.empty()) {
      chunks.back() += line + '\n';
    }
  }
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    std::vector<SExpr> exprs = parse_all(chunks[i]);
    if (exprs.size() != 1) {
      throw std::runtime_error(path.string() + ": expectation " + std::to_string(i + 1) +
                               " must be followed by exactly one expression");
    }
    program.cases.push_back({std::move(exprs.front()), expectations[i]});
  }
  return program;
}

inline std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(VSALISP_CORPUS_DIR)) {
    if (entry.path().extension() == ".lisp") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace vsalisp::testing

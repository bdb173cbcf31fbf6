#pragma once

#include <optional>
#include <string>
#include <vector>

#include "raagkit/io.hpp"

namespace raag::cli {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string graph, auts, out;
  int jobs = 0;
  std::optional<std::size_t> bound;
  std::size_t cap = 64;
  int subdiv = 2;
  std::string vertices, xi, kind;
  bool link_preserving = false;
};

struct Outcome {
  std::string name;
  Json report;
  int status = 0;  // 0 success, 2 verification failure
  std::optional<Json> bundle;
};

Outcome graph_cmd(const std::string& action, const Options& o);
Outcome word_cmd(const std::string& action, const std::vector<std::string>& args, const Options& o);
Outcome aut_cmd(const std::string& action, const std::vector<std::string>& args, const Options& o);
Outcome group_cmd(const std::string& action, const Options& o);
Outcome invariants_cmd(const std::string& action, const Options& o);
Outcome complex_cmd(const std::string& action, const std::vector<std::string>& args, const Options& o);
Outcome realize_cmd(const std::string& action, const std::string& manifest, const Options& o);
Outcome verify_cmd(const std::string& bundle, const Options& o);

}  // namespace raag::cli

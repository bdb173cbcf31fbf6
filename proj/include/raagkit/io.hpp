#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "raagkit/action.hpp"

namespace raag {

using Json = nlohmann::json;

class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json graph_to_json(const SimplicialGraph& g);
GraphPtr graph_from_json(const Json& j);

Json word_to_json(const NormalForm& w);
NormalForm word_from_json(const GraphPtr& g, const Json& j);

/// {"images": {...}, "inverse_images": {...}} plus "tag" and "factors" when tagged.
Json map_to_json(const RaagMap& f);
RaagMap map_from_json(const GraphPtr& g, const Json& j);

std::string length_to_string(const Length& l);
Length length_from_string(const std::string& s);

/// {"cells": [[cell, ...] per dimension]}.
Json complex_to_json(const CubeComplex& x);
CubeComplex complex_from_json(const Json& j);

Json marked_to_json(const MarkedComplex& m);
MarkedComplex marked_from_json(const Json& j);

Json action_to_json(const ComplexAction& a);
ComplexAction action_from_json(const Json& j);

/// A realisation on disk: marked complex, action, the outer maps it should
/// realise (one per group element) and a free-form report.
struct Bundle {
  MarkedComplex marked;
  ComplexAction action;
  std::vector<RaagMap> phi;
  Json report = Json::object();
};

Json bundle_to_json(const Bundle& b);
Bundle bundle_from_json(const Json& j);

Json read_json(const std::filesystem::path& p);
/// Sorted keys, two-space indent, trailing newline.
void write_json(const std::filesystem::path& p, const Json& j);
std::string dump(const Json& j);

}  // namespace raag

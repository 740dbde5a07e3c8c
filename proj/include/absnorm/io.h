#pragma once

// JSON documents for abs-normal forms and the generated problems.
//
//   {"n":..,"m":..,"s":..,"c":[..],"b":[..],"Z":[[..]],"L":[[..]],"J":[[..]],"Y":[[..]]}

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "absnorm/anf.h"
#include "absnorm/formulations.h"

namespace absnorm {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent document.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

AbsNormalForm anf_from_json(const Json& doc);
Json anf_to_json(const AbsNormalForm& form);

AbsNormalForm parse_anf(std::string_view text);
/// Two-space indented; parse(serialize(f)) == f exactly.
std::string serialize_anf(const AbsNormalForm& form);

AbsNormalForm read_anf_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

Json to_json(const Matrix& a);
Json to_json(const LcpProblem& p);
Json to_json(const MlcpProblem& p);
Json to_json(const LpccProblem& p);
Json to_json(const MilpProblem& p);

}  // namespace absnorm

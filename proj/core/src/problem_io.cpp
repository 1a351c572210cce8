#include "ndsl/problem_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ndsl/errors.hpp"

namespace ndsl {

namespace {

using nlohmann::json;

PiecewiseCoefficient read_coefficient(const json& doc, const char* name, double a) {
  if (!doc.contains(name) || !doc[name].is_array() || doc[name].empty())
    throw ValidationError(std::string("missing or empty coefficient array \"") + name + "\"");
  std::vector<Piece> pieces;
  for (const auto& item : doc[name]) {
    if (!item.is_object() || !item.contains("to") || !item.contains("expr") || !item["to"].is_number() ||
        !item["expr"].is_string())
      throw ValidationError(std::string("coefficient \"") + name + "\": each piece needs numeric \"to\" and string \"expr\"");
    try {
      pieces.push_back({item["to"].get<double>(), Expression::parse(item["expr"].get<std::string>())});
    } catch (const ParseError& e) {
      throw ParseError(std::string("coefficient \"") + name + "\": " + e.what(), e.offset());
    }
  }
  return PiecewiseCoefficient(a, std::move(pieces));
}

json write_coefficient(const PiecewiseCoefficient& c) {
  json arr = json::array();
  for (const auto& p : c.pieces()) arr.push_back({{"to", p.to}, {"expr", p.expr.to_string()}});
  return arr;
}

}  // namespace

SLProblem parse_problem(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("problem file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("problem file must be a JSON object");
  if (!doc.contains("interval") || !doc["interval"].is_array() || doc["interval"].size() != 2 ||
      !doc["interval"][0].is_number() || !doc["interval"][1].is_number())
    throw ValidationError("\"interval\" must be [a, b]");
  const double a = doc["interval"][0].get<double>();
  const double b = doc["interval"][1].get<double>();
  auto angle = [&](const char* key) {
    if (!doc.contains(key)) return 0.0;
    if (!doc[key].is_number()) throw ValidationError(std::string("\"") + key + "\" must be a number");
    return doc[key].get<double>();
  };
  return SLProblem(a, b, read_coefficient(doc, "p", a), read_coefficient(doc, "q", a), read_coefficient(doc, "r", a),
                   angle("alpha"), angle("beta"));
}

SLProblem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open problem file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

std::string problem_to_json(const SLProblem& prob) {
  json doc;
  doc["interval"] = {prob.a(), prob.b()};
  doc["alpha"] = prob.alpha();
  doc["beta"] = prob.beta();
  doc["p"] = write_coefficient(prob.p());
  doc["q"] = write_coefficient(prob.q());
  doc["r"] = write_coefficient(prob.r());
  return doc.dump();
}

}  // namespace ndsl

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "kncenter/recursions.hpp"

namespace kn {

using Json = nlohmann::ordered_json;

inline CurveSpec curve_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "curve must be a JSON object");
    for (const auto& [key, v] : j.items())
      if (key != "r" && key != "variables" && key != "coeffs" && key != "source" && key != "name")
        throw Error(ErrorCode::ParseError, "unknown curve field '" + key + "'");
    if (!j.contains("r") || !j.at("r").is_number_integer()) throw Error(ErrorCode::ParseError, "curve needs integer 'r'");
    if (!j.contains("coeffs") || !j.at("coeffs").is_object()) throw Error(ErrorCode::ParseError, "curve needs object 'coeffs'");
    std::vector<std::string> declared;
    if (j.contains("variables")) declared = j.at("variables").get<std::vector<std::string>>();
    std::map<int, Scalar> coeffs;
    for (const auto& [key, v] : j.at("coeffs").items()) {
      std::size_t used = 0;
      int idx = 0;
      try {
        idx = std::stoi(key, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != key.size()) throw Error(ErrorCode::ParseError, "coefficient key '" + key + "' is not an integer");
      if (!v.is_string()) throw Error(ErrorCode::ParseError, "coefficient " + key + " must be a scalar literal string");
      Scalar a = parse_scalar(v.get<std::string>());
      for (const auto& name : a.vars())
        if (std::find(declared.begin(), declared.end(), name) == declared.end())
          throw Error(ErrorCode::ParseError, "undeclared variable '" + name + "'");
      coeffs[idx] = a;
    }
    return CurveSpec(j.at("r").get<int>(), coeffs);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline Json curve_to_json(const CurveSpec& c) {
  Json j;
  j["r"] = c.r();
  j["variables"] = c.variables();
  Json co = Json::object();
  for (const auto& [idx, a] : c.coeffs()) co[std::to_string(idx)] = a.to_string();
  j["coeffs"] = co;
  return j;
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

inline Json ptable_to_json(const PTable& t) {
  Json vals = Json::object();
  for (int k = -t.curve().r(); k <= t.kmax(); ++k)
    for (int i = -t.curve().r(); i <= -1; ++i) vals[std::to_string(k) + "," + std::to_string(i)] = t.at(k, i).to_string();
  return Json{{"P", vals}};
}

inline Json qtable_to_json(const QTable& t) {
  Json vals = Json::object();
  for (int m = 1; m <= t.mmax(); ++m)
    for (int i = -t.curve().r(); i <= -1; ++i) vals[std::to_string(m) + "," + std::to_string(i)] = t.at(m, i).to_string();
  return Json{{"Q", vals}};
}

}  // namespace kn

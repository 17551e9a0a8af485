#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ricci/bundle.hpp"
#include "ricci/errors.hpp"

namespace ricci {

namespace detail {

inline double parse_vol(const nlohmann::json& v) {
  if (v.is_number()) {
    const double x = v.get<double>();
    if (!(x > 0.0)) throw ParseError("vol must be positive");
    return x;
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "2pi") return two_pi();
    if (s == "2pi^2") return two_pi_sq();
    throw ParseError("vol string must be \"2pi\" or \"2pi^2\", got \"" + s + "\"");
  }
  throw ParseError("vol must be a number or one of the literals \"2pi\", \"2pi^2\"");
}

inline int require_int(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key)) throw ParseError(std::string("factor is missing \"") + key + "\"");
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ParseError(std::string("\"") + key + "\" must be an integer");
  return v.get<int>();
}

}  // namespace detail

/// Parse a bundle description of the form
///   {"factors":[{"n":1,"p":2,"q":-1,"vol":"2pi"}, ...], "name": "..."}
/// Numbers accept decimal and scientific notation; "vol" may also be the exact
/// literals "2pi" or "2pi^2".
inline BundleData parse_bundle_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid bundle file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("factors") || !doc.at("factors").is_array())
    throw ParseError("bundle file must be an object with a \"factors\" array");

  BundleData bundle;
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw ParseError("\"name\" must be a string");
    bundle.name = doc.at("name").get<std::string>();
  }
  for (const auto& item : doc.at("factors")) {
    if (!item.is_object()) throw ParseError("each factor must be an object");
    BaseFactor f;
    f.n = detail::require_int(item, "n");
    f.p = detail::require_int(item, "p");
    f.q = detail::require_int(item, "q");
    if (!item.contains("vol")) throw ParseError("factor is missing \"vol\"");
    f.vol = detail::parse_vol(item.at("vol"));
    bundle.factors.push_back(f);
  }
  return bundle;
}

inline BundleData load_bundle_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open bundle file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_bundle_json(ss.str());
}

}  // namespace ricci

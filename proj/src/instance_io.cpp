// Copyright 2026 The detwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "detwalk/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace detwalk {

using nlohmann::json;

TriangleInstance instance_from_json_text(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ParameterError(std::string("instance is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParameterError("instance must be a JSON object");
  for (const auto &[key, val] : j.items()) {
    (void)val;
    if (key != "n" && key != "M" && key != "d" && key != "weights") {
      throw ParameterError("unknown instance key: " + key);
    }
  }
  for (const char *key : {"n", "M", "d"}) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
      throw ParameterError(std::string("instance needs an integer '") + key + "'");
    }
  }
  if (!j.contains("weights") || !j["weights"].is_array()) throw ParameterError("instance needs a 'weights' array");
  const auto n = j["n"].get<std::int64_t>();
  if (n < 1 || n > 100000) throw ParameterError("instance n out of range");
  std::vector<std::int64_t> w;
  w.reserve(j["weights"].size());
  for (const auto &x : j["weights"]) {
    if (!x.is_number_integer()) throw ParameterError("weights must be integers");
    w.push_back(x.get<std::int64_t>());
  }
  return TriangleInstance::create(static_cast<int>(n), j["M"].get<std::int64_t>(), j["d"].get<std::int64_t>(),
                                  std::move(w));
}

TriangleInstance load_instance(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open instance file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return instance_from_json_text(ss.str());
}

std::string instance_to_json_text(const TriangleInstance &inst) {
  json j;
  j["n"] = inst.n();
  j["M"] = inst.M();
  j["d"] = inst.d();
  j["weights"] = inst.weights();
  return j.dump();
}

void save_instance(const TriangleInstance &inst, const std::string &path) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write " + path);
  out << instance_to_json_text(inst) << "\n";
}

}  // namespace detwalk

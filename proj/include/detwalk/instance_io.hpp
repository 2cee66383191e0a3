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

#pragma once

#include <string>

#include "detwalk/pipeline.hpp"

namespace detwalk {

// {"n": int, "M": int, "d": int, "weights": [row-major n*n ints]}
TriangleInstance instance_from_json_text(const std::string &text);
TriangleInstance load_instance(const std::string &path);
std::string instance_to_json_text(const TriangleInstance &inst);
void save_instance(const TriangleInstance &inst, const std::string &path);

}  // namespace detwalk

// Copyright 2026 The Rogue Authors
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

#include "rogue/error.hpp"

namespace rogue {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::unsupported: return "unsupported";
    case ErrorKind::undefined: return "undefined";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::range: return "range";
    case ErrorKind::ordering: return "ordering";
    case ErrorKind::format: return "format";
  }
  return "unknown";
}

}  // namespace rogue

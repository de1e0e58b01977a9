// Copyright 2026 The predgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PREDGAME_ERROR_H_
#define PREDGAME_ERROR_H_

#include <stdexcept>
#include <string>

namespace predgame {

// Failure classes surfaced to callers. The CLI maps each to its own exit code.
enum class ErrorKind {
  kConfig,
  kInput,
  kResource,
  kUnsupported,
  kInternal,
};

const char* ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void ThrowConfig(const std::string& msg) {
  throw Error(ErrorKind::kConfig, msg);
}
[[noreturn]] inline void ThrowInput(const std::string& msg) {
  throw Error(ErrorKind::kInput, msg);
}
[[noreturn]] inline void ThrowResource(const std::string& msg) {
  throw Error(ErrorKind::kResource, msg);
}
[[noreturn]] inline void ThrowUnsupported(const std::string& msg) {
  throw Error(ErrorKind::kUnsupported, msg);
}
[[noreturn]] inline void ThrowInternal(const std::string& msg) {
  throw Error(ErrorKind::kInternal, msg);
}

}  // namespace predgame

#endif  // PREDGAME_ERROR_H_

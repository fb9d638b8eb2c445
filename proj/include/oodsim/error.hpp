// Copyright 2026 The oodsim Authors
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

#ifndef OODSIM_ERROR_HPP_
#define OODSIM_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oodsim {

// Raised for malformed or inconsistent user input (files, flags, scenario
// parameters). The CLI maps it to exit code 2; anything else maps to 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Source text that the lexer cannot tokenize. `offset` is a byte index.
class LexError : public InputError {
 public:
  LexError(const std::string& what, std::size_t offset)
      : InputError(what + " at byte " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace oodsim

#endif  // OODSIM_ERROR_HPP_

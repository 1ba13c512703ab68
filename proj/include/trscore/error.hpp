// Copyright 2026 The TRScore Authors.
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

#ifndef TRSCORE_ERROR_HPP_
#define TRSCORE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace trscore {

// Broad failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  kInput,    // unreadable/malformed files, invalid arguments
  kBackend,  // scoring backend could not produce log-probabilities
  kDomain,   // numerically undefined request (empty list, constant series)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::kInput, what) {}
};

class BackendError : public Error {
 public:
  explicit BackendError(const std::string& what)
      : Error(ErrorKind::kBackend, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorKind::kDomain, what) {}
};

}  // namespace trscore

#endif  // TRSCORE_ERROR_HPP_

// Copyright 2026 The Sodium Scout Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace sodium_scout {

// Base of every domain error. `code()` is the stable snake_case tag used on
// the wire (`{"code": ..., "message": ...}`).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Schofield equations are undefined below the adolescent bracket.
class UnsupportedAge : public Error {
 public:
  UnsupportedAge(int age, std::string user_id = {})
      : Error("unsupported_age",
              "age " + std::to_string(age) + " is below the youngest supported bracket (10)" +
                  (user_id.empty() ? std::string{} : " for user '" + user_id + "'")),
        age_(age),
        user_id_(std::move(user_id)) {}

  int age() const noexcept { return age_; }
  const std::string& user_id() const noexcept { return user_id_; }

 private:
  int age_;
  std::string user_id_;
};

class InvalidFraction : public Error {
 public:
  explicit InvalidFraction(double fraction)
      : Error("invalid_fraction",
              "meal_fraction must lie in (0, 1], got " + std::to_string(fraction)) {}
};

class ZeroTarget : public Error {
 public:
  ZeroTarget() : Error("zero_target", "sodium budget target is zero") {}
};

class AxisMismatch : public Error {
 public:
  explicit AxisMismatch(const std::string& what) : Error("axis_mismatch", what) {}
};

class DegenerateWeights : public Error {
 public:
  explicit DegenerateWeights(const std::string& what) : Error("degenerate_weights", what) {}
};

// Invariant violation on an input value (negative weight, bad coordinate, ...).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error("validation_error", what) {}
};

// Malformed catalog record. Line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("parse_error", "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IntegrityError : public Error {
 public:
  explicit IntegrityError(const std::string& what) : Error("integrity_error", what) {}
};

}  // namespace sodium_scout

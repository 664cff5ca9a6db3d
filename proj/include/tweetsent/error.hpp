// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef TWEETSENT_ERROR_HPP
#define TWEETSENT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace tweetsent {

/// Broad failure category. The numeric values double as CLI exit codes.
enum class ErrorKind : int {
  kUsage = 1,     // bad arguments, bad config, violated preconditions
  kData = 2,      // malformed or inconsistent input files
  kInternal = 3,  // everything else
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void ThrowUsage(const std::string& message) {
  throw Error(ErrorKind::kUsage, message);
}

[[noreturn]] inline void ThrowData(const std::string& message) {
  throw Error(ErrorKind::kData, message);
}

}  // namespace tweetsent

#endif  // TWEETSENT_ERROR_HPP

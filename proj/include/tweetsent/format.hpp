// Copyright 2026 The tweetsent Authors
// SPDX-License-Identifier: Apache-2.0

// Small text helpers shared by the report writers.

#ifndef TWEETSENT_FORMAT_HPP
#define TWEETSENT_FORMAT_HPP

#include <string>
#include <string_view>

namespace tweetsent {

/// Shortest decimal that round-trips to the same double.
std::string FormatDouble(double value);

/// Fixed-point with the given number of decimals ("0.956250").
std::string FormatFixed(double value, int decimals);

/// Quotes a CSV field when it contains a comma, quote, or line break.
std::string CsvEscape(std::string_view field);

}  // namespace tweetsent

#endif  // TWEETSENT_FORMAT_HPP

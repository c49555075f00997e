// Copyright 2026 The svrapd Authors
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

#ifndef SVRAPD_TEXT_H_
#define SVRAPD_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace svrapd {

// Locale-independent number formatting. Doubles use 17 significant digits
// so that parse_double(format_double(v)) == v bit for bit.
std::string format_double(double v);
std::string format_hex64(std::uint64_t v);

// Whole-string parses; throw std::invalid_argument naming `what` on failure.
double parse_double(std::string_view s, std::string_view what = "value");
std::int64_t parse_int(std::string_view s, std::string_view what = "value");
std::uint64_t parse_uint(std::string_view s, std::string_view what = "value");
std::uint64_t parse_hex64(std::string_view s, std::string_view what = "value");
bool parse_bool(std::string_view s, std::string_view what = "value");

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

}  // namespace svrapd

#endif  // SVRAPD_TEXT_H_

// Copyright 2026 The phonia authors
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

#ifndef PHONIA_CSV_HPP_
#define PHONIA_CSV_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace phonia::csv {

using Row = std::vector<std::string>;

// RFC-4180-ish: quoted fields, doubled quotes, CRLF or LF line ends.
std::vector<Row> read(std::istream& in);
std::vector<Row> read_file(const std::string& path);

std::string escape(const std::string& field);
void write_row(std::ostream& out, const Row& row);
void write_file(const std::string& path, const std::vector<Row>& rows);

// Fixed-format double for byte-stable outputs ("%.12g"; empty for NaN).
std::string format_double(double v);

}  // namespace phonia::csv

#endif  // PHONIA_CSV_HPP_

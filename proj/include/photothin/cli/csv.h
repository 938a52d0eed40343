// Copyright 2026 The photothin Authors
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

#ifndef PHOTOTHIN_CLI_CSV_H_
#define PHOTOTHIN_CLI_CSV_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace photothin::cli {

// Shortest decimal string that parses back to exactly `x`.
std::string format_number(double x);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Comma-separated, '\n' line endings, header first.
void write_csv(std::ostream& out, const CsvTable& table);
void write_csv_file(const std::string& path, const CsvTable& table);

// Inverse of write_csv. Throws std::runtime_error on malformed input.
CsvTable read_csv(std::istream& in);

}  // namespace photothin::cli

#endif  // PHOTOTHIN_CLI_CSV_H_

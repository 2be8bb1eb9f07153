// Copyright 2026 The Origami Authors. All Rights Reserved.
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

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "origami/trace.hpp"

namespace origami {

// "# <title>" line, a column line, then rows. Fields holding a comma, quote
// or newline are quoted.
struct CsvTable {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const CsvTable&, const CsvTable&) = default;
};

std::string format_csv(const CsvTable& table);
CsvTable parse_csv(std::string_view text, std::string_view source);

// One row per trace. Speedups are relative to the Baseline2 trace of the
// same model when present.
CsvTable summary_table(std::span<const InferenceTrace> traces);
// Per-layer cost rows for every trace.
CsvTable breakdown_table(std::span<const InferenceTrace> traces);
// Mode-vs-reference runtime and blinded-byte ratios; Origami traces are also
// compared against SlalomPrivacy.
CsvTable comparison_table(std::span<const InferenceTrace> traces);

std::string text_report(std::span<const InferenceTrace> traces);

struct LoadedTrace {
  std::string file;
  InferenceTrace trace;
};

// All *.json files in `dir`, sorted by name. Empty directories and corrupt
// files raise errors naming the directory or file.
std::vector<LoadedTrace> load_trace_dir(const std::filesystem::path& dir);

std::string trace_file_name(const InferenceTrace& trace);

struct ReportFiles {
  std::string summary_csv;
  std::string breakdown_csv;
  std::string comparison_csv;
  std::string text;
};

ReportFiles build_report(std::span<const InferenceTrace> traces);
void write_report(const ReportFiles& files, const std::filesystem::path& out_dir);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace origami

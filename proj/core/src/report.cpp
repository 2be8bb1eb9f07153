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

#include "origami/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "origami/accounting.hpp"
#include "origami/blinding.hpp"
#include "origami/cost_model.hpp"
#include "origami/error.hpp"

namespace origami {
namespace {

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return num == 0 ? fixed(1.0) : "inf";
  return fixed(static_cast<double>(num) / static_cast<double>(den));
}

bool needs_quotes(const std::string& f) {
  return f.find_first_of(",\"\n") != std::string::npos;
}

void put_field(std::ostringstream& os, const std::string& f) {
  if (!needs_quotes(f)) {
    os << f;
    return;
  }
  os << '"';
  for (char c : f) {
    if (c == '"') os << '"';
    os << c;
  }
  os << '"';
}

void put_row(std::ostringstream& os, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) os << ',';
    put_field(os, row[i]);
  }
  os << '\n';
}

// Splits CSV records honouring quotes.
std::vector<std::vector<std::string>> split_records(std::string_view text, const std::string& where) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, in_record = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    in_record = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      out.push_back(std::move(row));
      row.clear();
      in_record = false;
    } else {
      field += c;
    }
  }
  if (quoted) fail(ErrorCode::kParse, where + ": unterminated quoted field");
  if (in_record) fail(ErrorCode::kParse, where + ": missing final newline");
  return out;
}

const InferenceTrace* find_mode(std::span<const InferenceTrace> traces, const std::string& model,
                                ModeKind kind) {
  for (const auto& t : traces) {
    if (t.model == model && t.mode.kind == kind) return &t;
  }
  return nullptr;
}

const InferenceTrace& reference_for(std::span<const InferenceTrace> traces, const InferenceTrace& t) {
  if (const auto* b = find_mode(traces, t.model, ModeKind::kBaseline2)) return *b;
  for (const auto& other : traces) {
    if (other.model == t.model) return other;
  }
  return t;
}

std::string mib(std::uint64_t bytes) {
  return fixed(static_cast<double>(bytes) / kMiB, 3);
}

}  // namespace

std::string format_csv(const CsvTable& table) {
  std::ostringstream os;
  os << "# " << table.title << '\n';
  put_row(os, table.columns);
  for (const auto& r : table.rows) {
    if (r.size() != table.columns.size()) {
      fail(ErrorCode::kInvalidArgument, "csv row width differs from the header");
    }
    put_row(os, r);
  }
  return os.str();
}

CsvTable parse_csv(std::string_view text, std::string_view source) {
  const std::string where = "csv " + std::string(source);
  if (text.size() < 2 || text.substr(0, 2) != "# ") fail(ErrorCode::kParse, where + ": missing title line");
  const auto nl = text.find('\n');
  if (nl == std::string_view::npos) fail(ErrorCode::kParse, where + ": missing title line");
  CsvTable t;
  t.title = std::string(text.substr(2, nl - 2));
  auto records = split_records(text.substr(nl + 1), where);
  if (records.empty()) fail(ErrorCode::kParse, where + ": missing column line");
  t.columns = std::move(records.front());
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != t.columns.size()) {
      fail(ErrorCode::kParse, where + ": row " + std::to_string(i) + " has " +
                                  std::to_string(records[i].size()) + " fields, expected " +
                                  std::to_string(t.columns.size()));
    }
    t.rows.push_back(std::move(records[i]));
  }
  return t;
}

CsvTable summary_table(std::span<const InferenceTrace> traces) {
  CsvTable t;
  t.title = "origami-summary v1";
  t.columns = {"model", "mode", "partition", "request_id", "total_ms", "speedup_vs_baseline2",
               "peak_memory_bytes", "peak_memory_mib", "recovery_ms", "bytes_blinded",
               "bytes_unblinded", "blinded_total_bytes", "dense_share"};
  for (const auto& tr : traces) {
    const auto totals = tr.totals();
    const auto* base = find_mode(traces, tr.model, ModeKind::kBaseline2);
    const auto bb = blinded_bytes_accounting(tr);
    const auto bd = runtime_breakdown(tr);
    t.rows.push_back({tr.model, mode_name(tr.mode), std::to_string(tr.partition),
                      std::to_string(tr.request_id), fixed(totals.total_ms),
                      base && totals.total_ms > 0 ? fixed(base->totals().total_ms / totals.total_ms)
                                                  : "",
                      std::to_string(tr.peak_memory_bytes), mib(tr.peak_memory_bytes),
                      fixed(tr.recovery_ms), std::to_string(bb.blinded),
                      std::to_string(bb.unblinded), std::to_string(bb.total()),
                      fixed(bd.kind_share("dense"))});
  }
  return t;
}

CsvTable breakdown_table(std::span<const InferenceTrace> traces) {
  CsvTable t;
  t.title = "origami-breakdown v1";
  t.columns = {"model", "mode", "index", "name", "kind", "placement", "compute_ms",
               "copy_ms", "blind_ms", "total_ms", "share"};
  for (const auto& tr : traces) {
    for (const auto& r : runtime_breakdown(tr).rows) {
      t.rows.push_back({tr.model, mode_name(tr.mode), std::to_string(r.index), r.name, r.kind,
                        std::string(placement_name(r.placement)), fixed(r.compute_ms),
                        fixed(r.copy_ms), fixed(r.blind_ms), fixed(r.total_ms), fixed(r.share)});
    }
  }
  return t;
}

CsvTable comparison_table(std::span<const InferenceTrace> traces) {
  CsvTable t;
  t.title = "origami-comparison v1";
  t.columns = {"model", "mode", "reference", "speedup", "blinded_bytes",
               "reference_blinded_bytes", "bytes_ratio"};
  const auto row = [&](const InferenceTrace& a, const InferenceTrace& ref) {
    const double ta = a.totals().total_ms, tr = ref.totals().total_ms;
    const auto ba = blinded_bytes_accounting(a).total();
    const auto br = blinded_bytes_accounting(ref).total();
    t.rows.push_back({a.model, mode_name(a.mode), mode_name(ref.mode),
                      ta > 0 ? fixed(tr / ta) : "", std::to_string(ba), std::to_string(br),
                      ratio(ba, br)});
  };
  for (const auto& tr : traces) row(tr, reference_for(traces, tr));
  for (const auto& tr : traces) {
    if (tr.mode.kind != ModeKind::kOrigami) continue;
    if (const auto* s = find_mode(traces, tr.model, ModeKind::kSlalomPrivacy)) row(tr, *s);
  }
  return t;
}

std::string text_report(std::span<const InferenceTrace> traces) {
  std::ostringstream os;
  os << "Inference summary (simulated ms-equivalent)\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-12s %5s %14s %9s %12s %12s %16s\n", "model", "mode",
                "p", "total_ms", "speedup", "peak_MiB", "recovery_ms", "blinded_bytes");
  os << line;
  const auto summary = summary_table(traces);
  for (const auto& r : summary.rows) {
    std::snprintf(line, sizeof line, "%-10s %-12s %5s %14s %9s %12s %12s %16s\n", r[0].c_str(),
                  r[1].c_str(), r[2].c_str(), r[4].c_str(), r[5].empty() ? "-" : r[5].c_str(),
                  r[7].c_str(), r[8].c_str(), r[11].c_str());
    os << line;
  }
  os << "\nComparisons\n";
  for (const auto& r : comparison_table(traces).rows) {
    os << "  " << r[0] << " " << r[1] << " vs " << r[2] << ": speedup "
       << (r[3].empty() ? "-" : r[3]) << ", blinded bytes " << r[4] << " vs " << r[5]
       << " (ratio " << r[6] << ")\n";
  }
  for (const auto& tr : traces) {
    const auto bd = runtime_breakdown(tr);
    os << "\nPer-layer breakdown: " << tr.model << " " << mode_name(tr.mode) << "\n";
    std::snprintf(line, sizeof line, "  %5s %-10s %-8s %-10s %12s %8s\n", "index", "name", "kind",
                  "placement", "total_ms", "share");
    os << line;
    for (const auto& r : bd.rows) {
      std::snprintf(line, sizeof line, "  %5d %-10s %-8s %-10s %12.4f %7.2f%%\n", r.index,
                    r.name.c_str(), r.kind.c_str(), std::string(placement_name(r.placement)).c_str(),
                    r.total_ms, 100.0 * r.share);
      os << line;
    }
    std::snprintf(line, sizeof line, "  categories: compute %.2f%%, copy %.2f%%, blind %.2f%%\n",
                  100.0 * bd.compute_share, 100.0 * bd.copy_share, 100.0 * bd.blind_share);
    os << line;
  }
  return os.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
}

std::vector<LoadedTrace> load_trace_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) fail(ErrorCode::kIo, "not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  if (files.empty()) fail(ErrorCode::kIo, "no trace files in " + dir.string());
  std::sort(files.begin(), files.end());
  std::vector<LoadedTrace> out;
  for (const auto& f : files) {
    out.push_back({f.filename().string(), trace_from_json(read_text_file(f), f.string())});
  }
  return out;
}

std::string trace_file_name(const InferenceTrace& trace) {
  auto m = mode_name(trace.mode);
  std::replace(m.begin(), m.end(), '/', '-');
  return "trace_" + trace.model + "_" + m + ".json";
}

ReportFiles build_report(std::span<const InferenceTrace> traces) {
  if (traces.empty()) fail(ErrorCode::kInvalidArgument, "report needs at least one trace");
  return {format_csv(summary_table(traces)), format_csv(breakdown_table(traces)),
          format_csv(comparison_table(traces)), text_report(traces)};
}

void write_report(const ReportFiles& files, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create " + out_dir.string() + ": " + ec.message());
  write_text_file(out_dir / "summary.csv", files.summary_csv);
  write_text_file(out_dir / "breakdown.csv", files.breakdown_csv);
  write_text_file(out_dir / "comparison.csv", files.comparison_csv);
  write_text_file(out_dir / "report.txt", files.text);
}

}  // namespace origami

// Copyright 2026 The certun Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "certun/erm/dataset_io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "certun/status.h"

namespace certun {
namespace {

absl::Status LineError(int64_t line, absl::string_view what) {
  return ParseError(absl::StrCat("line ", line, ": ", what));
}

bool ParseDouble(absl::string_view s, double* out) {
  s = absl::StripAsciiWhitespace(s);
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto res = std::from_chars(s.data(), end, *out);
  return res.ec == std::errc() && res.ptr == end;
}

struct Header {
  int64_t dim = 0;
  int classes = 0;
  bool normalized = false;
};

absl::StatusOr<Header> ParseHeader(absl::string_view line) {
  if (!absl::ConsumePrefix(&line, "#")) {
    return LineError(1, "expected header '# d=<d> c=<c> normalized=<0|1>'");
  }
  Header h;
  bool have_d = false, have_c = false, have_norm = false;
  for (absl::string_view tok :
       absl::StrSplit(line, ' ', absl::SkipWhitespace())) {
    std::pair<absl::string_view, absl::string_view> kv =
        absl::StrSplit(tok, absl::MaxSplits('=', 1));
    int64_t v = 0;
    if (!absl::SimpleAtoi(kv.second, &v)) {
      return LineError(1, absl::StrCat("bad header field '", tok, "'"));
    }
    if (kv.first == "d") {
      h.dim = v;
      have_d = true;
    } else if (kv.first == "c") {
      h.classes = static_cast<int>(v);
      have_c = true;
    } else if (kv.first == "normalized") {
      if (v != 0 && v != 1) return LineError(1, "normalized must be 0 or 1");
      h.normalized = v == 1;
      have_norm = true;
    } else {
      return LineError(1, absl::StrCat("unknown header field '", kv.first, "'"));
    }
  }
  if (!have_d || !have_c || !have_norm) {
    return LineError(1, "header needs d, c and normalized");
  }
  if (h.dim < 1) return LineError(1, "d must be >= 1");
  if (h.classes < 2) return LineError(1, "c must be >= 2");
  return h;
}

}  // namespace

absl::StatusOr<Dataset> ParseDatasetCsv(absl::string_view content) {
  std::vector<absl::string_view> lines = absl::StrSplit(content, '\n');
  // A trailing newline leaves one empty piece.
  while (!lines.empty() && absl::StripAsciiWhitespace(lines.back()).empty()) {
    lines.pop_back();
  }
  if (lines.empty()) return ParseError("line 1: empty dataset file");
  CERTUN_ASSIGN_OR_RETURN(Header h,
                          ParseHeader(absl::StripAsciiWhitespace(lines[0])));
  const int64_t n = static_cast<int64_t>(lines.size()) - 1;
  if (n < 1) return LineError(2, "no samples after header");

  Eigen::MatrixXd features(n, h.dim);
  Eigen::VectorXi labels(n);
  for (int64_t i = 0; i < n; ++i) {
    const int64_t line_no = i + 2;
    std::vector<absl::string_view> cells =
        absl::StrSplit(absl::StripAsciiWhitespace(lines[i + 1]), ',');
    if (static_cast<int64_t>(cells.size()) != h.dim + 1) {
      return LineError(line_no, absl::StrCat("expected ", h.dim + 1,
                                             " columns, got ", cells.size()));
    }
    for (int64_t j = 0; j < h.dim; ++j) {
      double v = 0.0;
      if (!ParseDouble(cells[j], &v) || !std::isfinite(v)) {
        return LineError(line_no, absl::StrCat("bad feature value '",
                                               cells[j], "' in column ",
                                               j + 1));
      }
      features(i, j) = v;
    }
    int label = 0;
    if (!absl::SimpleAtoi(absl::StripAsciiWhitespace(cells[h.dim]), &label)) {
      return LineError(line_no,
                       absl::StrCat("bad label '", cells[h.dim], "'"));
    }
    if (h.classes == 2 && label == -1) label = 0;
    if (label < 0 || label >= h.classes) {
      return LineError(line_no, absl::StrCat("label ", label,
                                             " outside [0, ", h.classes, ")"));
    }
    labels(i) = label;
  }
  absl::StatusOr<Dataset> data =
      Dataset::Create(std::move(features), std::move(labels), h.classes,
                      h.normalized);
  if (!data.ok()) return ParseError(data.status().message());
  return data;
}

absl::StatusOr<Dataset> LoadDatasetCsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return IoError(absl::StrCat("cannot open '", path, "'"));
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return IoError(absl::StrCat("error reading '", path, "'"));
  absl::StatusOr<Dataset> data = ParseDatasetCsv(buf.str());
  if (!data.ok() && HasErrorKind(data.status(), ErrorKind::kParse)) {
    return ParseError(absl::StrCat(path, ": ", data.status().message()));
  }
  return data;
}

std::string FormatDatasetCsv(const Dataset& data) {
  std::string out = absl::StrCat("# d=", data.dim(), " c=", data.num_classes(),
                                 " normalized=", data.normalized() ? 1 : 0,
                                 "\n");
  char buf[32];
  for (int64_t i = 0; i < data.n(); ++i) {
    for (int64_t j = 0; j < data.dim(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", data.features()(i, j));
      absl::StrAppend(&out, buf, ",");
    }
    absl::StrAppend(&out, data.labels()(i), "\n");
  }
  return out;
}

absl::Status SaveDatasetCsv(const Dataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return IoError(absl::StrCat("cannot write '", path, "'"));
  out << FormatDatasetCsv(data);
  out.close();
  if (!out) return IoError(absl::StrCat("error writing '", path, "'"));
  return absl::OkStatus();
}

}  // namespace certun

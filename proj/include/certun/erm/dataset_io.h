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

#ifndef CERTUN_ERM_DATASET_IO_H_
#define CERTUN_ERM_DATASET_IO_H_

#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "certun/erm/dataset.h"

namespace certun {

// CSV layout: a header line `# d=<d> c=<c> normalized=<0|1>`, then one row
// per sample with d feature columns followed by an integer label. Binary
// files (c=2) may use -1/+1 or 0/1 labels.
//
// Malformed content fails with ErrorKind::kParse naming the line.
absl::StatusOr<Dataset> ParseDatasetCsv(absl::string_view content);
// As above; unreadable files fail with ErrorKind::kIo.
absl::StatusOr<Dataset> LoadDatasetCsv(const std::string& path);

// Features are written with 17 significant digits so that loading the file
// back gives bit-identical values.
std::string FormatDatasetCsv(const Dataset& data);
absl::Status SaveDatasetCsv(const Dataset& data, const std::string& path);

}  // namespace certun

#endif  // CERTUN_ERM_DATASET_IO_H_

/* Copyright 2026 The odeval Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Command-line front end:
//
//   odeval synth     --out DIR [--config F] [--jobs N] [--routes N]
//   odeval evaluate  LOG|DIR... [--config F] [--jobs N] [--metrics a,b]
//                    [--iou-kind bev|3d] [--out table.csv]
//   odeval correlate TABLE.csv [--config F] [--metrics a,b] [--out report.csv]
//                    [--plots DIR] [--signed-correlations]
//   odeval report    REPORT.csv [--signed-correlations]
//
// Failures print one line, "error: <code>: <message>", to stderr and exit
// with status 1 (2 for usage errors).

#ifndef ODEVAL_CLI_H_
#define ODEVAL_CLI_H_

#include <ostream>

namespace odeval {

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace odeval

#endif  // ODEVAL_CLI_H_

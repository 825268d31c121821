// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

namespace msc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitEngine = 1;
inline constexpr int kExitInput = 2;

/// Environment variable that overrides the configured worker count.
inline constexpr const char* kWorkersEnv = "MSC_WORKERS";

int run_app(int argc, char** argv);
int run_app(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace msc::cli

// SPDX-License-Identifier: Apache-2.0
//
// vecoder: replica analysis and exact simulation of vector precoding
// Copyright (C) 2026 The vecoder authors

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace vecoder::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitDiverged = 2;

/// Runs the command line `args` (without the program name), writing normal
/// output to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 64-bit FNV-1a, used to fingerprint run configurations in manifests.
std::uint64_t fnv1a(std::string_view data);

}  // namespace vecoder::cli

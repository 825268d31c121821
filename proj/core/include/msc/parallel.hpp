// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace msc {

/// 0 means "all hardware threads".
std::size_t resolve_workers(std::size_t requested) noexcept;

/// Runs body(i) for i in [0, count) on `workers` threads, each owning one
/// contiguous block of indices processed in increasing order. If any call
/// throws, the exception raised at the smallest index is rethrown after all
/// threads have joined, so failures are reported identically for every worker
/// count.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace msc

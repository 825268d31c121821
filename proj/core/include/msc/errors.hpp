// Copyright 2026 The MSC Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace msc {

// Numerical failure inside an algorithm: factorization breakdown, iteration
// caps, non-finite values. Maps to exit code 1 in the CLI.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An excursion did not return to the small set within the step cap.
class CapExceeded : public NumericError {
 public:
  CapExceeded(std::uint64_t chain, std::uint64_t cap)
      : NumericError("excursion for chain " + std::to_string(chain) +
                     " did not return to C within " + std::to_string(cap) +
                     " steps (check drift configuration)"),
        chain_(chain),
        cap_(cap) {}

  std::uint64_t chain() const noexcept { return chain_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t chain_;
  std::uint64_t cap_;
};

// Malformed input file or record. Maps to exit code 2 in the CLI.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace msc

// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace emtrace {

/// FIPS 180-4 SHA-256, lowercase hex digest.
std::string sha256_hex(std::string_view data);

}  // namespace emtrace

// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 emtrace contributors

#pragma once

#include <cstdio>
#include <string>

namespace emtrace {

/// Shortest round-trip decimal form of a double. Output bytes depend only on
/// the value, never on locale or thread count, which keeps serialized
/// artifacts byte-deterministic.
inline std::string format_double(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v) break;
    }
    return buf;
}

}  // namespace emtrace

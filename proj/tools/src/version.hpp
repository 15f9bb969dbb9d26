// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace slgate::cli {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace slgate::cli

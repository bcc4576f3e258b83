// Copyright 2026 lsbrdf contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace lsbrdf {

inline constexpr const char* version_string = "1.0.0";

}  // namespace lsbrdf

// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace ohsim::cmp {
struct EqConfig;
}  // namespace ohsim::cmp

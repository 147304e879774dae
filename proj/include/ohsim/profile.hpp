// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

namespace ohsim {

enum class ArithMode { Exact, FixedPoint, Noisy };

/// Arithmetic fidelity of a context.
///  - Exact: arbitrary-precision rational arithmetic, the correctness oracle.
///  - FixedPoint: every op result is rounded to frac_bits fractional bits and
///    the certified magnitude bound is checked against 2^int_bits, so the
///    overflow behavior of a bounded-precision backend is reproduced without
///    emulating rescaling.
///  - Noisy: Gaussian noise of std noise_sigma is added to each slot after
///    every ct-ct op.
struct ArithmeticProfile {
    ArithMode mode = ArithMode::Exact;
    int frac_bits = 42;
    int int_bits = 18;
    double noise_sigma = 0.0;

    static ArithmeticProfile exact() { return {}; }
    static ArithmeticProfile fixed_point(int frac, int integer);
    static ArithmeticProfile noisy(double sigma);

    /// Parses "exact" | "fixed:<frac>:<int>" | "noisy:<sigma>".
    static ArithmeticProfile parse(const std::string& text);
    std::string str() const;

    void validate() const;
    bool operator==(const ArithmeticProfile&) const = default;
};

}  // namespace ohsim

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace ohsim {

/// Exact rational scalar. All slot arithmetic in the simulator runs over
/// these, so Exact-profile results are bit-for-bit reproducible and the
/// precomputed rebalancing constants (which span ~2^-38 .. 2^68) never lose
/// precision.
using Rat = mpq_class;

/// 2^e as an exact rational, e may be negative.
Rat rat_pow2(long e);

/// Round x to the grid of multiples of 2^-frac_bits.
/// Rounds to nearest; ties go away from zero.
Rat rat_round_to_grid(const Rat& x, int frac_bits);

/// |x|.
inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

double rat_to_double(const Rat& x);
Rat rat_from_double(double x);

/// Decimal rendering with enough digits to be stable across runs.
std::string rat_to_string(const Rat& x);

/// Complex slot value over exact rationals (Gaussian rationals).
/// Closed under the simulator's op set: +, -, *, conjugation, and
/// multiplication by rational constants.
struct CSlot {
    Rat re;
    Rat im;

    CSlot() : re(0), im(0) {}
    CSlot(Rat r) : re(std::move(r)), im(0) {}          // NOLINT(google-explicit-constructor)
    CSlot(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    static CSlot from_double(double r, double i = 0.0);

    bool is_real() const { return sgn(im) == 0; }
    bool operator==(const CSlot& o) const { return re == o.re && im == o.im; }

    CSlot conj() const { return CSlot(re, Rat(-im)); }

    /// L1 norm |re| + |im|; an upper bound on the modulus, exact for reals.
    Rat l1() const { return rat_abs(re) + rat_abs(im); }
    /// Squared modulus re^2 + im^2 (exact).
    Rat abs2() const { return re * re + im * im; }
    /// Modulus as double (for error reporting only).
    double abs_double() const;
};

CSlot operator+(const CSlot& a, const CSlot& b);
CSlot operator-(const CSlot& a, const CSlot& b);
CSlot operator*(const CSlot& a, const CSlot& b);

}  // namespace ohsim

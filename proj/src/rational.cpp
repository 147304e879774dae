// SPDX-License-Identifier: Apache-2.0
#include "ohsim/rational.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ohsim {

Rat rat_pow2(long e) {
    mpz_class num = 1, den = 1;
    if (e >= 0) {
        mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat rat_round_to_grid(const Rat& x, int frac_bits) {
    if (frac_bits < 0) throw std::invalid_argument("frac_bits must be >= 0");
    // scaled = x * 2^frac, round scaled to integer n, return n / 2^frac.
    Rat scaled = x * rat_pow2(frac_bits);
    mpz_class num = scaled.get_num();
    mpz_class den = scaled.get_den();
    if (den == 1) return x;  // already on the grid
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    // q = floor, r in [0, den). Round half away from zero.
    mpz_class twice_r = r * 2;
    int cmp = mpz_cmp(twice_r.get_mpz_t(), den.get_mpz_t());
    if (cmp > 0 || (cmp == 0 && sgn(scaled) > 0)) q += 1;
    Rat out(q, rat_pow2(frac_bits).get_num());
    out.canonicalize();
    return out;
}

double rat_to_double(const Rat& x) { return x.get_d(); }

Rat rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("cannot convert non-finite double to rational");
    Rat r;
    mpq_set_d(r.get_mpq_t(), x);
    return r;
}

std::string rat_to_string(const Rat& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

CSlot CSlot::from_double(double r, double i) { return CSlot(rat_from_double(r), rat_from_double(i)); }

double CSlot::abs_double() const {
    double r = rat_to_double(re), i = rat_to_double(im);
    return std::hypot(r, i);
}

CSlot operator+(const CSlot& a, const CSlot& b) { return CSlot(a.re + b.re, a.im + b.im); }

CSlot operator-(const CSlot& a, const CSlot& b) { return CSlot(a.re - b.re, a.im - b.im); }

CSlot operator*(const CSlot& a, const CSlot& b) {
    // Real-only fast path; most circuits never touch the imaginary lane.
    if (a.is_real() && b.is_real()) return CSlot(a.re * b.re);
    return CSlot(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

}  // namespace ohsim

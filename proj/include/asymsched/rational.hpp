#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace asymsched {

// Exact rational arithmetic. All time, speed and energy quantities in this
// project are Rationals; no floating point enters any schedule or energy
// computation. Values are always kept in lowest terms with a positive
// denominator (GMP canonical form).
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit by design
    Rational(int n) : v_(n) {}   // NOLINT
    Rational(long num, long den);
    explicit Rational(mpq_class q);
    Rational(mpz_class num, mpz_class den);

    // Accepts "p" or "p/q" with optional leading '-'.
    static Rational parse(const std::string& text);

    // Renders "p" or "p/q"; parse(str()) round-trips exactly.
    std::string str() const;
    double to_double() const { return v_.get_d(); }
    long num_long() const { return v_.get_num().get_si(); }
    long den_long() const { return v_.get_den().get_si(); }
    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    // Integer exponent, exact. Negative exponents invert (base must be nonzero).
    Rational pow_int(long e) const;

private:
    mpq_class v_;
};

Rational abs(const Rational& q);
const Rational& min(const Rational& a, const Rational& b);
const Rational& max(const Rational& a, const Rational& b);

// base^exp as an exact rational when one exists (base > 0). For exp = p/q in
// lowest terms this requires numerator and denominator of base to be perfect
// q-th powers.
std::optional<Rational> exact_pow(const Rational& base, const Rational& exp);

// Approximate mode: base^exp (base > 0) in fixed-precision binary with 64
// fractional bits, rounded to nearest. Deterministic; used for reporting and
// ranking when an exact power does not exist.
Rational fixed_pow(const Rational& base, const Rational& exp);

// Rigorous enclosure comparison of x against ln(n)/n for integer n >= 1.
// Returns -1, 0, +1 for x < ln(n)/n, undecidable-at-max-precision (treated as
// equal), x > ln(n)/n. For n = 1 the threshold is exactly 0.
int compare_to_log_over_n(const Rational& x, long n);

}  // namespace asymsched

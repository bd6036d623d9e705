#include "asymsched/rational.hpp"

#include <stdexcept>

#include "asymsched/errors.hpp"

namespace asymsched {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

Rational::Rational(mpz_class num, mpz_class den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_ = mpq_class(std::move(num), std::move(den));
    v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rational Rational::parse(const std::string& text) {
    auto bad = [&]() { return ParseError("not a rational: '" + text + "'"); };
    if (text.empty()) throw bad();
    std::string num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    auto digits_ok = [](const std::string& s, bool allow_sign) {
        if (s.empty()) return false;
        size_t i = (allow_sign && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
    mpz_class n(num), d(den);
    if (d == 0) throw bad();
    return Rational(std::move(n), std::move(d));
}

std::string Rational::str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::pow_int(long e) const {
    if (e == 0) return Rational(1);
    bool invert = e < 0;
    unsigned long ue = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), ue);
    mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), ue);
    if (invert) {
        if (n == 0) throw std::invalid_argument("Rational: 0 to negative power");
        std::swap(n, d);
    }
    return Rational(std::move(n), std::move(d));
}

Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }
const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

namespace {

// Truncated integer q-th root of a/b (a, b > 0): largest r with r^q * b <= a.
mpz_class floor_root_of_quotient(const mpz_class& a, const mpz_class& b, unsigned long q) {
    mpz_class quot = a / b;
    mpz_class r;
    mpz_root(r.get_mpz_t(), quot.get_mpz_t(), q);
    // mpz_root of the floored quotient can be off by one in either direction;
    // correct against the exact inequality r^q * b <= a.
    auto fits = [&](const mpz_class& cand) {
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), cand.get_mpz_t(), q);
        return p * b <= a;
    };
    while (!fits(r)) r -= 1;
    while (fits(r + 1)) r += 1;
    return r;
}

}  // namespace

std::optional<Rational> exact_pow(const Rational& base, const Rational& exp) {
    if (base.sign() <= 0) throw std::invalid_argument("exact_pow: base must be positive");
    mpz_class p = exp.num(), qz = exp.den();
    if (!qz.fits_ulong_p()) return std::nullopt;
    unsigned long q = qz.get_ui();
    mpz_class a = base.num(), b = base.den();
    if (q > 1) {
        mpz_class ra, rb;
        if (!mpz_root(ra.get_mpz_t(), a.get_mpz_t(), q)) return std::nullopt;
        if (!mpz_root(rb.get_mpz_t(), b.get_mpz_t(), q)) return std::nullopt;
        a = ra;
        b = rb;
    }
    Rational root(a, b);
    if (!p.fits_slong_p()) return std::nullopt;
    return root.pow_int(p.get_si());
}

Rational fixed_pow(const Rational& base, const Rational& exp) {
    if (base.sign() <= 0) throw std::invalid_argument("fixed_pow: base must be positive");
    if (exp.sign() == 0) return Rational(1);
    if (exp.sign() < 0) {
        Rational inv(base.den(), base.num());
        return fixed_pow(inv, -exp);
    }
    if (auto ex = exact_pow(base, exp)) return *ex;

    // N = round(2^64 * (a/b)^(p/q)) computed with exact integer arithmetic:
    // N ~ ((2^(64q) * a^p) / b^p)^(1/q); the nearest integer test compares
    // (2N+1)^q * b^p against 2^q * 2^(64q) * a^p.
    mpz_class p = exp.num(), qz = exp.den();
    unsigned long q = qz.get_ui();
    unsigned long pu = p.get_ui();
    mpz_class ap, bp;
    mpz_pow_ui(ap.get_mpz_t(), base.num().get_mpz_t(), pu);
    mpz_pow_ui(bp.get_mpz_t(), base.den().get_mpz_t(), pu);
    mpz_class big = ap << (64 * q);
    mpz_class n = floor_root_of_quotient(big, bp, q);
    mpz_class half_test;
    mpz_pow_ui(half_test.get_mpz_t(), mpz_class(2 * n + 1).get_mpz_t(), q);
    mpz_class rhs = big << q;
    if (half_test * bp <= rhs) n += 1;
    return Rational(n, mpz_class(1) << 64);
}

namespace {

// atanh(z) = sum z^(2i+1) / (2i+1), as a rational enclosure with `terms`
// series terms; the geometric tail bound gives the upper end.
void atanh_enclosure(const Rational& z, int terms, Rational* lo, Rational* hi) {
    Rational sum(0);
    Rational z2 = z * z;
    Rational pw = z;
    for (int i = 0; i < terms; ++i) {
        sum += pw / Rational(2 * i + 1);
        pw *= z2;
    }
    // tail <= z^(2T+1) / ((2T+1) (1 - z^2))
    Rational tail = pw / (Rational(2 * terms + 1) * (Rational(1) - z2));
    *lo = sum;
    *hi = sum + tail;
}

// Enclosure of ln(n) for integer n >= 2: ln(n) = k ln 2 + ln(n / 2^k) with
// n/2^k in [1, 2), so both atanh arguments are <= 1/3 and converge fast.
void log_enclosure(long n, int terms, Rational* lo, Rational* hi) {
    long k = 0;
    long r = n;
    while (r >= 2) {
        r /= 2;
        ++k;
    }
    Rational rest(n, 1L << k);  // in [1, 2)
    Rational ln2_lo, ln2_hi, lr_lo, lr_hi;
    atanh_enclosure(Rational(1, 3), terms, &ln2_lo, &ln2_hi);
    Rational zr = (rest - Rational(1)) / (rest + Rational(1));
    atanh_enclosure(zr, terms, &lr_lo, &lr_hi);
    *lo = Rational(2) * (Rational(k) * ln2_lo + lr_lo);
    *hi = Rational(2) * (Rational(k) * ln2_hi + lr_hi);
}

}  // namespace

int compare_to_log_over_n(const Rational& x, long n) {
    if (n < 1) throw std::invalid_argument("compare_to_log_over_n: n must be >= 1");
    if (n == 1) return x.sign() == 0 ? 0 : (x.sign() < 0 ? -1 : 1);
    Rational xn = x * Rational(n);
    for (int terms : {8, 16, 32, 64, 128}) {
        Rational lo, hi;
        log_enclosure(n, terms, &lo, &hi);
        if (xn < lo) return -1;
        if (xn > hi) return 1;
    }
    return 0;
}

}  // namespace asymsched

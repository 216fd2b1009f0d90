#pragma once

// Exact rational arithmetic used everywhere a schedulability verdict depends
// on a threshold comparison. Backed by GMP so utilization sums and large
// periods never overflow or round.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dagsched {

using Rat = mpq_class;

inline Rat rat(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(static_cast<long>(num), static_cast<long>(den));
    r.canonicalize();
    return r;
}

// Accepts "p", "p/q" and plain decimals ("0.35"). Always base 10: gmpxx's
// base auto-detection would read a leading zero as octal.
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        mpz_class num(s.substr(0, slash), 10);
        mpz_class den(s.substr(slash + 1), 10);
        if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
        Rat r(num, den);
        r.canonicalize();
        return r;
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        mpz_class num(digits.empty() || digits == "-" ? "0" : digits, 10);
        mpz_class den(1);
        for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
        Rat r(num, den);
        r.canonicalize();
        return r;
    }
    Rat r{mpz_class(s, 10)};
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline double rat_d(const Rat& r) { return r.get_d(); }

inline long long rat_ceil_ll(const Rat& r) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw std::overflow_error("ceiling does not fit a machine integer");
    return q.get_si();
}

inline long long rat_floor_ll(const Rat& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw std::overflow_error("floor does not fit a machine integer");
    return q.get_si();
}

// Decimal rendering: exact when the reduced denominator is of the form
// 2^a * 5^b, otherwise falls back to the fraction string.
inline std::string rat_decimal_or_fraction(const Rat& r) {
    mpz_class den = r.get_den();
    int twos = 0, fives = 0;
    while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) { den /= 2; ++twos; }
    while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) { den /= 5; ++fives; }
    if (den != 1) return r.get_str();
    int places = twos > fives ? twos : fives;
    mpz_class scale(1);
    for (int i = 0; i < places; ++i) scale *= 10;
    mpz_class scaled = r.get_num() * scale / r.get_den();
    bool neg = scaled < 0;
    mpz_class mag = neg ? mpz_class(-scaled) : scaled;
    std::string digits = mag.get_str();
    while ((int)digits.size() <= places) digits.insert(digits.begin(), '0');
    std::string out = digits.substr(0, digits.size() - places);
    if (places > 0) out += "." + digits.substr(digits.size() - places);
    return (neg ? "-" : "") + out;
}

// Directed rational enclosure of an irrational constant.
struct RatInterval {
    Rat lo;
    Rat hi;
};

// Enclosure of sqrt(n) with width <= 10^-digits.
inline RatInterval sqrt_enclosure(unsigned long n, int digits = 18) {
    mpz_class scale(1);
    for (int i = 0; i < digits; ++i) scale *= 10;
    mpz_class target = mpz_class(static_cast<unsigned long>(n)) * scale * scale;
    mpz_class root;
    mpz_sqrt(root.get_mpz_t(), target.get_mpz_t());  // floor(sqrt(target))
    Rat lo(root, scale);
    lo.canonicalize();
    Rat hi(root + 1, scale);
    hi.canonicalize();
    return {lo, hi};
}

}  // namespace dagsched

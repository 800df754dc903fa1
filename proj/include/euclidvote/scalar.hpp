#pragma once

#include <climits>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace euclidvote {

using bigint = boost::multiprecision::cpp_int;

// Exact rational scalar, the only number type used in geometric computation.
// Canonical form: den > 0, gcd(|num|, den) == 1. Values whose canonical
// numerator and denominator fit in 64 bits are always stored inline; wider
// values promote to heap-allocated cpp_int and demote again as soon as they
// fit, so equal values always have equal representations.
class Scalar {
public:
    Scalar() : num_(0), den_(1) {}
    Scalar(long long n) : num_(n), den_(1) {}
    Scalar(int n) : num_(n), den_(1) {}
    Scalar(long long n, long long d) { *this = make(n, d); }

    Scalar(const Scalar& o)
        : num_(o.num_), den_(o.den_),
          big_(o.big_ ? std::make_unique<Big>(*o.big_) : nullptr) {}
    Scalar(Scalar&&) noexcept = default;
    Scalar& operator=(const Scalar& o) {
        if (this != &o) {
            num_ = o.num_;
            den_ = o.den_;
            big_ = o.big_ ? std::make_unique<Big>(*o.big_) : nullptr;
        }
        return *this;
    }
    Scalar& operator=(Scalar&&) noexcept = default;

    static Scalar from_big(bigint n, bigint d) {
        if (d == 0) throw std::domain_error("Scalar: zero denominator");
        if (d < 0) { n = -n; d = -d; }
        bigint g = boost::multiprecision::gcd(n < 0 ? bigint(-n) : n, d);
        if (g > 1) { n /= g; d /= g; }
        Scalar r;
        if (fits_ll(n) && fits_ll(d)) {
            r.num_ = n.convert_to<long long>();
            r.den_ = d.convert_to<long long>();
        } else {
            r.big_ = std::make_unique<Big>(Big{std::move(n), std::move(d)});
            r.num_ = 0;
            r.den_ = 1;
        }
        return r;
    }

    // Accepts "p", "p/q", and exact decimals like "-1.25"; anything else throws.
    static Scalar from_string(std::string_view s);

    int sign() const {
        if (big_) return big_->num.sign();
        return (num_ > 0) - (num_ < 0);
    }

    // True for inline integers, writing the value; lets predicates take a
    // machine-int shortcut when every operand qualifies.
    bool small_int(long long& out) const {
        if (big_ || den_ != 1) return false;
        out = num_;
        return true;
    }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return big_ ? big_->den == 1 : den_ == 1; }

    Scalar numerator() const {
        if (big_) return from_big(big_->num, 1);
        return Scalar(num_);
    }
    Scalar denominator() const {
        if (big_) return from_big(big_->den, 1);
        return Scalar(den_);
    }

    friend Scalar operator-(const Scalar& a) {
        if (!a.big_ && a.num_ != LLONG_MIN) {
            Scalar r;
            r.num_ = -a.num_;
            r.den_ = a.den_;
            return r;
        }
        bigint n, d;
        a.to_big(n, d);
        return from_big(-n, d);
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (!a.big_ && !b.big_) {
            if (a.den_ == 1 && b.den_ == 1) {
                long long n;
                if (!__builtin_add_overflow(a.num_, b.num_, &n)) {
                    Scalar r;
                    r.num_ = n;
                    return r;
                }
            } else {
                long long t1, t2, n, d;
                if (!__builtin_mul_overflow(a.num_, b.den_, &t1) &&
                    !__builtin_mul_overflow(b.num_, a.den_, &t2) &&
                    !__builtin_add_overflow(t1, t2, &n) &&
                    !__builtin_mul_overflow(a.den_, b.den_, &d))
                    return reduce_small(n, d);
            }
        }
        bigint an, ad, bn, bd;
        a.to_big(an, ad);
        b.to_big(bn, bd);
        return from_big(an * bd + bn * ad, ad * bd);
    }

    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        if (!a.big_ && !b.big_) {
            if (a.den_ == 1 && b.den_ == 1) {
                long long n;
                if (!__builtin_sub_overflow(a.num_, b.num_, &n)) {
                    Scalar r;
                    r.num_ = n;
                    return r;
                }
            } else {
                long long t1, t2, n, d;
                if (!__builtin_mul_overflow(a.num_, b.den_, &t1) &&
                    !__builtin_mul_overflow(b.num_, a.den_, &t2) &&
                    !__builtin_sub_overflow(t1, t2, &n) &&
                    !__builtin_mul_overflow(a.den_, b.den_, &d))
                    return reduce_small(n, d);
            }
        }
        bigint an, ad, bn, bd;
        a.to_big(an, ad);
        b.to_big(bn, bd);
        return from_big(an * bd - bn * ad, ad * bd);
    }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (!a.big_ && !b.big_) {
            // Cross-reduce before multiplying; the result is then canonical.
            long long g1 = ll_gcd(a.num_, b.den_);
            long long g2 = ll_gcd(b.num_, a.den_);
            long long n, d;
            if (!__builtin_mul_overflow(a.num_ / g1, b.num_ / g2, &n) &&
                !__builtin_mul_overflow(a.den_ / g2, b.den_ / g1, &d)) {
                Scalar r;
                r.num_ = n;
                r.den_ = d;
                return r;
            }
        }
        bigint an, ad, bn, bd;
        a.to_big(an, ad);
        b.to_big(bn, bd);
        return from_big(an * bn, ad * bd);
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (b.is_zero()) throw std::domain_error("Scalar: division by zero");
        if (!a.big_ && !b.big_ && b.num_ != LLONG_MIN) {
            long long bn = b.num_ < 0 ? -b.num_ : b.num_;
            long long bs = b.num_ < 0 ? -1 : 1;
            long long g1 = ll_gcd(a.num_, bn);
            long long g2 = ll_gcd(b.den_, a.den_);
            long long n, d;
            if (!__builtin_mul_overflow(a.num_ / g1, bs * (b.den_ / g2), &n) &&
                !__builtin_mul_overflow(a.den_ / g2, bn / g1, &d)) {
                Scalar r;
                r.num_ = n;
                r.den_ = d;
                return r;
            }
        }
        bigint an, ad, bn, bd;
        a.to_big(an, ad);
        b.to_big(bn, bd);
        return from_big(an * bd, ad * bn);
    }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
        if (a.big_ && b.big_)
            return a.big_->num == b.big_->num && a.big_->den == b.big_->den;
        return false;  // canonical: a value fitting inline is stored inline
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    friend bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }

    static int compare(const Scalar& a, const Scalar& b) {
        if (!a.big_ && !b.big_) {
            __int128 lhs = (__int128)a.num_ * b.den_ - (__int128)b.num_ * a.den_;
            return (lhs > 0) - (lhs < 0);
        }
        bigint an, ad, bn, bd;
        a.to_big(an, ad);
        b.to_big(bn, bd);
        bigint lhs = an * bd - bn * ad;
        return lhs.sign();
    }

    Scalar abs() const { return sign() < 0 ? -*this : *this; }

    // gcd of two integer Scalars, non-negative.
    friend Scalar integer_gcd(const Scalar& a, const Scalar& b) {
        if (!a.is_integer() || !b.is_integer())
            throw std::invalid_argument("integer_gcd: non-integer operand");
        if (!a.big_ && !b.big_ && a.num_ != LLONG_MIN && b.num_ != LLONG_MIN) {
            Scalar r;
            r.num_ = ll_gcd(a.num_ < 0 ? -a.num_ : a.num_,
                            b.num_ < 0 ? -b.num_ : b.num_);
            return r;
        }
        bigint an, ad, bn, bd;
        a.to_big(an, ad);
        b.to_big(bn, bd);
        return from_big(boost::multiprecision::gcd(an < 0 ? bigint(-an) : an,
                                                   bn < 0 ? bigint(-bn) : bn),
                        1);
    }

    std::string to_string() const {
        if (big_) {
            std::string s = big_->num.str();
            if (big_->den != 1) s += "/" + big_->den.str();
            return s;
        }
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

    double to_double() const {
        if (big_)
            return boost::multiprecision::cpp_rational(big_->num, big_->den)
                .convert_to<double>();
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    std::size_t hash() const {
        if (!big_) {
            std::uint64_t h = static_cast<std::uint64_t>(num_) * 0x9e3779b97f4a7c15ULL;
            h ^= static_cast<std::uint64_t>(den_) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            return static_cast<std::size_t>(h);
        }
        constexpr long long P = (1LL << 61) - 1;
        long long nm = ((big_->num % P) + P).convert_to<long long>() % P;
        long long dm = (big_->den % P).convert_to<long long>();
        std::uint64_t h = static_cast<std::uint64_t>(nm) * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<std::uint64_t>(dm) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h ^ 0x517cc1b727220a95ULL);
    }

    friend std::ostream& operator<<(std::ostream& os, const Scalar& s) {
        return os << s.to_string();
    }

private:
    struct Big {
        bigint num, den;
    };

    static bool fits_ll(const bigint& v) {
        return v >= LLONG_MIN && v <= LLONG_MAX;
    }

    // gcd on possibly-negative operands, gcd(0,0) == 0; |LLONG_MIN| via unsigned.
    // Divider call sites never pass two zeros (denominators are positive).
    static long long ll_gcd(long long a, long long b) {
        unsigned long long ua = a < 0 ? 0ULL - (unsigned long long)a : (unsigned long long)a;
        unsigned long long ub = b < 0 ? 0ULL - (unsigned long long)b : (unsigned long long)b;
        while (ub) {
            unsigned long long t = ua % ub;
            ua = ub;
            ub = t;
        }
        return (long long)ua;
    }

    // n/d with d > 0 known, reduction pending; stays in 64 bits.
    static Scalar reduce_small(long long n, long long d) {
        long long g = ll_gcd(n, d);
        Scalar r;
        r.num_ = n / g;
        r.den_ = d / g;
        return r;
    }

    static Scalar make(long long n, long long d) {
        if (d == 0) throw std::domain_error("Scalar: zero denominator");
        if (d == LLONG_MIN || n == LLONG_MIN) return from_big(bigint(n), bigint(d));
        if (d < 0) { n = -n; d = -d; }
        return reduce_small(n, d);
    }

    void to_big(bigint& n, bigint& d) const {
        if (big_) {
            n = big_->num;
            d = big_->den;
        } else {
            n = num_;
            d = den_;
        }
    }

    long long num_, den_;
    std::unique_ptr<Big> big_;
};

inline Scalar Scalar::from_string(std::string_view s) {
    auto fail = [&]() -> Scalar {
        throw std::invalid_argument("Scalar: cannot parse \"" + std::string(s) + "\"");
    };
    // cpp_int's string constructor treats a leading 0 as octal; feed it
    // decimal digit strings with leading zeros stripped.
    auto from_digits = [](std::string digits) {
        std::size_t nz = digits.find_first_not_of('0');
        return bigint(nz == std::string::npos ? "0" : digits.substr(nz));
    };
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    std::size_t digits_begin = i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
    if (i == digits_begin) return fail();
    std::string int_part(s.substr(digits_begin, i - digits_begin));
    if (i == s.size()) {
        bigint n = from_digits(int_part);
        return from_big(neg ? -n : n, 1);
    }
    if (s[i] == '/') {
        ++i;
        std::size_t den_begin = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == den_begin || i != s.size()) return fail();
        bigint d = from_digits(std::string(s.substr(den_begin)));
        if (d == 0) return fail();
        bigint n = from_digits(int_part);
        return from_big(neg ? -n : n, d);
    }
    if (s[i] == '.') {
        ++i;
        std::size_t frac_begin = i;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
        if (i == frac_begin || i != s.size()) return fail();
        std::string frac(s.substr(frac_begin));
        bigint n = from_digits(int_part + frac);
        bigint d = 1;
        for (std::size_t k = 0; k < frac.size(); ++k) d *= 10;
        return from_big(neg ? -n : n, d);
    }
    return fail();
}

}  // namespace euclidvote

template <>
struct std::hash<euclidvote::Scalar> {
    std::size_t operator()(const euclidvote::Scalar& s) const { return s.hash(); }
};

#pragma once

// Exact rational numbers backed by GMP.
//
// Rat is always in lowest terms with a positive denominator (mpq_class
// canonicalizes after every operation). Text form is "p/q", or "p" when
// q == 1; parsing accepts only that form, never decimals.

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace porosity {

using Int = mpz_class;

class Rat {
public:
    Rat() = default;
    Rat(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
    Rat(int v) : value_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    explicit Rat(const Int& v) : value_(v) {}
    Rat(const Int& num, const Int& den) {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        value_.get_num() = num;
        value_.get_den() = den;
        value_.canonicalize();
    }
    explicit Rat(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

    static Rat parse(std::string_view text);

    const Int& num() const { return value_.get_num(); }
    const Int& den() const { return value_.get_den(); }
    const mpq_class& raw() const { return value_; }

    int sign() const { return sgn(value_); }
    bool is_integer() const { return value_.get_den() == 1; }

    Int floor() const {
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
        return q;
    }
    Int ceil() const {
        Int q;
        mpz_cdiv_q(q.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
        return q;
    }

    double to_double() const { return value_.get_d(); }
    std::string to_string() const;
    // Decimal rendering with `digits` significant digits; presentation only.
    std::string to_decimal(int digits = 12) const;

    Rat operator-() const { return Rat(mpq_class(-value_)); }
    Rat& operator+=(const Rat& o) { value_ += o.value_; return *this; }
    Rat& operator-=(const Rat& o) { value_ -= o.value_; return *this; }
    Rat& operator*=(const Rat& o) { value_ *= o.value_; return *this; }
    Rat& operator/=(const Rat& o) {
        if (o.sign() == 0) throw std::domain_error("division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

private:
    mpq_class value_{0};
};

inline Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

inline Int pow_int(unsigned long base, unsigned long exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline Int pow3(unsigned long n) { return pow_int(3, n); }

// 3^{-n}
inline Rat inv_pow3(unsigned long n) { return Rat(Int(1), pow3(n)); }

inline Rat pow(const Rat& base, unsigned long exp) {
    Int n, d;
    mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), exp);
    mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), exp);
    return Rat(n, d);
}

inline std::string Rat::to_string() const {
    if (is_integer()) return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

inline std::string Rat::to_decimal(int digits) const {
    mpf_class f(value_, 256);
    char buf[128];
    gmp_snprintf(buf, sizeof buf, "%.*Fg", digits, f.get_mpf_t());
    return buf;
}

namespace detail {

inline bool parse_integer(std::string_view s, Int& out) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') i = 1;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    std::string digits(s.substr(i));
    out.set_str(digits, 10);
    if (s[0] == '-') out = -out;
    return true;
}

}  // namespace detail

inline Rat Rat::parse(std::string_view text) {
    auto slash = text.find('/');
    Int n, d(1);
    bool ok = slash == std::string_view::npos
                  ? detail::parse_integer(text, n)
                  : detail::parse_integer(text.substr(0, slash), n) &&
                        detail::parse_integer(text.substr(slash + 1), d) &&
                        text[slash + 1] != '-' && text[slash + 1] != '+';
    if (!ok)
        throw std::invalid_argument("not an exact rational (expected p/q or integer): '" +
                                    std::string(text) + "'");
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rat(n, d);
}

}  // namespace porosity

template <>
struct std::hash<porosity::Rat> {
    std::size_t operator()(const porosity::Rat& r) const noexcept {
        std::size_t h1 = mpz_get_ui(r.num().get_mpz_t());
        std::size_t h2 = mpz_get_ui(r.den().get_mpz_t());
        return h1 * 1000003u ^ h2 ^ static_cast<std::size_t>(r.sign() + 1);
    }
};

#pragma once

#include <gmpxx.h>

#include <atomic>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace escset {

/// Largest number of decimal digits allowed in the numerator or denominator
/// of an ExactScalar. Arithmetic that would exceed it throws ResourceError.
std::size_t digit_cap() noexcept;
void set_digit_cap(std::size_t digits) noexcept;

/// RAII override of the digit cap, restoring the previous value on exit.
class ScopedDigitCap {
public:
    explicit ScopedDigitCap(std::size_t digits) noexcept : previous_(digit_cap()) { set_digit_cap(digits); }
    ~ScopedDigitCap() { set_digit_cap(previous_); }
    ScopedDigitCap(const ScopedDigitCap&) = delete;
    ScopedDigitCap& operator=(const ScopedDigitCap&) = delete;

private:
    std::size_t previous_;
};

/**
 * Arbitrary-precision rational number, always in lowest terms with a positive
 * denominator. A thin value wrapper over GMP's mpq_class that enforces the
 * digit cap after every arithmetic operation, so runaway denominators fail
 * loudly instead of stalling.
 */
class ExactScalar {
public:
    ExactScalar() = default;
    ExactScalar(std::int64_t n); // NOLINT(google-explicit-constructor)
    ExactScalar(std::int64_t num, std::int64_t den);

    /// Parses "p", "-p" or "p/q" (whitespace-free). Throws ContractError.
    static ExactScalar parse(std::string_view text);

    /// "p" when the value is an integer, otherwise "p/q".
    std::string to_string() const;
    double to_double() const { return value_.get_d(); }

    bool is_integer() const;
    /// Largest integer not exceeding the value.
    ExactScalar floor() const;
    ExactScalar abs() const;

    std::string numerator_string() const { return value_.get_num().get_str(); }
    std::string denominator_string() const { return value_.get_den().get_str(); }
    /// Decimal digit count (upper bound, exact up to one) of the larger of
    /// numerator and denominator.
    std::size_t digits() const;

    ExactScalar& operator+=(const ExactScalar& o);
    ExactScalar& operator-=(const ExactScalar& o);
    ExactScalar& operator*=(const ExactScalar& o);
    ExactScalar& operator/=(const ExactScalar& o);

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
    ExactScalar operator-() const;

    friend bool operator==(const ExactScalar& a, const ExactScalar& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    int sign() const { return sgn(value_); }
    const mpq_class& raw() const { return value_; }

private:
    explicit ExactScalar(mpq_class v);
    void enforce_cap() const;

    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& x);

ExactScalar min(const ExactScalar& a, const ExactScalar& b);
ExactScalar max(const ExactScalar& a, const ExactScalar& b);

} // namespace escset

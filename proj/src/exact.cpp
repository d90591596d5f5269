#include "escset/exact.hpp"

#include "escset/errors.hpp"

#include <cmath>
#include <ostream>

namespace escset {

namespace {

std::atomic<std::size_t> g_digit_cap{10000};

bool is_integer_text(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) {
        return false;
    }
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') {
            return false;
        }
    }
    return true;
}

std::size_t decimal_digits(const mpz_class& z) {
    // sizeinbase over base 2 is cheap; convert with log10(2).
    const auto bits = mpz_sizeinbase(z.get_mpz_t(), 2);
    return static_cast<std::size_t>(std::ceil(static_cast<double>(bits) * 0.30102999566398120));
}

} // namespace

std::size_t digit_cap() noexcept { return g_digit_cap.load(std::memory_order_relaxed); }
void set_digit_cap(std::size_t digits) noexcept { g_digit_cap.store(digits, std::memory_order_relaxed); }

ExactScalar::ExactScalar(std::int64_t n) : value_(mpz_class(std::to_string(n))) {}

ExactScalar::ExactScalar(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw ContractError("ExactScalar: zero denominator");
    }
    value_ = mpq_class(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
    value_.canonicalize();
    enforce_cap();
}

ExactScalar::ExactScalar(mpq_class v) : value_(std::move(v)) { enforce_cap(); }

ExactScalar ExactScalar::parse(std::string_view text) {
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    const auto den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_text(num) || !is_integer_text(den)) {
        throw ContractError("not a rational of the form p or p/q: '" + std::string(text) + "'");
    }
    auto strip = [](std::string_view s) { return std::string(s[0] == '+' ? s.substr(1) : s); };
    mpz_class n(strip(num));
    mpz_class d(strip(den));
    if (d == 0) {
        throw ContractError("zero denominator in '" + std::string(text) + "'");
    }
    mpq_class q(n, d);
    q.canonicalize();
    return ExactScalar(std::move(q));
}

std::string ExactScalar::to_string() const {
    if (is_integer()) {
        return value_.get_num().get_str();
    }
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

bool ExactScalar::is_integer() const { return value_.get_den() == 1; }

ExactScalar ExactScalar::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    return ExactScalar(mpq_class(q));
}

ExactScalar ExactScalar::abs() const { return ExactScalar(mpq_class(::abs(value_))); }

std::size_t ExactScalar::digits() const {
    return std::max(decimal_digits(value_.get_num()), decimal_digits(value_.get_den()));
}

void ExactScalar::enforce_cap() const {
    const auto cap = digit_cap();
    if (digits() > cap) {
        throw ResourceError("exact integer exceeded the digit cap of " + std::to_string(cap) + " digits");
    }
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
    value_ += o.value_;
    enforce_cap();
    return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
    value_ -= o.value_;
    enforce_cap();
    return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
    value_ *= o.value_;
    enforce_cap();
    return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
    if (o.sign() == 0) {
        throw ContractError("ExactScalar: division by zero");
    }
    value_ /= o.value_;
    enforce_cap();
    return *this;
}

ExactScalar ExactScalar::operator-() const { return ExactScalar(mpq_class(-value_)); }

std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << x.to_string(); }

ExactScalar min(const ExactScalar& a, const ExactScalar& b) { return b < a ? b : a; }
ExactScalar max(const ExactScalar& a, const ExactScalar& b) { return a < b ? b : a; }

} // namespace escset

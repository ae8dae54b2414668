#include "spt/phase.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "spt/error.hpp"

namespace spt {

namespace {

std::int64_t mod_floor(__int128 a, __int128 b) {
    __int128 r = a % b;
    if (r < 0)
        r += b;
    return static_cast<std::int64_t>(r);
}

} // namespace

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
    std::int64_t g = std::gcd(a, b);
    __int128 l = static_cast<__int128>(a / g) * b;
    if (l > Phase::kMaxDenominator)
        throw Error(ErrorKind::unsupported_denominator,
                    "common denominator exceeds " + std::to_string(Phase::kMaxDenominator));
    return static_cast<std::int64_t>(l);
}

Phase Phase::from_fraction(std::int64_t a, std::int64_t b) {
    if (b <= 0)
        throw Error(ErrorKind::out_of_range, "phase denominator must be positive");
    std::int64_t r = mod_floor(a, b);
    std::int64_t g = std::gcd(r, b);
    Phase p;
    p.num_ = r / g;
    p.den_ = b / g;
    if (p.den_ > kMaxDenominator)
        throw Error(ErrorKind::unsupported_denominator, "denominator " + std::to_string(p.den_));
    return p;
}

Phase Phase::operator*(const Phase &o) const {
    if (o.num_ == 0)
        return *this;
    if (num_ == 0)
        return o;
    std::int64_t d = lcm_checked(den_, o.den_);
    __int128 n = static_cast<__int128>(num_) * (d / den_) + static_cast<__int128>(o.num_) * (d / o.den_);
    return from_fraction(mod_floor(n, d), d);
}

Phase Phase::inverse() const {
    Phase p;
    if (num_ != 0) {
        p.num_ = den_ - num_;
        p.den_ = den_;
    }
    return p;
}

Phase Phase::pow(std::int64_t k) const {
    return from_fraction(mod_floor(static_cast<__int128>(num_) * k, den_), den_);
}

std::int64_t Phase::numerator_over(std::int64_t denominator) const {
    if (denominator % den_ != 0)
        throw Error(ErrorKind::internal_inconsistency,
                    "denominator " + std::to_string(denominator) + " is not a multiple of " + std::to_string(den_));
    return num_ * (denominator / den_);
}

std::complex<double> Phase::to_complex() const {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(num_) / static_cast<double>(den_);
    return {std::cos(angle), std::sin(angle)};
}

std::string Phase::to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

} // namespace spt

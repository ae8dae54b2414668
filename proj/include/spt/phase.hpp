#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>

namespace spt {

/// An exact root of unity exp(2 pi i num/den), stored reduced with 0 <= num < den.
class Phase {
  public:
    /// Largest denominator we accept; products stay inside 128-bit intermediates.
    static constexpr std::int64_t kMaxDenominator = std::int64_t{1} << 40;

    constexpr Phase() = default;

    /// exp(2 pi i a/b) for any integers a and b > 0.
    static Phase from_fraction(std::int64_t a, std::int64_t b);
    static Phase one() { return Phase(); }

    std::int64_t num() const noexcept { return num_; }
    std::int64_t den() const noexcept { return den_; }
    bool is_one() const noexcept { return num_ == 0; }

    Phase operator*(const Phase &o) const;
    Phase operator/(const Phase &o) const { return *this * o.inverse(); }
    Phase &operator*=(const Phase &o) { return *this = *this * o; }
    Phase &operator/=(const Phase &o) { return *this = *this / o; }
    Phase inverse() const;
    Phase pow(std::int64_t k) const;

    /// Numerator of this phase over a denominator that is a multiple of den().
    std::int64_t numerator_over(std::int64_t denominator) const;

    std::complex<double> to_complex() const;
    std::string to_string() const;

    friend bool operator==(const Phase &, const Phase &) = default;
    friend bool operator<(const Phase &a, const Phase &b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }

  private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::int64_t lcm_checked(std::int64_t a, std::int64_t b);

struct PhaseHash {
    std::size_t operator()(const Phase &p) const noexcept {
        return std::hash<std::int64_t>()(p.num() * 1000003 + p.den());
    }
};

} // namespace spt

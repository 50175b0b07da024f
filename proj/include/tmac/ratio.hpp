#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tmac {

/// Exact rational number kept in lowest terms with a positive denominator.
///
/// All scoring arithmetic (likelihood, PIA, band thresholds) goes through
/// this type; decimal strings are produced only by to_fixed().
class Ratio {
public:
    constexpr Ratio() = default;
    Ratio(std::int64_t numerator, std::int64_t denominator = 1);

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }

    friend Ratio operator+(const Ratio& a, const Ratio& b);
    friend Ratio operator-(const Ratio& a, const Ratio& b);
    friend Ratio operator*(const Ratio& a, const Ratio& b);

    friend bool operator==(const Ratio& a, const Ratio& b) = default;
    friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b);

    /// Decimal rendering with `decimals` fractional digits, rounding half away
    /// from zero.
    std::string to_fixed(int decimals) const;

    /// "num/den" or "num" when the denominator is 1.
    std::string to_string() const;

    /// Parses a plain decimal literal ("1", "0.5", "-2.125") exactly.
    static std::optional<Ratio> parse_decimal(std::string_view text);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

}  // namespace tmac

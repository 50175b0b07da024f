#include "tmac/ratio.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace tmac {
namespace {

__extension__ using wide = __int128;

std::int64_t narrow(wide v) {
    if (v > INT64_MAX || v < INT64_MIN) {
        throw std::overflow_error("ratio arithmetic overflow");
    }
    return static_cast<std::int64_t>(v);
}

Ratio make(wide num, wide den) {
    if (den == 0) {
        throw std::domain_error("ratio with zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    wide a = num < 0 ? -num : num;
    wide b = den;
    while (b != 0) {
        wide t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    return Ratio(narrow(num), narrow(den));
}

}  // namespace

Ratio::Ratio(std::int64_t numerator, std::int64_t denominator) {
    if (denominator == 0) {
        throw std::domain_error("ratio with zero denominator");
    }
    if (denominator < 0) {
        if (numerator == INT64_MIN || denominator == INT64_MIN) {
            throw std::overflow_error("ratio arithmetic overflow");
        }
        numerator = -numerator;
        denominator = -denominator;
    }
    const std::int64_t g = std::gcd(numerator, denominator);
    num_ = g > 1 ? numerator / g : numerator;
    den_ = g > 1 ? denominator / g : denominator;
}

Ratio operator+(const Ratio& a, const Ratio& b) {
    return make(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
}

Ratio operator-(const Ratio& a, const Ratio& b) {
    return make(wide(a.num_) * b.den_ - wide(b.num_) * a.den_, wide(a.den_) * b.den_);
}

Ratio operator*(const Ratio& a, const Ratio& b) {
    return make(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
}

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    const wide lhs = wide(a.num_) * b.den_;
    const wide rhs = wide(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string Ratio::to_fixed(int decimals) const {
    if (decimals < 0 || decimals > 18) {
        throw std::invalid_argument("to_fixed: decimals out of range");
    }
    wide scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;

    const bool negative = num_ < 0;
    const wide magnitude = negative ? -wide(num_) : wide(num_);
    const wide scaled = magnitude * scale;
    wide q = scaled / den_;
    const wide r = scaled % den_;
    if (2 * r >= den_) ++q;

    const wide whole = q / scale;
    wide frac = q % scale;

    std::string digits;
    if (decimals > 0) {
        digits.assign(static_cast<std::size_t>(decimals), '0');
        for (int i = decimals - 1; i >= 0; --i) {
            digits[static_cast<std::size_t>(i)] = static_cast<char>('0' + static_cast<int>(frac % 10));
            frac /= 10;
        }
    }
    std::string out;
    if (negative && q != 0) out += '-';
    out += std::to_string(static_cast<std::int64_t>(whole));
    if (decimals > 0) {
        out += '.';
        out += digits;
    }
    return out;
}

std::string Ratio::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<Ratio> Ratio::parse_decimal(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    const auto dot = text.find('.');
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (whole.empty() && frac.empty()) return std::nullopt;
    if (dot != std::string_view::npos && frac.empty()) return std::nullopt;
    if (frac.size() > 17) return std::nullopt;

    auto digits_only = [](std::string_view s) {
        for (char c : s) {
            if (c < '0' || c > '9') return false;
        }
        return true;
    };
    if (!digits_only(whole) || !digits_only(frac)) return std::nullopt;

    std::int64_t w = 0;
    if (!whole.empty()) {
        auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), w);
        if (ec != std::errc{} || ptr != whole.data() + whole.size()) return std::nullopt;
    }
    std::int64_t f = 0;
    std::int64_t scale = 1;
    for (char c : frac) {
        f = f * 10 + (c - '0');
        scale *= 10;
    }
    try {
        Ratio r = Ratio(w) + Ratio(f, scale);
        return negative ? Ratio(0) - r : r;
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
}

}  // namespace tmac

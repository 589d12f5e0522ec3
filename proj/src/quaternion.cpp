#include "qwirt/quaternion.hpp"

#include <array>
#include <cctype>
#include <charconv>

namespace qwirt {

QuatD imaginary_unit(const QuatD& q) {
    const double n = std::sqrt(q.imag_norm2());
    if (n == 0.0) throw RealArgument("imaginary unit of a real quaternion");
    return {0.0, q.x / n, q.y / n, q.z / n};
}

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::size_t scan_digits(std::string_view text, std::size_t pos) {
    while (pos < text.size() && is_digit(text[pos])) ++pos;
    return pos;
}

void skip_space(std::string_view text, std::size_t& pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

int unit_index(char c) {
    switch (c) {
        case 'i': return 1;
        case 'j': return 2;
        case 'k': return 3;
        default: return -1;
    }
}

std::string component_string(const Rational& r) {
    return r.get_str();
}

std::string double_string(double v) {
    std::array<char, 32> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

template <typename T, typename Fmt>
std::string format_quaternion(const Quaternion<T>& q, Fmt fmt) {
    const std::array<const T*, 4> parts{&q.w, &q.x, &q.y, &q.z};
    static constexpr std::array<const char*, 4> suffix{"", "i", "j", "k"};
    std::string out;
    for (std::size_t c = 0; c < 4; ++c) {
        const T& v = *parts[c];
        if (v == 0) continue;
        const bool negative = v < 0;
        const T mag = negative ? T(-v) : v;
        if (negative) {
            out += '-';
        } else if (!out.empty()) {
            out += '+';
        }
        if (c == 0 || mag != 1) out += fmt(mag);
        out += suffix[c];
    }
    return out.empty() ? "0" : out;
}

}  // namespace

bool scan_unsigned_rational(std::string_view text, std::size_t& pos, Rational& out) {
    const std::size_t start = pos;
    std::size_t end = scan_digits(text, start);
    if (end == start) return false;
    std::string num(text.substr(start, end - start));
    if (end < text.size() && text[end] == '/' && end + 1 < text.size() && is_digit(text[end + 1])) {
        const std::size_t den_end = scan_digits(text, end + 1);
        mpz_class den(std::string(text.substr(end + 1, den_end - end - 1)), 10);
        if (den == 0) throw SyntaxError("zero denominator", end + 1);
        out = Rational(mpz_class(num, 10), den);
        out.canonicalize();
        pos = den_end;
        return true;
    }
    if (end < text.size() && text[end] == '.' && end + 1 < text.size() && is_digit(text[end + 1])) {
        const std::size_t frac_end = scan_digits(text, end + 1);
        const std::string frac(text.substr(end + 1, frac_end - end - 1));
        mpz_class scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        out = Rational(mpz_class(num + frac, 10), scale);
        out.canonicalize();
        pos = frac_end;
        return true;
    }
    out = Rational(mpz_class(num, 10));
    pos = end;
    return true;
}

QuatQ parse_quaternion(std::string_view text) {
    QuatQ q;
    std::size_t pos = 0;
    bool first = true;
    skip_space(text, pos);
    if (pos == text.size()) throw SyntaxError("empty quaternion literal", pos);
    while (pos < text.size()) {
        int sign = 1;
        if (text[pos] == '+' || text[pos] == '-') {
            sign = text[pos] == '-' ? -1 : 1;
            ++pos;
            skip_space(text, pos);
        } else if (!first) {
            throw SyntaxError("expected '+' or '-'", pos);
        }
        Rational value(1);
        const bool has_number = scan_unsigned_rational(text, pos, value);
        int unit = 0;
        if (pos < text.size() && unit_index(text[pos]) > 0) {
            unit = unit_index(text[pos]);
            ++pos;
        } else if (!has_number) {
            throw SyntaxError("expected a number or one of i, j, k", pos);
        }
        if (sign < 0) value = -value;
        switch (unit) {
            case 0: q.w += value; break;
            case 1: q.x += value; break;
            case 2: q.y += value; break;
            default: q.z += value; break;
        }
        first = false;
        skip_space(text, pos);
    }
    return q;
}

std::string to_string(const QuatQ& q) { return format_quaternion(q, component_string); }

std::string to_string(const QuatD& q) { return format_quaternion(q, double_string); }

}  // namespace qwirt

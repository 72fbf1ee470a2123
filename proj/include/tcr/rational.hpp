#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tcr {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t p, std::int64_t q = 1) {
    if (q == 0) throw std::invalid_argument("zero denominator");
    return Rational(BigInt(p), BigInt(q));
}

/// Always "p/q", including integers ("2/1"), so reports have one number shape.
inline std::string to_string(const Rational& x) {
    return boost::multiprecision::numerator(x).str() + "/" +
           boost::multiprecision::denominator(x).str();
}

/// Accepts "p/q", integers and plain decimals such as "0.05".
inline Rational parse_rational(std::string_view s) {
    auto fail = [&] { throw std::invalid_argument("not a rational: '" + std::string(s) + "'"); };
    if (s.empty()) fail();
    auto digits = [](std::string_view t) {
        if (t.empty()) return false;
        for (char c : t)
            if (c < '0' || c > '9') return false;
        return true;
    };
    bool neg = false;
    std::string_view body = s;
    if (body.front() == '-' || body.front() == '+') {
        neg = body.front() == '-';
        body.remove_prefix(1);
    }
    Rational out;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto p = body.substr(0, slash), q = body.substr(slash + 1);
        if (!digits(p) || !digits(q)) fail();
        BigInt den{std::string(q)};
        if (den == 0) fail();
        out = Rational(BigInt(std::string(p)), den);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto ip = body.substr(0, dot), fp = body.substr(dot + 1);
        if ((!ip.empty() && !digits(ip)) || !digits(fp)) fail();
        BigInt scale = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
        BigInt whole = ip.empty() ? BigInt(0) : BigInt(std::string(ip));
        out = Rational(whole * scale + BigInt(std::string(fp)), scale);
    } else {
        if (!digits(body)) fail();
        out = Rational(BigInt(std::string(body)));
    }
    return neg ? Rational(-out) : out;
}

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::int64_t r = 1;
    for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline Rational floor_div(const Rational& x) {
    BigInt q = boost::multiprecision::numerator(x) / boost::multiprecision::denominator(x);
    if (x < 0 && Rational(q) != x) q -= 1;
    return Rational(q);
}

inline std::int64_t floor_int(const Rational& x) {
    return static_cast<std::int64_t>(boost::multiprecision::numerator(floor_div(x)));
}

inline std::int64_t ceil_int(const Rational& x) {
    auto f = floor_int(x);
    return Rational(f) == x ? f : f + 1;
}

}  // namespace tcr

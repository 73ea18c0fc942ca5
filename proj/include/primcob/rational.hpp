#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace primcob {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rat(Int(num), Int(den));
}

inline double to_double(const Rat& x) { return x.template convert_to<double>(); }

/// Parses "p", "p/q" or a plain decimal like "-1.25". Returns nullopt on garbage.
inline std::optional<Rat> parse_rat(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!is_int(num) || !is_int(den)) return std::nullopt;
        Int d(den);
        if (d == 0) return std::nullopt;
        return Rat(Int(num), d);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
        if (head.empty() || head == "-" || head == "+") head += "0";
        if (!is_int(head)) return std::nullopt;
        for (char c : tail)
            if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        Int scale = 1;
        for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
        Int whole(head);
        Int frac = tail.empty() ? Int(0) : Int(tail);
        bool neg = s[0] == '-';
        Rat mag = Rat(boost::multiprecision::abs(whole) * scale + frac, scale);
        return neg ? -mag : mag;
    }
    if (!is_int(s)) return std::nullopt;
    return Rat(Int(s));
}

inline std::string rat_to_string(const Rat& x) {
    std::string n = numerator(x).str();
    if (denominator(x) == 1) return n;
    return n + "/" + denominator(x).str();
}

} // namespace primcob

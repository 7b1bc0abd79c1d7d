#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace k3tk {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Error taxonomy shared by all modules. The CLI maps these to exit codes.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Parses "p", "-p" or "p/q" (q > 0 after normalization).
inline Rat parse_rational(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw parse_error("zero denominator in '" + s + "'");
        return Rat(num, den);
    } catch (const std::runtime_error& e) {
        throw parse_error("bad rational literal '" + s + "': " + e.what());
    }
}

/// Emits integers bare and proper fractions as "p/q".
inline std::string format_rational(const Rat& r) {
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

inline Int floor_rat(const Rat& r) {
    Int q = rat_num(r) / rat_den(r);
    if (rat_num(r) < 0 && q * rat_den(r) != rat_num(r)) --q;
    return q;
}

inline Int ceil_rat(const Rat& r) { return -floor_rat(-r); }

/// Integer square root (floor), Newton iteration on cpp_int.
inline Int isqrt(const Int& n) {
    if (n < 0) throw domain_error("isqrt of negative");
    if (n == 0) return 0;
    Int x = n, y = (x + 1) / 2;
    while (y < x) {
        x = y;
        y = (x + n / x) / 2;
    }
    return x;
}

}  // namespace k3tk

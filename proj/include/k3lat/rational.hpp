#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <stdexcept>
#include <string>

namespace k3lat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::rational<Int>;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }
inline Int abs(const Int& a) { return boost::multiprecision::abs(a); }

// Floored remainder in [0, m).
inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += abs(m);
    return r;
}

// Representative of a mod m in the balanced range (-m/2, m/2].
inline Int mod_balanced(const Int& a, const Int& m) {
    Int r = mod_floor(a, m);
    if (2 * r > m) r -= m;
    return r;
}

inline bool is_integer(const Rat& q) { return q.denominator() == 1; }

inline Int floor_rat(const Rat& q) {
    Int n = q.numerator(), d = q.denominator();
    Int f = n / d;
    if (n % d != 0 && n < 0) f -= 1;
    return f;
}

inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

// q reduced mod m (m a positive integer), representative in [0, m).
inline Rat rat_mod(const Rat& q, const Int& m) {
    Rat r = q - Rat(m * floor_rat(q / Rat(m)));
    return r;
}

inline std::string rat_to_string(const Rat& q) {
    if (q.denominator() == 1) return q.numerator().str();
    return q.numerator().str() + "/" + q.denominator().str();
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rat(num, den);
}

}  // namespace k3lat

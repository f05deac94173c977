#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3lat/matrix.hpp"

namespace k3lat {

// Integer coefficients of the N-th cyclotomic polynomial, constant term first.
std::vector<Int> cyclotomic_polynomial(long n);
long euler_phi(long n);

// Exact element of Q(zeta_N) in the power basis 1, z, ..., z^{phi(N)-1}
// modulo the N-th cyclotomic polynomial.
class CyclotomicNumber {
public:
    explicit CyclotomicNumber(long conductor);                 // zero
    CyclotomicNumber(long conductor, const Rat& value);        // rational embedding
    static CyclotomicNumber zeta_pow(long conductor, long k);  // zeta^k

    long conductor() const { return n_; }
    const QVec& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    std::optional<Rat> rational_value() const;

    CyclotomicNumber operator-() const;
    CyclotomicNumber& operator+=(const CyclotomicNumber& o);
    CyclotomicNumber& operator-=(const CyclotomicNumber& o);
    CyclotomicNumber& operator*=(const CyclotomicNumber& o);
    CyclotomicNumber inverse() const;  // throws on zero

    friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
    friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
    friend CyclotomicNumber operator/(CyclotomicNumber a, const CyclotomicNumber& b) {
        return a *= b.inverse();
    }
    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
        return a.n_ == b.n_ && a.c_ == b.c_;
    }

    // Galois action zeta -> zeta^k, gcd(k, N) = 1.
    CyclotomicNumber galois(long k) const;
    // Sum over all Galois conjugates; always rational.
    Rat trace() const;

    // Embed into Q(zeta_{N*k}) via zeta_N = zeta_{Nk}^k.
    CyclotomicNumber lift(long factor) const;
    // Express in Q(zeta_m) for m | N, if the element lies in that subfield.
    std::optional<CyclotomicNumber> descend(long m) const;

    std::string str() const;  // polynomial in z with exact rationals

private:
    long n_;
    QVec c_;
    void reduce(std::vector<Rat>& poly);
};

}  // namespace k3lat

#include "k3lat/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace k3lat {

namespace {

// exact division of integer polynomials (constant term first)
std::vector<Int> poly_divide_exact(std::vector<Int> num, const std::vector<Int>& den) {
    std::vector<Int> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
    for (std::size_t i = q.size(); i-- > 0;) {
        Int lead = num[i + den.size() - 1];
        if (lead % den.back() != 0) throw std::logic_error("non-exact polynomial division");
        Int f = lead / den.back();
        q[i] = f;
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= f * den[j];
    }
    for (const auto& r : num)
        if (r != 0) throw std::logic_error("nonzero remainder in polynomial division");
    return q;
}

std::vector<Int> compute_cyclotomic(long n) {
    // x^n - 1 divided by the product of Phi_d for proper divisors d
    std::vector<Int> num(n + 1, Int(0));
    num[0] = -1;
    num[n] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        num = poly_divide_exact(std::move(num), cyclotomic_polynomial(d));
    }
    return num;
}

}  // namespace

std::vector<Int> cyclotomic_polynomial(long n) {
    if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: n must be positive");
    static std::map<long, std::vector<Int>> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lk(mtx);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    auto poly = compute_cyclotomic(n);
    std::lock_guard<std::mutex> lk(mtx);
    return cache.emplace(n, std::move(poly)).first->second;
}

long euler_phi(long n) {
    long result = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

CyclotomicNumber::CyclotomicNumber(long conductor) : n_(conductor) {
    if (conductor < 1) throw std::invalid_argument("conductor must be positive");
    c_.assign(euler_phi(conductor), Rat(0));
}

CyclotomicNumber::CyclotomicNumber(long conductor, const Rat& value) : CyclotomicNumber(conductor) {
    c_[0] = value;
}

void CyclotomicNumber::reduce(std::vector<Rat>& poly) {
    const auto phi = cyclotomic_polynomial(n_);
    std::size_t deg = phi.size() - 1;
    for (std::size_t i = poly.size(); i-- > deg;) {
        Rat f = poly[i];  // phi is monic
        if (f == Rat(0)) continue;
        for (std::size_t j = 0; j < phi.size(); ++j) poly[i - deg + j] -= f * Rat(phi[j]);
    }
    poly.resize(deg);
    c_ = poly;
}

CyclotomicNumber CyclotomicNumber::zeta_pow(long conductor, long k) {
    CyclotomicNumber z(conductor);
    k %= conductor;
    if (k < 0) k += conductor;
    std::vector<Rat> poly(std::max<std::size_t>(k + 1, z.c_.size()), Rat(0));
    poly[k] = Rat(1);
    z.reduce(poly);
    return z;
}

bool CyclotomicNumber::is_zero() const {
    for (const auto& x : c_)
        if (x != Rat(0)) return false;
    return true;
}

bool CyclotomicNumber::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != Rat(0)) return false;
    return true;
}

std::optional<Rat> CyclotomicNumber::rational_value() const {
    if (!is_rational()) return std::nullopt;
    return c_[0];
}

CyclotomicNumber CyclotomicNumber::operator-() const {
    CyclotomicNumber r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& o) {
    if (n_ != o.n_) throw std::invalid_argument("conductor mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& o) {
    if (n_ != o.n_) throw std::invalid_argument("conductor mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& o) {
    if (n_ != o.n_) throw std::invalid_argument("conductor mismatch");
    std::vector<Rat> prod(2 * c_.size(), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == Rat(0)) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) prod[i + j] += c_[i] * o.c_[j];
    }
    reduce(prod);
    return *this;
}

CyclotomicNumber CyclotomicNumber::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in Q(zeta)");
    // extended Euclid in Q[x] against Phi_N (irreducible, so gcd is a unit)
    const auto phi_int = cyclotomic_polynomial(n_);
    std::vector<Rat> a(phi_int.size());
    for (std::size_t i = 0; i < phi_int.size(); ++i) a[i] = Rat(phi_int[i]);
    std::vector<Rat> b = c_;
    while (!b.empty() && b.back() == Rat(0)) b.pop_back();

    auto deg = [](const std::vector<Rat>& p) { return (long)p.size() - 1; };
    std::vector<Rat> t0{}, t1{Rat(1)};  // Bezout coefficients of *this
    std::vector<Rat> r0 = a, r1 = b;
    auto trim = [](std::vector<Rat>& p) {
        while (!p.empty() && p.back() == Rat(0)) p.pop_back();
    };
    while (!r1.empty() && deg(r1) > 0) {
        // divide r0 by r1
        std::vector<Rat> q(deg(r0) - deg(r1) + 1, Rat(0));
        std::vector<Rat> rem = r0;
        for (long i = deg(rem); i >= deg(r1); --i) {
            Rat f = rem[i] / r1.back();
            q[i - deg(r1)] = f;
            for (std::size_t j = 0; j < r1.size(); ++j) rem[i - deg(r1) + j] -= f * r1[j];
        }
        trim(rem);
        // t2 = t0 - q * t1
        std::vector<Rat> t2 = t0;
        t2.resize(std::max(t2.size(), q.size() + t1.size()), Rat(0));
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < t1.size(); ++j) t2[i + j] -= q[i] * t1[j];
        trim(t2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r1.empty()) throw std::logic_error("unexpected gcd in Q(zeta) inversion");
    // r1 is a nonzero constant: inverse = t1 / r1[0]
    CyclotomicNumber inv(n_);
    std::vector<Rat> res = t1;
    for (auto& x : res) x /= r1[0];
    res.resize(std::max(res.size(), inv.c_.size()), Rat(0));
    inv.reduce(res);
    return inv;
}

CyclotomicNumber CyclotomicNumber::galois(long k) const {
    k %= n_;
    if (k < 0) k += n_;
    if (std::gcd(k, n_) != 1) throw std::invalid_argument("galois exponent not coprime to conductor");
    CyclotomicNumber out(n_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == Rat(0)) continue;
        CyclotomicNumber term = zeta_pow(n_, (long)(i * (std::size_t)k % (std::size_t)n_));
        for (auto& x : term.c_) x *= c_[i];
        out += term;
    }
    return out;
}

Rat CyclotomicNumber::trace() const {
    CyclotomicNumber sum(n_);
    for (long k = 1; k <= n_; ++k)
        if (std::gcd(k, n_) == 1) sum += galois(k);
    auto r = sum.rational_value();
    if (!r) throw std::logic_error("Galois sum failed to be rational");
    return *r;
}

CyclotomicNumber CyclotomicNumber::lift(long factor) const {
    if (factor < 1) throw std::invalid_argument("lift factor must be positive");
    long m = n_ * factor;
    CyclotomicNumber out(m);
    std::vector<Rat> poly(euler_phi(m), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == Rat(0)) continue;
        std::size_t e = i * (std::size_t)factor;
        if (e >= poly.size()) poly.resize(e + 1, Rat(0));
        poly[e] += c_[i];
    }
    out.reduce(poly);
    return out;
}

std::optional<CyclotomicNumber> CyclotomicNumber::descend(long m) const {
    if (m < 1 || n_ % m != 0) throw std::invalid_argument("descend: target must divide conductor");
    long factor = n_ / m;
    long k = euler_phi(m);
    long big = euler_phi(n_);
    // Solve sum_i x_i * (zeta_N^{factor})^i = this, x rational, by Gaussian
    // elimination on the phi(N) x phi(m) coordinate matrix.
    QMat cols(k, QVec(big, Rat(0)));
    for (long i = 0; i < k; ++i) {
        CyclotomicNumber basis = CyclotomicNumber::zeta_pow(m, i).lift(factor);
        cols[i] = basis.coeffs();
    }
    // augmented system
    QMat aug(big, QVec(k + 1, Rat(0)));
    for (long r = 0; r < big; ++r) {
        for (long i = 0; i < k; ++i) aug[r][i] = cols[i][r];
        aug[r][k] = c_[r];
    }
    long row = 0;
    std::vector<long> pivot_col;
    for (long col = 0; col < k && row < big; ++col) {
        long p = row;
        while (p < big && aug[p][col] == Rat(0)) ++p;
        if (p == big) continue;
        std::swap(aug[p], aug[row]);
        for (long r = 0; r < big; ++r) {
            if (r == row || aug[r][col] == Rat(0)) continue;
            Rat f = aug[r][col] / aug[row][col];
            for (long c = col; c <= k; ++c) aug[r][c] -= f * aug[row][c];
        }
        pivot_col.push_back(col);
        ++row;
    }
    QVec x(k, Rat(0));
    for (long r = 0; r < (long)pivot_col.size(); ++r)
        x[pivot_col[r]] = aug[r][k] / aug[r][pivot_col[r]];
    for (long r = row; r < big; ++r)
        if (aug[r][k] != Rat(0)) return std::nullopt;
    // verify (guards against inconsistent rows reordered above)
    CyclotomicNumber cand(m);
    cand.c_ = x;
    if (!(cand.lift(factor) == *this)) return std::nullopt;
    return cand;
}

std::string CyclotomicNumber::str() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == Rat(0)) continue;
        if (!out.empty()) out += " + ";
        out += rat_to_string(c_[i]);
        if (i == 1) out += "*z";
        else if (i > 1) out += "*z^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

}  // namespace k3lat

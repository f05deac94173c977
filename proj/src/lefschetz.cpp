#include "k3lat/lefschetz.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace k3lat {

CyclotomicNumber point_contribution(long i, long j, long n) {
    if (i % n == 0 || j % n == 0)
        throw std::invalid_argument("point_contribution: weight divisible by N (pole)");
    auto one = CyclotomicNumber(n, Rat(1));
    auto d = (one - CyclotomicNumber::zeta_pow(n, i)) * (one - CyclotomicNumber::zeta_pow(n, j));
    return d.inverse();
}

CyclotomicNumber curve_contribution(long g, long r, const Int& c2, long n) {
    if (r % n == 0) throw std::invalid_argument("curve_contribution: normal weight divisible by N");
    auto one = CyclotomicNumber(n, Rat(1));
    auto zr = CyclotomicNumber::zeta_pow(n, -r);
    auto den = one - zr;
    auto term1 = CyclotomicNumber(n, Rat(1 - g)) * den.inverse();
    auto term2 = zr * (den * den).inverse() * CyclotomicNumber(n, Rat(c2));
    return term1 - term2;
}

CyclotomicNumber k3_curve_contribution(long g, long s, long n) {
    if (s % n == 0)
        throw std::invalid_argument("k3_curve_contribution: symplectic case admits no fixed curves");
    auto one = CyclotomicNumber(n, Rat(1));
    auto zs = CyclotomicNumber::zeta_pow(n, s);
    auto den = one - zs;
    return CyclotomicNumber(n, Rat(1 - g)) * (one + zs) * (den * den).inverse();
}

CyclotomicNumber holomorphic_lhs(long s, long n) {
    return CyclotomicNumber(n, Rat(1)) + CyclotomicNumber::zeta_pow(n, -s);
}

long FixedPointConfig::total_points() const {
    long t = 0;
    for (const auto& p : points) t += p.multiplicity;
    return t;
}

void FixedPointConfig::normalize() {
    for (auto& p : points)
        if (p.i > p.j) std::swap(p.i, p.j);
    std::sort(points.begin(), points.end(), [](const PointClass& a, const PointClass& b) {
        return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    });
}

std::vector<std::pair<long, long>> admissible_weight_pairs(long n, long s) {
    std::vector<std::pair<long, long>> pairs;
    long s0 = ((s % n) + n) % n;
    for (long i = 1; i <= n - 1; ++i) {
        long j = ((s0 - i) % n + n) % n;
        if (j == 0 || j < i) continue;
        pairs.emplace_back(i, j);
    }
    return pairs;
}

VerifyResult verify_config(const FixedPointConfig& cfg) {
    long n = cfg.n;
    long s0 = ((cfg.s % n) + n) % n;
    CyclotomicNumber sum(n);
    for (const auto& p : cfg.points) {
        if (p.multiplicity < 0) throw std::invalid_argument("negative point multiplicity");
        if (p.i % n == 0 || p.j % n == 0) throw std::invalid_argument("zero weight at fixed point");
        if (((p.i + p.j) % n + n) % n != s0)
            throw std::invalid_argument("point weights do not sum to the 2-form exponent");
        auto c = point_contribution(p.i, p.j, n);
        sum += c * CyclotomicNumber(n, Rat(p.multiplicity));
    }
    if (!cfg.curves.empty() && s0 == 0)
        throw std::invalid_argument("symplectic actions admit no fixed curves");
    for (const auto& c : cfg.curves) sum += k3_curve_contribution(c.g, s0, n);
    auto residual = holomorphic_lhs(s0, n) - sum;
    return {residual.is_zero(), residual};
}

namespace {

struct SolverData {
    long n, s;
    std::vector<std::pair<long, long>> pairs;
    std::vector<CyclotomicNumber> contribs;
    std::vector<Rat> traces;
    bool traces_positive;
    Rat lhs_trace;
};

SolverData prepare(long n, long s) {
    SolverData d;
    d.n = n;
    d.s = ((s % n) + n) % n;
    d.pairs = admissible_weight_pairs(n, d.s);
    d.traces_positive = true;
    for (auto [i, j] : d.pairs) {
        auto c = point_contribution(i, j, n);
        d.traces.push_back(c.trace());
        if (d.traces.back() <= Rat(0)) d.traces_positive = false;
        d.contribs.push_back(std::move(c));
    }
    d.lhs_trace = holomorphic_lhs(d.s, n).trace();
    return d;
}

// Enumerate multiplicities for pairs[idx..] with the residual target and
// remaining point budget; exact, no floating point anywhere.
void solve_rec(const SolverData& d, std::size_t idx, const CyclotomicNumber& residual,
               const Rat& residual_trace, long budget, std::vector<long>& mult,
               std::vector<FixedPointConfig>& out) {
    if (idx == d.pairs.size()) {
        if (residual.is_zero()) {
            FixedPointConfig cfg;
            cfg.n = d.n;
            cfg.s = d.s;
            for (std::size_t k = 0; k < d.pairs.size(); ++k)
                if (mult[k] > 0) cfg.points.push_back({d.pairs[k].first, d.pairs[k].second, mult[k]});
            out.push_back(std::move(cfg));
        }
        return;
    }
    if (d.traces_positive && residual_trace < Rat(0)) return;
    long cap = budget;
    if (d.traces_positive) {
        // a * trace <= residual_trace bounds the multiplicity exactly
        Rat limit = residual_trace / d.traces[idx];
        Int fl = floor_rat(limit);
        if (fl < cap) cap = (long)fl;
        if (cap < 0) return;
    }
    CyclotomicNumber r = residual;
    Rat rt = residual_trace;
    for (long a = 0; a <= cap; ++a) {
        mult[idx] = a;
        solve_rec(d, idx + 1, r, rt, budget - a, mult, out);
        r -= d.contribs[idx];
        rt -= d.traces[idx];
    }
    mult[idx] = 0;
}

void sort_configs(std::vector<FixedPointConfig>& out) {
    std::sort(out.begin(), out.end(), [](const FixedPointConfig& a, const FixedPointConfig& b) {
        if (a.total_points() != b.total_points()) return a.total_points() < b.total_points();
        auto key = [](const FixedPointConfig& c) {
            std::vector<std::tuple<long, long, long>> k;
            for (const auto& p : c.points) k.emplace_back(p.i, p.j, p.multiplicity);
            return k;
        };
        return key(a) < key(b);
    });
}

}  // namespace

std::vector<FixedPointConfig> search_point_configs_serial(long n, long s, long max_points) {
    if (max_points < 0) throw std::invalid_argument("max_points must be nonnegative");
    SolverData d = prepare(n, s);
    std::vector<FixedPointConfig> out;
    std::vector<long> mult(d.pairs.size(), 0);
    if (d.pairs.empty()) {
        if (holomorphic_lhs(d.s, n).is_zero()) out.push_back({n, d.s, {}, {}});
        return out;
    }
    solve_rec(d, 0, holomorphic_lhs(d.s, n), d.lhs_trace, max_points, mult, out);
    sort_configs(out);
    return out;
}

std::vector<FixedPointConfig> search_point_configs(long n, long s, long max_points) {
    if (max_points < 0) throw std::invalid_argument("max_points must be nonnegative");
    SolverData d = prepare(n, s);
    if (d.pairs.empty()) return search_point_configs_serial(n, s, max_points);

    // split on the multiplicity of the first admissible pair
    long cap = max_points;
    if (d.traces_positive) {
        Int fl = floor_rat(d.lhs_trace / d.traces[0]);
        if (fl < cap) cap = (long)fl;
        if (cap < 0) cap = -1;
    }
    std::vector<std::vector<FixedPointConfig>> partial(std::max<long>(cap + 1, 0));
#pragma omp parallel for schedule(dynamic)
    for (long a = 0; a <= cap; ++a) {
        CyclotomicNumber r = holomorphic_lhs(d.s, d.n);
        Rat rt = d.lhs_trace;
        for (long t = 0; t < a; ++t) {
            r -= d.contribs[0];
            rt -= d.traces[0];
        }
        std::vector<long> mult(d.pairs.size(), 0);
        mult[0] = a;
        solve_rec(d, 1, r, rt, max_points - a, mult, partial[a]);
    }
    std::vector<FixedPointConfig> out;
    for (auto& chunk : partial)
        for (auto& cfg : chunk) out.push_back(std::move(cfg));
    sort_configs(out);
    return out;
}

Int topological_chi(const Int& trace) { return trace; }

ChiCountResult chi_equals_count(const Int& trace, long n, long m) {
    (void)m;
    if (n < 2)
        return {true, trace, "n < 2: fixed locus may contain curves, trace is only an Euler number"};
    if (trace < 0)
        return {false, trace, "negative trace cannot be a fixed point count (n >= 2)"};
    return {true, trace, "finite fixed locus: trace equals the number of fixed points"};
}

GuaranteeResult fixed_points_guaranteed(long n, long m) {
    if (n < 1 || m < 1) throw std::invalid_argument("factorization parts must be positive");
    // 1 + zeta_m^{-1}; the right-hand sums are indexed by fixed points and
    // curves, so a nonzero value forces a nonempty fixed locus.
    auto lhs = holomorphic_lhs(1, m);
    return {!lhs.is_zero(), lhs};
}

const std::map<long, std::map<long, long>>& niktable() {
    static const std::map<long, std::map<long, long>> table = {
        {2, {{2, 8}}},
        {3, {{3, 6}}},
        {4, {{4, 4}, {2, 4}}},
        {5, {{5, 4}}},
        {6, {{6, 2}, {3, 4}, {2, 6}}},
        {7, {{7, 3}}},
        {8, {{8, 2}, {4, 2}, {2, 4}}},
    };
    return table;
}

long niktable_fixed_points(long n) {
    auto it = niktable().find(n);
    if (it == niktable().end())
        throw std::invalid_argument("no symplectic automorphism of order " + std::to_string(n));
    return it->second.at(n);
}

bool niktable_power_consistent(long n) {
    auto it = niktable().find(n);
    if (it == niktable().end()) return false;
    const auto& counts = it->second;
    for (long q = 2; q < n; ++q) {
        if (n % q != 0) continue;
        // sigma^{n/q} has order q; it fixes the points whose stabilizer order
        // is divisible by q
        long total = 0;
        for (const auto& [stab, cnt] : counts)
            if (stab % q == 0) total += cnt;
        if (total != niktable_fixed_points(q)) return false;
    }
    return true;
}

TraceGateResult mixed_trace_gate(long n_order, long m, const std::map<long, Int>& traces) {
    long big_n = n_order * m;
    for (const auto& [r, chi] : traces) {
        if (r < 1 || big_n % r != 0) return {false, "trace key " + std::to_string(r) + " does not divide N"};
        long ord = big_n / std::gcd(big_n, r);
        if (ord == 1) {
            if (chi != 24) return {false, "identity power must have trace 24"};
            continue;
        }
        if (r % m == 0) {
            // symplectic power: count pinned by the Nikulin table
            if (ord > 8) return {false, "symplectic power of order > 8"};
            if (chi != niktable_fixed_points(ord))
                return {false, "chi(sigma^" + std::to_string(r) + ") = " + chi.str() +
                                   " does not match the symplectic count for order " +
                                   std::to_string(ord)};
        } else if (n_order >= 2) {
            if (chi < 0)
                return {false, "negative trace for a power with finite fixed locus"};
        }
    }
    if (n_order >= 2) {
        // containment: X^{sigma^r} inside X^{sigma^{r'}} whenever r | r'
        for (const auto& [r, chi] : traces)
            for (const auto& [r2, chi2] : traces)
                if (r != r2 && r2 % r == 0 && big_n / std::gcd(big_n, r2) > 1 && chi > chi2)
                    return {false, "fixed points of sigma^" + std::to_string(r) +
                                       " exceed those of its power sigma^" + std::to_string(r2)};
    }
    return {true, "traces consistent with the symplectic fixed point counts"};
}

}  // namespace k3lat

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "k3lat/cyclotomic.hpp"

namespace k3lat {

// Local contribution 1/((1-zeta^i)(1-zeta^j)) of an isolated fixed point.
CyclotomicNumber point_contribution(long i, long j, long n);

// General curve contribution (1-g)/(1-z^-r) - z^-r/(1-z^-r)^2 * c2.
CyclotomicNumber curve_contribution(long g, long r, const Int& c2, long n);

// K3 specialization (1-g)(1+z^s)/(1-z^s)^2.
CyclotomicNumber k3_curve_contribution(long g, long s, long n);

// Left-hand side 1 + zeta^{-s}.
CyclotomicNumber holomorphic_lhs(long s, long n);

struct FixedCurve {
    long g;   // genus
    long r;   // weight in the normal bundle
    Int c2;   // self-intersection
};

struct PointClass {
    long i, j;           // unordered weights, stored with i <= j
    long multiplicity;
};

struct FixedPointConfig {
    long n = 1;  // order N
    long s = 0;  // exponent of the eigenvalue on the 2-form
    std::vector<PointClass> points;
    std::vector<FixedCurve> curves;

    long total_points() const;
    void normalize();  // sort weights within pairs and classes canonically
};

struct VerifyResult {
    bool balanced;
    CyclotomicNumber residual;  // lhs - sum of contributions
};

// Exact test of 1 + zeta^{-s} against the summed contributions.
VerifyResult verify_config(const FixedPointConfig& cfg);

// Complete enumeration of point-only configurations with total count
// <= max_points satisfying the holomorphic fixed point formula.
std::vector<FixedPointConfig> search_point_configs(long n, long s, long max_points = 24);
std::vector<FixedPointConfig> search_point_configs_serial(long n, long s, long max_points = 24);

// Admissible unordered weight pairs (i, j), i + j = s mod N, i, j != 0.
std::vector<std::pair<long, long>> admissible_weight_pairs(long n, long s);

Int topological_chi(const Int& trace);

struct ChiCountResult {
    bool consistent;
    Int count;         // meaningful when consistent
    std::string note;
};
// With n >= 2 the fixed locus is a finite point set, so the trace must be a
// nonnegative count.
ChiCountResult chi_equals_count(const Int& trace, long n, long m);

struct GuaranteeResult {
    bool guaranteed;
    CyclotomicNumber lhs;  // 1 + zeta_m^{-1}, whose nonvanishing is the proof
};
GuaranteeResult fixed_points_guaranteed(long n, long m);

// Fixed-point structure of symplectic automorphisms of order n <= 8:
// counts of points by exact stabilizer order (n itself = genuinely fixed).
const std::map<long, std::map<long, long>>& niktable();
long niktable_fixed_points(long n);  // throws for n outside 2..8

// For every proper power sigma^r, the points it fixes (stabilizer order
// divisible by ord(sigma^r)) must total the table count for that order.
bool niktable_power_consistent(long n);

// Gate for a mixed-order action: traces of symplectic powers must hit the
// table counts, and chi(sigma) must be a plausible subset count.
struct TraceGateResult {
    bool accepted;
    std::string reason;
};
TraceGateResult mixed_trace_gate(long n_order, long m, const std::map<long, Int>& traces);

}  // namespace k3lat

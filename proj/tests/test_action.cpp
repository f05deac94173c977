#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "k3lat/action.hpp"

using namespace k3lat;

namespace {

IMat identity(std::size_t n) {
    IMat m(n, IVec(n, Int(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// diag(+-1) acting on the Mukai lattice; flips coordinates in [lo, hi)
K3Action sign_involution(std::size_t lo, std::size_t hi) {
    K3Action a;
    a.order = 2;
    a.two_form_exponent = 0;
    a.mukai_matrix = identity(24);
    for (std::size_t i = lo; i < hi; ++i) a.mukai_matrix[i][i] = -1;
    return a;
}

}  // namespace

TEST_CASE("validate_action") {
    K3Action id;
    id.order = 1;
    id.two_form_exponent = 0;
    id.mukai_matrix = identity(24);
    REQUIRE(validate_action(id).valid);

    // sign flips on whole summands preserve the pairing
    auto inv = sign_involution(8, 24);
    REQUIRE(validate_action(inv).valid);

    // wrong declared order
    auto bad_order = inv;
    bad_order.order = 4;
    REQUIRE(!validate_action(bad_order).valid);

    // matrix that does not preserve the pairing
    auto bad_pairing = inv;
    bad_pairing.mukai_matrix[0][1] = 1;
    REQUIRE(!validate_action(bad_pairing).valid);

    // out-of-range 2-form exponent
    auto bad_s = inv;
    bad_s.two_form_exponent = 5;
    REQUIRE(!validate_action(bad_s).valid);
}

TEST_CASE("factorization of the action order") {
    REQUIRE(factorization_parts(6, 0).m == 1);
    REQUIRE(factorization_parts(6, 0).n == 6);
    REQUIRE(factorization_parts(6, 0).symplectic());

    REQUIRE(factorization_parts(6, 1).m == 6);
    REQUIRE(factorization_parts(6, 1).n == 1);
    REQUIRE(factorization_parts(6, 1).purely_nonsymplectic());

    REQUIRE(factorization_parts(6, 3).m == 2);
    REQUIRE(factorization_parts(6, 3).n == 3);

    REQUIRE(factorization_parts(8, 2).m == 4);
    REQUIRE(factorization_parts(8, 2).n == 2);
}

TEST_CASE("factorization of powers: m' = m / gcd(m, r)") {
    for (long n = 1; n <= 24; ++n)
        for (long s = 0; s < n; ++s) {
            long m = factorization_parts(n, s).m;
            REQUIRE(m == (s == 0 ? 1 : n / std::gcd(n, s)));
            for (long r = 1; r < n; ++r) {
                // sigma^r has order n/gcd(n,r) and 2-form eigenvalue zeta_n^{sr}
                long g = std::gcd(n, r);
                long order_pow = n / g;
                long s_pow = (s * (r / g)) % order_pow;  // sr/g, integral since g | r
                long m_pow = factorization_parts(order_pow, s_pow).m;
                REQUIRE(m_pow == m / std::gcd(m, r));
            }
        }
}

TEST_CASE("trace sequences") {
    auto inv = sign_involution(8, 24);  // -1 on both E8(-1) summands
    auto tr = trace_sequence(inv);
    REQUIRE(tr.at(1) == Int(-8));
    REQUIRE(tr.at(2) == Int(24));

    auto inv2 = sign_involution(2, 4);  // -1 on one hyperbolic summand
    REQUIRE(trace_sequence(inv2).at(1) == Int(20));
}

TEST_CASE("derived partner check distinguishes actions by trace") {
    auto a = sign_involution(8, 24);   // chi(sigma) = -8
    auto b = sign_involution(2, 4);    // chi(sigma) = 20
    auto rep = derived_partner_check(a, b, 200'000);
    REQUIRE(!rep.compatible);
    bool trace_flagged = false;
    for (const auto& inv : rep.invariants)
        if (!inv.match) trace_flagged = true;
    REQUIRE(trace_flagged);

    // an action is compatible with a conjugate of itself
    auto c = sign_involution(2, 4);
    auto d = sign_involution(4, 6);  // -1 on the next hyperbolic summand
    auto rep2 = derived_partner_check(c, d, 200'000);
    for (const auto& inv : rep2.invariants) REQUIRE(inv.match);
    REQUIRE(rep2.compatible);

    // identical actions: the integral search finds the identity witness
    auto rep3 = derived_partner_check(c, c, 200'000);
    REQUIRE(rep3.compatible);
    REQUIRE(rep3.integral_search.find("identity") != std::string::npos);
}

TEST_CASE("order admissibility gate") {
    REQUIRE(order_admissibility(2, 1).admissible);
    REQUIRE(order_admissibility(8, 1).admissible);
    REQUIRE(!order_admissibility(9, 1).admissible);

    REQUIRE(order_admissibility(1, 12).admissible);
    REQUIRE(order_admissibility(1, 66).admissible);
    REQUIRE(!order_admissibility(1, 23).admissible);
    REQUIRE(!order_admissibility(1, 29).admissible);
    REQUIRE(!order_admissibility(1, 31).admissible);

    REQUIRE(!order_admissibility(8, 2).admissible);
    REQUIRE(order_admissibility(7, 2).admissible);
    REQUIRE(order_admissibility(4, 2).admissible);
}

TEST_CASE("enriques fixed lattice recognition") {
    auto u = standard_lattice("U");
    auto e8m = standard_lattice("E8minus");
    auto target = direct_sum(twist(u, Int(2)), twist(e8m, Int(2)));
    REQUIRE(enriques_signature(target).match);
    REQUIRE(enriques_signature(target, true).match);

    REQUIRE(!enriques_signature(direct_sum(u, twist(e8m, Int(2)))).match);
    REQUIRE(!enriques_signature(direct_sum(twist(u, Int(2)), e8m)).match);
    REQUIRE(!enriques_signature(standard_lattice("K3")).match);
}

TEST_CASE("discriminant action classification") {
    IntegerLattice pic({{2, 5}, {5, 2}});
    REQUIRE(discriminant_action(pic, identity(2)).classification == DiscActionClass::PlusOne);
    REQUIRE(discriminant_action(pic, {{-1, 0}, {0, -1}}).classification ==
            DiscActionClass::MinusOne);
    // the two covering involutions act by +-1 as well
    REQUIRE(discriminant_action(pic, {{1, 5}, {0, -1}}).classification !=
            DiscActionClass::Other);
    REQUIRE(discriminant_action(pic, {{-1, 0}, {5, 1}}).classification !=
            DiscActionClass::Other);
}

TEST_CASE("double cover involution obstruction") {
    auto rep = example_compatible_report();
    REQUIRE(rep.invariant_factors == IVec{21});
    REQUIRE(rep.eigenvector_square_1 == Int(-42));
    REQUIRE(rep.eigenvector_square_2 == Int(-42));
    REQUIRE(!rep.classes_equal_up_to_sign);
    REQUIRE(rep.iota1_disc_class != DiscActionClass::Other);
    REQUIRE(rep.iota2_disc_class != DiscActionClass::Other);
    REQUIRE(!rep.compatible);

    // the two glue classes generate the same subgroup but are distinct mod 21
    IVec c1 = rep.glue_class_1, c2 = rep.glue_class_2;
    REQUIRE(c1.size() == 2);
    REQUIRE(c2.size() == 2);
}

TEST_CASE("genus mates with involution") {
    auto rep = mazur_action_pair();
    REQUIRE(!rep.a_b_isometric);
    REQUIRE(rep.same_genus);
    REQUIRE(!rep.represents_minus_two_a);
    REQUIRE(!rep.represents_minus_two_b);
    REQUIRE(rep.f_square == Int(2));
    REQUIRE(rep.g_square == Int(2));
    REQUIRE(rep.pic_x.rank() == 3);
    REQUIRE(rep.pic_y.rank() == 3);
    REQUIRE(rep.pic_x.signature() == std::pair<int, int>(1, 2));
    // the involution is an isometry of both Picard lattices
    auto conj = [](const IMat& g, const IMat& w) {
        return imat_mul(imat_mul(imat_transpose(w), g), w);
    };
    REQUIRE(conj(rep.pic_x.gram(), rep.involution) == rep.pic_x.gram());
    REQUIRE(conj(rep.pic_y.gram(), rep.involution) == rep.pic_y.gram());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wittlab/witt.hpp"

using namespace wittlab;

namespace {

RingPtr sym_ring(const std::vector<std::string>& names) {
    return make_ring(RingDescriptor::polynomial(RingDescriptor::integers(), names));
}

Elem var(const RingPtr& r, size_t i) {
    return std::static_pointer_cast<const PolynomialRing>(r)->variable(i);
}

}  // namespace

TEST_CASE("structure polynomials: first-coordinate oracles for p = 2") {
    RingPtr r = sym_ring({"x0", "x1", "y0", "y1"});
    Elem x0 = var(r, 0), x1 = var(r, 1), y0 = var(r, 2), y1 = var(r, 3);
    WittVector x{2, {x0, x1}}, y{2, {y0, y1}};

    WittVector s = witt_add(x, y);
    CHECK(s.c[0] == x0 + y0);
    CHECK(s.c[1] == x1 + y1 - x0 * y0);

    WittVector pr = witt_mul(x, y);
    CHECK(pr.c[0] == x0 * y0);
    CHECK(pr.c[1] == x0 * x0 * y1 + x1 * y0 * y0 + r->from_integer(2) * x1 * y1);
}

TEST_CASE("ghost map is a ring homomorphism (symbolic, p = 3, depth 3)") {
    RingPtr r = sym_ring({"x0", "x1", "x2", "y0", "y1", "y2"});
    WittVector x{3, {var(r, 0), var(r, 1), var(r, 2)}};
    WittVector y{3, {var(r, 3), var(r, 4), var(r, 5)}};
    GhostVector gx = ghost(x), gy = ghost(y), gs = ghost(witt_add(x, y)), gp = ghost(witt_mul(x, y));
    for (size_t k = 0; k < 3; ++k) {
        CHECK(gs[k] == gx[k] + gy[k]);
        CHECK(gp[k] == gx[k] * gy[k]);
    }
    GhostVector gn = ghost(witt_neg(x));
    for (size_t k = 0; k < 3; ++k) CHECK(gn[k] == -gx[k]);
}

TEST_CASE("concrete addition over Z/4: (1,0) + (1,0) = (2,3)") {
    RingPtr Z4 = make_ring(RingDescriptor::modular(4));
    WittVector one{2, {Z4->one(), Z4->zero()}};
    WittVector s = witt_add(one, one);
    CHECK(s.c[0] == Z4->from_integer(2));
    CHECK(s.c[1] == Z4->from_integer(3));
    // the unit vector has order 8 in W_2(Z/4): 4*(1,0) = (0,2), 8*(1,0) = 0
    WittVector four = witt_scalar(4, one);
    CHECK(four.c[0].is_zero());
    CHECK(four.c[1] == Z4->from_integer(2));
    CHECK(witt_is_zero(witt_scalar(8, one)));
}

TEST_CASE("Frobenius shifts ghosts; in char p it is the coordinatewise p-power") {
    RingPtr r = sym_ring({"x0", "x1", "x2"});
    WittVector x{2, {var(r, 0), var(r, 1), var(r, 2)}};
    WittVector f = frobenius(x);
    GhostVector gx = ghost(x), gf = ghost(f);
    for (size_t k = 0; k + 1 < 3; ++k) CHECK(gf[k] == gx[k + 1]);

    RingPtr F2 = make_ring(RingDescriptor::modular(2));
    WittVector v{2, {F2->one(), F2->one(), F2->zero()}};
    WittVector lhs = truncate(frobenius(v), 2);
    WittVector rhs = frobenius_charp(truncate(v, 2));
    CHECK(lhs == rhs);
    for (size_t k = 0; k < 2; ++k) CHECK(rhs.c[k] == v.c[k].pow(2));
}

TEST_CASE("FV = p and VF = p in char p") {
    RingPtr Z9 = make_ring(RingDescriptor::modular(9));
    WittVector x{3, {Z9->from_integer(2), Z9->from_integer(5), Z9->from_integer(7), Z9->from_integer(1)}};
    CHECK(frobenius(verschiebung(x)) == witt_scalar(3, truncate(x, 3)));

    RingPtr F3 = make_ring(RingDescriptor::modular(3));
    WittVector y{3, {F3->from_integer(2), F3->one(), F3->from_integer(2)}};
    CHECK(verschiebung(frobenius_charp(y)) == witt_scalar(3, y));
}

TEST_CASE("T_a special values: identity, Verschiebung, Teichmuller scaling") {
    RingPtr r = sym_ring({"a0", "x0", "x1", "x2"});
    Elem a0 = var(r, 0);
    WittVector x{2, {var(r, 1), var(r, 2), var(r, 3)}};
    Elem z = r->zero(), o = r->one();

    CHECK(t_a({2, {o, z, z}}, x) == x);
    CHECK(t_a({2, {z, o, z}}, x) == verschiebung(x));
    CHECK(t_a({2, {a0, z, z}}, x) == teich_scale(a0, x));
}

TEST_CASE("f_lambda ghost action") {
    RingPtr r = sym_ring({"lam", "x0", "x1", "x2"});
    Elem lam = var(r, 0);
    WittVector x{2, {var(r, 1), var(r, 2), var(r, 3)}};
    GhostVector gx = ghost(x), gf = ghost(f_lambda(x, lam));
    // Phi_k(F^{(lam)} x) = Phi_{k+1}(x) - lam^{(p-1)p^k} Phi_k(x), p = 2
    for (size_t k = 0; k + 1 < 3; ++k) CHECK(gf[k] == gx[k + 1] - lam.pow(1u << k) * gx[k]);
}

TEST_CASE("p^l [lam] closed form: alpha and b oracles, congruences mod p") {
    PPowerTeichmuller t21 = p_power_teichmuller(2, 1, 4);
    CHECK(t21.alpha[1] == mpq_class(-1));
    CHECK(t21.alpha[2] == mpq_class(-8));
    CHECK(t21.congruence_ok);
    auto pr = std::static_pointer_cast<const PolynomialRing>(t21.b.ring());
    Elem lam = pr->variable(0);
    CHECK(t21.b.c[0] == pr->from_integer(2) * lam);
    CHECK(t21.b.c[1] == -(lam * lam));  // b_1 = -lam^2 at l = 1

    PPowerTeichmuller t22 = p_power_teichmuller(2, 2, 4);
    CHECK(t22.congruence_ok);
    auto pr2 = std::static_pointer_cast<const PolynomialRing>(t22.b.ring());
    Elem lam2 = pr2->variable(0);
    CHECK(t22.b.c[0] == pr2->from_integer(4) * lam2);
    CHECK(t22.b.c[1] == pr2->from_integer(-6) * lam2 * lam2);

    PPowerTeichmuller t31 = p_power_teichmuller(3, 1, 3);
    CHECK(t31.congruence_ok);
}

TEST_CASE("depth limits are enforced") {
    CHECK(witt_depth_limit(2) == 5);
    CHECK(witt_depth_limit(3) == 4);
    CHECK(witt_depth_limit(5) == 3);
    CHECK_THROWS_AS((void)StructurePolynomials::instance().table(2, WittOp::Sum, 7), invalid_descriptor);
    CHECK_THROWS_AS((void)StructurePolynomials::instance().table(3, WittOp::Product, 5), invalid_descriptor);
}

TEST_CASE("witt_scalar handles negative multipliers") {
    RingPtr Z9 = make_ring(RingDescriptor::modular(9));
    WittVector x{3, {Z9->from_integer(4), Z9->from_integer(2), Z9->from_integer(8)}};
    CHECK(witt_is_zero(witt_add(witt_scalar(-2, x), witt_scalar(2, x))));
    CHECK(witt_scalar(1, x) == x);
    CHECK(witt_is_zero(witt_scalar(0, x)));
}

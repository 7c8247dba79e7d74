#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stabscan/lattice.hpp"

#include <cmath>
#include <random>

using namespace stabscan;

namespace {

std::vector<MassiveEntry> a2_triple() {
    return {{KClass(1, 0), {0, 1}}, {KClass(0, 1), {-1, 0}}, {KClass(1, 1), {-1, 1}}};
}

}  // namespace

TEST_CASE("norm of k-classes") {
    CHECK(norm_kclass(KClass(1, 0)) == doctest::Approx(1.0));
    CHECK(norm_kclass(KClass(1, 1)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(norm_kclass(KClass(0, 0)) == 0.0);
    // Cartan gram [[2,-1],[-1,2]]: |(1,1)|^2 = 2
    CHECK(norm_kclass(KClass(1, 1), cartan_ip()) == doctest::Approx(std::sqrt(2.0)));
    CHECK(norm_kclass(KClass(1, 0), cartan_ip()) == doctest::Approx(std::sqrt(2.0)));
    CHECK(positive_definite(cartan_ip()));
    InnerProductQ bad;
    bad.gram << Rational(1), Rational(2), Rational(2), Rational(1);
    CHECK_FALSE(positive_definite(bad));
}

TEST_CASE("charge evaluation") {
    ChargeD z = charge_from({0, 1}, {-1, 0});
    CHECK(charge_eval(z, KClass(1, 1)) == cplx(-1, 1));
    CHECK(charge_eval(z, KClass(0, 0)) == cplx(0, 0));
    ChargeD p1 = charge_from({0, 0}, {-1, 0});
    CHECK(charge_eval(p1, KClass(1, 0)) == cplx(0, 0));

    ChargeQ q = charge_exact(Rational(1, 2), Rational(1, 3), Rational(-1), Rational(2, 5));
    Vec2<Rational> v = charge_eval(q, KClass(2, 3));
    CHECK(v(0) == Rational(-2));
    CHECK(v(1) == Rational(2, 3) + Rational(6, 5));
}

TEST_CASE("charge evaluation is additive on random classes") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> k(-50, 50);
    std::uniform_int_distribution<int> n(-9, 9);
    for (int trial = 0; trial < 500; ++trial) {
        ChargeQ z = charge_exact(Rational(n(rng), 7), Rational(n(rng), 3), Rational(n(rng), 5), Rational(n(rng), 2));
        KClass a(k(rng), k(rng)), b(k(rng), k(rng));
        CHECK(charge_eval(z, KClass(a + b)) == Vec2<Rational>(charge_eval(z, a) + charge_eval(z, b)));
        CHECK(charge_eval(z, KClass(3 * a)) == Vec2<Rational>(charge_eval(z, a) * Rational(3)));
    }
}

TEST_CASE("operator norm against a grid search") {
    auto brute = [](const ChargeD& u) {
        double best = 0;
        for (int i = 0; i < 200000; ++i) {
            double th = 2 * PI * i / 200000;
            Vec2<double> l(std::cos(th), std::sin(th));
            Vec2<double> v = u.m * l;
            best = std::max(best, v.norm());
        }
        return best;
    };
    CHECK(operator_norm(charge_from({1, 0}, {0, 0})) == doctest::Approx(1.0));
    // U = (1, i): |cos t + i sin t| = 1 everywhere on the unit circle
    CHECK(operator_norm(charge_from({1, 0}, {0, 1})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(operator_norm(charge_from({1, 0}, {0, 1})) == doctest::Approx(brute(charge_from({1, 0}, {0, 1}))));
    CHECK(operator_norm(charge_from({0, 0}, {0, 0})) == 0.0);
    ChargeD u = charge_from({0.3, -1.2}, {2.0, 0.7});
    CHECK(operator_norm(u) == doctest::Approx(brute(u)).epsilon(1e-8));
}

TEST_CASE("semi-norm") {
    auto st = a2_triple();
    ChargeD z = charge_from({0, 1}, {-1, 0});
    CHECK(seminorm_sigma(z, st).value == doctest::Approx(1.0));
    CHECK(seminorm_sigma(z, {}).value == 0.0);

    // vanishing on every massive stable: zero although nonzero as a charge
    std::vector<MassiveEntry> only_s{{KClass(1, 0), {0, 1}}};
    CHECK(seminorm_sigma(charge_from({0, 0}, {5, 5}), only_s).value == 0.0);

    // triangle inequality and homogeneity
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 200; ++i) {
        ChargeD a = charge_from({u(rng), u(rng)}, {u(rng), u(rng)});
        ChargeD b = charge_from({u(rng), u(rng)}, {u(rng), u(rng)});
        double na = seminorm_sigma(a, st).value, nb = seminorm_sigma(b, st).value;
        CHECK(seminorm_sigma(a + b, st).value <= na + nb + 1e-12);
        CHECK(seminorm_sigma(a * -2.5, st).value == doctest::Approx(2.5 * na));
    }

    // U(O_x) = 1, U(O) = 0 on the massive stables O(n) of class (1,n) with Z = -n + i
    std::vector<MassiveEntry> fam;
    for (int n = 0; n <= 64; ++n) fam.push_back({KClass(1, n), cplx(-1e-3 * n, 1.0)});
    SemiNorm sn = seminorm_sigma(charge_from({0, 0}, {1, 0}), fam, true);
    CHECK(sn.infinite);
    // bounded ratio: settles, not infinite
    std::vector<MassiveEntry> fam2;
    for (int n = 0; n <= 64; ++n) fam2.push_back({KClass(1, n), cplx(-double(n), 1.0)});
    CHECK_FALSE(seminorm_sigma(charge_from({1, 0}, {0, 0}), fam2, true).infinite);
}

TEST_CASE("support infimum") {
    CHECK(support_infimum(a2_triple()).value == doctest::Approx(1.0));
    std::vector<MassiveEntry> massless{{KClass(1, 0), {0, 0}}};
    CHECK(std::isinf(support_infimum(massless).value));

    // (1,n) -> i: ratio 1/sqrt(1+n^2) keeps dropping
    std::vector<MassiveEntry> fam;
    std::vector<double> ratios;
    for (int n = 0; n <= 64; ++n) {
        fam.push_back({KClass(1, n), cplx(0, 1)});
        ratios.push_back(1.0 / std::sqrt(1.0 + n * n));
    }
    for (std::size_t i = 1; i < ratios.size(); ++i) CHECK(ratios[i] < ratios[i - 1]);
    SupportInf s = support_infimum(fam, identity_ip(), true);
    CHECK(s.decaying);
    CHECK(s.value == doctest::Approx(ratios.back()));

    // (1,n) -> -n + i tends to 1
    std::vector<MassiveEntry> ok;
    for (int n = 0; n <= 64; ++n) ok.push_back({KClass(1, n), cplx(-double(n), 1.0)});
    CHECK(support_infimum(ok).value == doctest::Approx(1.0));
}

TEST_CASE("support via the quadratic form") {
    auto st = a2_triple();
    ChargeD z = charge_from({0, 1}, {-1, 0});
    auto rep = check_support_quadratic_form(st, z, 1.0);
    CHECK(rep.stables_nonnegative);
    CHECK(rep.kernel_negative);
    CHECK(rep.kernel_dim == 0);
    CHECK(rep.passed());
    CHECK(rep.K_inverse == 1.0);

    auto half = check_support_quadratic_form(st, z, support_infimum(st).value / 2);
    CHECK_FALSE(half.stables_nonnegative);

    auto triv = check_support_quadratic_form({}, charge_from({0, 0}, {0, 0}), 3.0);
    CHECK(triv.lax_trivial);
    CHECK(triv.kernel_dim == 2);
    CHECK(triv.kernel_negative);
    CHECK(triv.passed());

    CHECK_THROWS_AS(check_support_quadratic_form(st, z, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(check_support_quadratic_form(st, z, -1.0), std::invalid_argument);

    // positive infimum <=> the form passes with K = 1/inf + slack
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 100; ++i) {
        ChargeD zz = charge_from({u(rng), u(rng)}, {u(rng), u(rng)});
        std::vector<MassiveEntry> s;
        for (KClass k : {KClass(1, 0), KClass(0, 1), KClass(1, 1), KClass(2, 1)}) s.push_back({k, charge_eval(zz, k)});
        double inf = support_infimum(s).value;
        REQUIRE(inf > 0);
        CHECK(check_support_quadratic_form(s, zz, 1.0 / inf + 1e-6).stables_nonnegative);
    }
}

TEST_CASE("phase helpers") {
    CHECK(frac1(1.25) == doctest::Approx(0.25));
    CHECK(frac1(-0.25) == doctest::Approx(0.75));
    CHECK(phase_equal_mod1(0.0, 1.0));
    CHECK(phase_equal_mod1(0.999999999999999, 0.0));
    CHECK_FALSE(phase_equal_mod1(0.5, 0.5 + 1e-9));
    CHECK(arg_phase({-1, 0}) == doctest::Approx(1.0));
    CHECK(arg_phase({0, 1}) == doctest::Approx(0.5));
    CHECK(same_ray_exact(Vec2<Rational>(Rational(1), Rational(2)), Vec2<Rational>(Rational(3), Rational(6))));
    CHECK_FALSE(same_ray_exact(Vec2<Rational>(Rational(1), Rational(2)), Vec2<Rational>(Rational(-1), Rational(-2))));
}

TEST_CASE("exact 2x2 inverse") {
    Mat2<Rational> a;
    a << Rational(2), Rational(-1), Rational(-1), Rational(2);
    CHECK(det2(a) == Rational(3));
    Mat2<Rational> p = a * inverse2(a);
    CHECK(p(0, 0) == Rational(1));
    CHECK(p(0, 1) == Rational(0));
    CHECK(p(1, 0) == Rational(0));
    CHECK(p(1, 1) == Rational(1));
    Mat2<Rational> s;
    s << Rational(1), Rational(2), Rational(2), Rational(4);
    CHECK_THROWS_AS(inverse2(s), std::domain_error);
}

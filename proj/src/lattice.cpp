#include "stabscan/lattice.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stabscan {

double frac1(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0;
    return f;
}

bool phase_equal_mod1(double a, double b) {
    double d = frac1(a - b);
    return d <= TOL_PHASE || 1.0 - d <= TOL_PHASE;
}

ChargeD charge_from(cplx z1, cplx z2) {
    Mat2<double> m;
    m << z1.real(), z2.real(), z1.imag(), z2.imag();
    return ChargeD(m);
}

ChargeQ charge_exact(Rational re1, Rational im1, Rational re2, Rational im2) {
    Mat2<Rational> m;
    m << re1, re2, im1, im2;
    return ChargeQ(m);
}

ChargeD to_double(const ChargeQ& z) {
    Mat2<double> m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m(i, j) = to_double(z.m(i, j));
    return ChargeD(m, z.approximate);
}

cplx value(const ChargeD& z, int j) { return {z.m(0, j), z.m(1, j)}; }

InnerProductQ identity_ip() { return InnerProductQ{}; }

InnerProductQ cartan_ip() {
    InnerProductQ ip;
    ip.gram << Rational(2), Rational(-1), Rational(-1), Rational(2);
    return ip;
}

bool positive_definite(const InnerProductQ& ip) {
    const auto& g = ip.gram;
    return g(0, 1) == g(1, 0) && g(0, 0) > Rational(0) && det2(g) > Rational(0);
}

Mat2<double> gram_d(const InnerProductQ& ip) {
    Mat2<double> g;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) g(i, j) = to_double(ip.gram(i, j));
    return g;
}

Rational det2(const Mat2<Rational>& a) { return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0); }

Mat2<Rational> inverse2(const Mat2<Rational>& a) {
    Rational d = det2(a);
    if (d == Rational(0)) throw std::domain_error("singular 2x2 matrix");
    Mat2<Rational> r;
    r << a(1, 1) / d, -a(0, 1) / d, -a(1, 0) / d, a(0, 0) / d;
    return r;
}

double norm_kclass(const KClass& a, const InnerProductQ& ip) {
    Vec2<Rational> v = a.cast<Rational>();
    Rational q = v.dot(ip.gram * v);
    return std::sqrt(to_double(q));
}

cplx charge_eval(const ChargeD& z, const KClass& a) {
    Vec2<double> v = z.eval(a);
    return {v(0), v(1)};
}

Vec2<Rational> charge_eval(const ChargeQ& z, const KClass& a) { return z.eval(a); }

double arg_phase(cplx z) { return std::atan2(z.imag(), z.real()) / PI; }

bool same_ray_exact(const Vec2<Rational>& a, const Vec2<Rational>& b) {
    Rational cross = a(0) * b(1) - a(1) * b(0);
    Rational dot = a(0) * b(0) + a(1) * b(1);
    return cross == Rational(0) && dot > Rational(0);
}

double operator_norm(const ChargeD& u, const InnerProductQ& ip) {
    Eigen::LLT<Mat2<double>> llt(gram_d(ip));
    Mat2<double> L = llt.matrixL();
    // |U(l)| over l^T G l = 1: substitute l = L^{-T} mu
    Mat2<double> a = u.m * L.transpose().inverse();
    Eigen::JacobiSVD<Mat2<double>> svd(a);
    return svd.singularValues()(0);
}

SemiNorm seminorm_sigma(const ChargeD& u, const std::vector<MassiveEntry>& stables, bool truncated) {
    SemiNorm out;
    std::vector<double> running;
    running.reserve(stables.size());
    double sup = 0.0;
    for (const auto& s : stables) {
        double mz = std::abs(s.z);
        if (mz == 0.0) continue;
        sup = std::max(sup, std::abs(charge_eval(u, s.k)) / mz);
        running.push_back(sup);
    }
    out.value = sup;
    if (truncated && running.size() >= 4) {
        double half = running[running.size() / 2 - 1];
        if (sup - half > 1e-6 * std::max(sup, 1e-300)) out.infinite = true;
    }
    return out;
}

SupportInf support_infimum(const std::vector<MassiveEntry>& stables, const InnerProductQ& ip, bool truncated) {
    SupportInf out;
    std::vector<double> running;
    for (const auto& s : stables) {
        double mz = std::abs(s.z);
        if (mz == 0.0) continue;
        out.value = std::min(out.value, mz / norm_kclass(s.k, ip));
        running.push_back(out.value);
    }
    if (truncated && running.size() >= 4) {
        double half = running[running.size() / 2 - 1];
        if (half - out.value > 1e-6 * half) out.decaying = true;
    }
    return out;
}

QuadraticFormReport check_support_quadratic_form(const std::vector<MassiveEntry>& stables, const ChargeD& z,
                                                 double K, const InnerProductQ& ip) {
    if (!(K > 0.0)) throw std::invalid_argument("support constant must be positive");
    QuadraticFormReport rep;
    rep.K = K;
    rep.K_inverse = 1.0 / K;
    rep.stables_nonnegative = true;
    rep.lax_trivial = true;
    for (const auto& s : stables) {
        if (std::abs(s.z) == 0.0) continue;
        rep.lax_trivial = false;
        double n = norm_kclass(s.k, ip);
        double d = K * K * std::norm(s.z) - n * n;
        rep.deltas.push_back(d);
        if (d < -1e-12 * std::max(1.0, n * n)) rep.stables_nonnegative = false;
    }
    // Delta restricted to ker Z is -|.|^2; check on a kernel basis anyway
    Eigen::JacobiSVD<Mat2<double>> svd(z.m, Eigen::ComputeFullV);
    auto sv = svd.singularValues();
    double scale = std::max(1.0, sv(0));
    rep.kernel_dim = (sv(0) <= 1e-14 * scale ? 1 : 0) + (sv(1) <= 1e-14 * scale ? 1 : 0);
    rep.kernel_negative = true;
    Mat2<double> g = gram_d(ip);
    for (int i = 2 - rep.kernel_dim; i < 2; ++i) {
        Vec2<double> v = svd.matrixV().col(i);
        Vec2<double> zv = z.m * v;
        double d = K * K * zv.squaredNorm() - v.dot(g * v);
        if (!(d < 0.0)) rep.kernel_negative = false;
    }
    return rep;
}

}  // namespace stabscan

#pragma once

#include <Eigen/Core>
#include <Eigen/LU>
#include <boost/rational.hpp>

#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

using Rational = boost::rational<std::int64_t>;

namespace Eigen {
template <>
struct NumTraits<Rational> : GenericNumTraits<Rational> {
    using Real = Rational;
    using NonInteger = Rational;
    using Literal = Rational;
    using Nested = Rational;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = 4,
        MulCost = 8
    };
    static inline Real epsilon() { return Real(0); }
    static inline Real dummy_precision() { return Real(0); }
    static inline int digits10() { return 18; }
};
}  // namespace Eigen

namespace stabscan {

template <typename T>
using Vec2 = Eigen::Matrix<T, 2, 1>;
template <typename T>
using Mat2 = Eigen::Matrix<T, 2, 2>;

using KClass = Vec2<std::int64_t>;
using cplx = std::complex<double>;

inline constexpr double TOL_PHASE = 1e-12;
inline constexpr double PI = 3.14159265358979323846;

// The single phase comparator. Everything that asks "same phase?" goes here.
inline bool phase_equal(double a, double b) { return std::abs(a - b) <= TOL_PHASE; }
bool phase_equal_mod1(double a, double b);
// representative of x mod 1 in [0,1)
double frac1(double x);

inline double to_double(const Rational& q) {
    return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}
inline double to_double(double x) { return x; }

// Charge as a real 2x2 matrix: column j is Z(e_j) written as (re, im).
template <typename T>
struct Charge {
    Mat2<T> m = Mat2<T>::Zero();
    bool approximate = false;

    Charge() = default;
    explicit Charge(const Mat2<T>& mm, bool approx = false) : m(mm), approximate(approx) {}

    Vec2<T> eval(const KClass& a) const { return m * a.template cast<T>(); }
    Vec2<T> column(int j) const { return m.col(j); }

    Charge operator+(const Charge& o) const { return Charge(m + o.m, approximate || o.approximate); }
    Charge operator-(const Charge& o) const { return Charge(m - o.m, approximate || o.approximate); }
    Charge operator*(const T& s) const { return Charge(m * s, approximate); }
};

using ChargeD = Charge<double>;
using ChargeQ = Charge<Rational>;

ChargeD charge_from(cplx z1, cplx z2);
ChargeQ charge_exact(Rational re1, Rational im1, Rational re2, Rational im2);
ChargeD to_double(const ChargeQ& z);
cplx value(const ChargeD& z, int j);

template <typename T>
struct InnerProduct {
    Mat2<T> gram = Mat2<T>::Identity();
};

using InnerProductQ = InnerProduct<Rational>;

InnerProductQ identity_ip();
InnerProductQ cartan_ip();
bool positive_definite(const InnerProductQ& ip);
Mat2<double> gram_d(const InnerProductQ& ip);

double norm_kclass(const KClass& a, const InnerProductQ& ip = identity_ip());
cplx charge_eval(const ChargeD& z, const KClass& a);
Vec2<Rational> charge_eval(const ChargeQ& z, const KClass& a);

// phase in (-1,1] of a nonzero value
double arg_phase(cplx z);
// exact: do two nonzero Gaussian rationals lie on the same open ray
bool same_ray_exact(const Vec2<Rational>& a, const Vec2<Rational>& b);

double operator_norm(const ChargeD& u, const InnerProductQ& ip = identity_ip());

struct MassiveEntry {
    KClass k;
    cplx z;
};

struct SemiNorm {
    double value = 0.0;
    bool infinite = false;
};

// sup |U(s)|/|Z(s)|; if truncated, a running sup that keeps growing over the last half is INFINITE
SemiNorm seminorm_sigma(const ChargeD& u, const std::vector<MassiveEntry>& stables, bool truncated = false);

struct SupportInf {
    double value = std::numeric_limits<double>::infinity();
    bool decaying = false;  // truncated family whose running infimum is not settling
};

SupportInf support_infimum(const std::vector<MassiveEntry>& stables, const InnerProductQ& ip = identity_ip(),
                           bool truncated = false);

struct QuadraticFormReport {
    double K = 0.0;
    double K_inverse = 0.0;
    bool stables_nonnegative = false;  // Delta(v(s)) >= 0 on every massive stable
    bool kernel_negative = false;      // Delta negative definite on ker Z
    int kernel_dim = 0;
    bool lax_trivial = false;          // no massive stables
    std::vector<double> deltas;
    bool passed() const { return stables_nonnegative && kernel_negative; }
};

// throws std::invalid_argument for K <= 0
QuadraticFormReport check_support_quadratic_form(const std::vector<MassiveEntry>& stables, const ChargeD& z,
                                                 double K, const InnerProductQ& ip = identity_ip());

Mat2<Rational> inverse2(const Mat2<Rational>& a);
Rational det2(const Mat2<Rational>& a);

}  // namespace stabscan

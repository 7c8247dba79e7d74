#include "stabscan/slicing.hpp"

#include <algorithm>
#include <cmath>

namespace stabscan {

namespace {

constexpr double kLiftTol = 1e-9;

bool near_phase(double a, double b) { return std::abs(a - b) <= kLiftTol; }

double lift_near(double a, double hint) { return a + 2.0 * std::round((hint - a) / 2.0); }

double lift_from(double a, double base) {
    double x = a + 2.0 * std::floor((base - kLiftTol - a) / 2.0);
    while (x < base - kLiftTol) x += 2.0;
    return x;
}

std::int64_t cross(const KClass& a, const KClass& b) { return a(0) * b(1) - a(1) * b(0); }

bool outside_heart(cplx z) { return z.imag() < 0 || (z.imag() == 0 && z.real() >= 0); }

double massless_threshold(const ChargeD& z) { return 1e-12 * (1.0 + z.m.norm()); }

void check_support(StabilityPoint& p) {
    auto inf = support_infimum(p.massive(), identity_ip(), p.truncated);
    p.support_ok = inf.value > 0 && !inf.decaying;
}

// The workhorse: phases of the stables of a cell, lifted from the phase of cell.lo.
StabilityPoint build(DriverPtr d, const CellRep& c, const ChargeD& z, double hint,
                     const std::map<std::string, double>& psi, int depth, bool strict) {
    StabilityPoint p;
    p.driver = d;
    p.cell = {d->normalize(c.lo), d->normalize(c.hi)};
    p.chamber_key = d->cell_key(p.cell, depth);
    p.Z = z;
    p.depth = depth;
    p.truncated = !d->accumulation(p.cell).empty();
    const double tiny = massless_threshold(z);
    double phi_lo = 0.0;
    auto L = d->stable_set(p.cell, depth);
    for (std::size_t i = 0; i < L.size(); ++i) {
        StableEntry e;
        e.obj = L[i];
        e.k = d->kclass(L[i]);
        e.z = charge_eval(z, e.k);
        e.massless = std::abs(e.z) <= tiny;
        if (e.massless) {
            auto it = psi.find(L[i].name);
            if (it == psi.end()) throw PreconditionError("massless stable " + L[i].str() + " has no phase");
            e.z = 0.0;
            e.phase = it->second;
        } else {
            double a = arg_phase(e.z);
            e.phase = i == 0 ? lift_near(a, hint) : lift_from(a, phi_lo);
        }
        if (i == 0) phi_lo = e.phase;
        p.stables.push_back(e);
    }
    for (std::size_t i = 1; i < p.stables.size(); ++i) {
        double a = p.stables[i - 1].phase, b = p.stables[i].phase;
        bool ok = strict ? (b > a && !phase_equal(a, b)) : b >= a - kLiftTol;
        if (!ok)
            throw PreconditionError("charge does not order the stables of " + p.chamber_key + " (" +
                                    p.stables[i - 1].obj.str() + ", " + p.stables[i].obj.str() + ")");
    }
    double span = p.stables.back().phase - phi_lo;
    if (strict ? span >= 1.0 - TOL_PHASE : span > 1.0 + kLiftTol)
        throw PreconditionError("stables of " + p.chamber_key + " spread over more than one period");
    check_support(p);
    return p;
}

std::pair<double, double> simple_phases(const CategoryModel& d, const Heart& h, const ChargeD& z) {
    cplx za = charge_eval(z, d.kclass(h.a)), zb = charge_eval(z, d.kclass(h.b));
    if (za == 0.0 || zb == 0.0) throw ChargeOutsideHeart("a heart simple has zero charge");
    if (outside_heart(za) || outside_heart(zb))
        throw ChargeOutsideHeart("a heart simple has phase outside (0,1]");
    return {arg_phase(za), arg_phase(zb)};
}

ChargeD from_columns(cplx a, cplx b, bool approx) {
    ChargeD z = charge_from(a, b);
    z.approximate = approx;
    return z;
}

// Z' with Z'(a) = 0 and Z'(b) = Z(b)
ChargeD kill(const ChargeD& z, const KClass& ka, const KClass& kb) {
    Mat2<Rational> B;
    B << Rational(ka(0)), Rational(kb(0)), Rational(ka(1)), Rational(kb(1));
    Mat2<Rational> Bi = inverse2(B);
    Mat2<double> bi;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) bi(i, j) = to_double(Bi(i, j));
    Mat2<double> img = Mat2<double>::Zero();
    img.col(1) = z.m * kb.cast<double>();
    return ChargeD(img * bi, z.approximate);
}

}  // namespace

bool StabilityPoint::lax() const {
    return std::any_of(stables.begin(), stables.end(), [](const StableEntry& e) { return e.massless; });
}

const StableEntry* StabilityPoint::find(const std::string& name) const {
    for (const auto& e : stables)
        if (e.obj.name == name) return &e;
    return nullptr;
}

double StabilityPoint::phase_of(const ObjectId& x) const {
    const StableEntry* e = find(x.name);
    if (!e) throw NotExpressible(x.str() + " is not stable in " + chamber_key);
    int delta = x.shift - e->obj.shift;
    if (driver->shift_modulus() == 2) delta = ((delta % 2) + 2) % 2;
    return e->phase + delta;
}

std::vector<MassiveEntry> StabilityPoint::massive() const {
    std::vector<const StableEntry*> ms;
    for (const auto& e : stables)
        if (!e.massless) ms.push_back(&e);
    std::vector<MassiveEntry> out;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const KClass& kx = ms[i]->k;
        bool sum = false;
        for (std::size_t j = 0; j < ms.size() && !sum; ++j) {
            if (j == i || !near_phase(ms[j]->phase, ms[i]->phase)) continue;
            const KClass& kj = ms[j]->k;
            if (cross(kx, kj) == 0 && kj.dot(kj) > 0) {
                std::int64_t num = kx.dot(kj), den = kj.dot(kj);
                if (num % den == 0 && num / den >= 2) sum = true;
            }
            for (std::size_t l = j + 1; l < ms.size() && !sum; ++l) {
                if (l == i || !near_phase(ms[l]->phase, ms[i]->phase)) continue;
                const KClass& kl = ms[l]->k;
                std::int64_t det = cross(kj, kl);
                if (det == 0) continue;
                std::int64_t na = cross(kx, kl), nb = cross(kj, kx);
                if (na % det || nb % det) continue;
                std::int64_t a = na / det, b = nb / det;
                if (a >= 0 && b >= 0 && a + b >= 2) sum = true;
            }
        }
        if (!sum) out.push_back({kx, ms[i]->z});
    }
    return out;
}

std::vector<ObjectId> StabilityPoint::massless_set() const {
    std::vector<ObjectId> out;
    for (const auto& e : stables)
        if (e.massless) out.push_back(e.obj);
    return out;
}

StabilityPoint make_point(DriverPtr d, const Heart& h, const ChargeD& z, int depth) {
    auto [pa, pb] = simple_phases(*d, h, z);
    if (phase_equal(pa, pb)) throw ChargeOnWall("simples " + h.a.str() + " and " + h.b.str() + " share a phase");
    CellRep c = pa < pb ? CellRep{h.a, h.b} : CellRep{h.b, h.a};
    return build(d, c, z, std::min(pa, pb), {}, depth, true);
}

StabilityPoint make_point(DriverPtr d, const Heart& h, const ChargeQ& z, int depth) {
    Vec2<Rational> va = charge_eval(z, d->kclass(h.a)), vb = charge_eval(z, d->kclass(h.b));
    auto outside = [](const Vec2<Rational>& v) {
        return v(1) < Rational(0) || (v(1) == Rational(0) && v(0) >= Rational(0));
    };
    if (outside(va) || outside(vb)) throw ChargeOutsideHeart("a heart simple has phase outside (0,1]");
    if (same_ray_exact(va, vb)) throw ChargeOnWall("simples " + h.a.str() + " and " + h.b.str() + " share a phase");
    return make_point(d, h, to_double(z), depth);
}

StabilityPoint make_point(DriverPtr d, const CellRep& expected, const ChargeD& z, int depth) {
    StabilityPoint p = make_point(d, expected.heart(), z, depth);
    p.relocated = p.cell.lo != d->normalize(expected.lo);
    return p;
}

StabilityPoint make_point_lifted(DriverPtr d, const CellRep& c, const ChargeD& z, double phi_lo, int depth) {
    return build(d, c, z, phi_lo, {}, depth, true);
}

LaxPoint make_lax_point(DriverPtr d, const CellRep& c, const ChargeD& z, const std::map<std::string, double>& psi,
                        std::optional<double> phi_lo, int depth) {
    double hint = 0.0;
    if (phi_lo) {
        hint = *phi_lo;
    } else {
        cplx zl = charge_eval(z, d->kclass(c.lo));
        hint = std::abs(zl) > massless_threshold(z) ? arg_phase(zl) : 0.0;
    }
    return build(d, c, z, hint, psi, depth, false);
}

StabilityPoint make_point_closed(DriverPtr d, const Heart& h, const ChargeD& z, int depth) {
    auto [pa, pb] = simple_phases(*d, h, z);
    if (!phase_equal(pa, pb)) return make_point(d, h, z, depth);
    CellRep c = d->ext(h.a, h.b) ? CellRep{h.a, h.b} : CellRep{h.b, h.a};
    return build(d, c, z, pa, {}, depth, false);
}

double mass_of(const StabilityPoint& p, const ObjectId& x) {
    double m = 0.0;
    for (const auto& f : p.driver->hn_factors(x, p.cell, p.depth))
        m += f.mult * std::abs(p.charge(p.driver->kclass(f.obj)));
    return m;
}

std::pair<double, double> phase_range(const StabilityPoint& p, const ObjectId& x) {
    auto f = p.driver->hn_factors(x, p.cell, p.depth);
    double hi = -1e300, lo = 1e300;
    for (const auto& h : f) {
        double ph = p.phase_of(h.obj);
        hi = std::max(hi, ph);
        lo = std::min(lo, ph);
    }
    return {hi, lo};
}

double slicing_distance(const StabilityPoint& p, const StabilityPoint& q, std::optional<int> test_depth) {
    if (p.driver->name() != q.driver->name()) throw PreconditionError("points over different drivers");
    int depth = test_depth ? *test_depth : std::min(p.depth, q.depth);
    const bool mod2 = p.driver->shift_modulus() == 2;
    auto reduce = [&](double x) { return mod2 ? std::abs(x - 2.0 * std::round(x / 2.0)) : std::abs(x); };
    double best = 0.0;
    for (const auto& x : p.driver->enumerate(depth)) {
        std::pair<double, double> a, b;
        try {
            a = phase_range(p, x);
            b = phase_range(q, x);
        } catch (const NotExpressible&) {
            continue;
        }
        best = std::max({best, reduce(a.first - b.first), reduce(a.second - b.second)});
    }
    return best;
}

bool in_Beps(const StabilityPoint& sigma, const StabilityPoint& tau, double eps) {
    if (!(eps > 0 && eps < 0.125)) throw PreconditionError("eps must lie in (0, 1/8)");
    if (slicing_distance(sigma, tau) >= eps) return false;
    SemiNorm n = seminorm_sigma(tau.Z - sigma.Z, sigma.massive(), sigma.truncated);
    return !n.infinite && n.value < std::sin(PI * eps);
}

StabilityPoint act(const StabilityPoint& p, cplx w) {
    cplx f = std::exp(cplx(0, -PI) * w);
    ChargeD z = from_columns(f * value(p.Z, 0), f * value(p.Z, 1), true);
    std::map<std::string, double> psi;
    for (const auto& e : p.stables)
        if (e.massless) psi[e.obj.name] = e.phase - w.real();
    StabilityPoint q = build(p.driver, p.cell, z, p.stables.front().phase - w.real(), psi, p.depth, false);
    q.relocated = p.relocated;
    return q;
}

StabilityPoint twist_point(const StabilityPoint& p, const std::string& gen) {
    const auto& d = *p.driver;
    CellRep c{d.normalize(d.apply_twist(gen, p.cell.lo)), d.normalize(d.apply_twist(gen, p.cell.hi))};
    ChargeD z = twist_charge_pullback(d, gen, p.Z);
    auto L = d.stable_set(c, p.depth);
    std::map<std::string, double> psi;
    for (const auto& e : p.stables) {
        if (!e.massless) continue;
        ObjectId y = d.apply_twist(gen, e.obj);
        for (const auto& x : L)
            if (x.name == y.name) psi[x.name] = e.phase + (x.shift - y.shift);
    }
    return build(p.driver, c, z, p.stables.front().phase, psi, p.depth, !p.lax());
}

LaxPoint degenerate_limit(const StabilityPoint& p, const std::set<std::string>& dying) {
    if (dying.empty()) return p;
    const auto& d = *p.driver;
    for (const auto& n : dying)
        if (!d.heart_simple_candidate(n))
            throw UnreachableStratum(n + " is not simple in any algebraic heart" +
                                     (d.exclusion_reason(n) ? ": " + *d.exclusion_reason(n) : std::string()));
    if (dying.size() > 2) throw UnreachableStratum("more than two dying simples");
    std::optional<CellRep> win;
    for (const auto& w : d.windows(p.cell, p.depth)) {
        std::set<std::string> names{w.lo.name, w.hi.name};
        bool ok = std::all_of(dying.begin(), dying.end(), [&](const std::string& n) { return names.count(n) > 0; });
        if (ok) {
            win = w;
            break;
        }
    }
    if (!win) throw UnreachableStratum("dying objects are not the simples of a heart of " + p.chamber_key);

    ChargeD z;
    if (dying.size() == 2) {
        z = ChargeD(Mat2<double>::Zero(), p.Z.approximate);
    } else {
        bool lo_dies = dying.count(win->lo.name) > 0;
        const ObjectId& a = lo_dies ? win->lo : win->hi;
        const ObjectId& b = lo_dies ? win->hi : win->lo;
        z = kill(p.Z, d.kclass(a), d.kclass(b));
    }
    const double tiny = massless_threshold(z);
    std::map<std::string, double> psi;
    for (const auto& x : d.stable_set(*win, p.depth))
        if (std::abs(charge_eval(z, d.kclass(x))) <= tiny) psi[x.name] = p.phase_of(x);
    LaxPoint q = build(p.driver, *win, z, p.phase_of(win->lo), psi, p.depth, false);
    return q;
}

namespace {

const StableEntry& min_norm(const LaxPoint& p, bool massless) {
    const StableEntry* best = nullptr;
    for (const auto& e : p.stables) {
        if (e.massless != massless) continue;
        if (!best || norm_kclass(e.k) < norm_kclass(best->k) - 1e-12) best = &e;
    }
    if (!best) throw PreconditionError(massless ? "no massless stables" : "no massive stables");
    return *best;
}

void check_rank_one(const LaxPoint& p) {
    auto ml = p.massless_set();
    if (ml.empty()) throw PreconditionError("empty massless set");
    const KClass k0 = p.driver->kclass(ml.front());
    for (const auto& x : ml)
        if (cross(k0, p.driver->kclass(x)) != 0) throw PreconditionError("massless classes span rank two");
}

}  // namespace

QuotientDatum mu_N(const LaxPoint& p) {
    check_rank_one(p);
    const StableEntry* any = nullptr;
    for (const auto& e : p.stables)
        if (!e.massless) any = &e;
    if (!any) throw PreconditionError("every stable is massless; mu_N undefined");
    const StableEntry& g = min_norm(p, false);
    QuotientDatum q;
    q.generator = g.obj;
    q.k = g.k;
    q.z = g.z;
    q.phase = g.phase;
    q.mass = std::abs(g.z);
    q.log_mass = std::log(q.mass);
    q.pi_phase = PI * g.phase;
    return q;
}

double rho_N(const LaxPoint& p) {
    auto ml = p.massless_set();
    if (ml.empty()) throw PreconditionError("empty massless set; rho_N undefined");
    return min_norm(p, true).phase;
}

MasslessStratumCoords stratum_coords(const LaxPoint& p) { return {mu_N(p), rho_N(p)}; }

double quotient_distance(const QuotientDatum& a, const QuotientDatum& b) {
    return std::abs(a.phase - b.phase - (a.generator.shift - b.generator.shift));
}

namespace {

ChargeD normal_charge(const InnerProductQ& ip, const KClass& n, double r, double psi) {
    Mat2<double> g = gram_d(ip);
    Vec2<double> nd = n.cast<double>();
    Eigen::RowVector2d row = (g * nd).transpose() / nd.dot(g * nd);
    cplx c = std::polar(r, PI * psi);
    Vec2<double> col(c.real(), c.imag());
    return ChargeD(col * row, true);
}

StabilityPoint deform(const LaxPoint& p, const ChargeD& w) {
    ChargeD z = p.Z + w;
    try {
        return build(p.driver, p.cell, z, p.stables.front().phase, {}, p.depth, true);
    } catch (const PreconditionError&) {
    }
    try {
        return make_point(p.driver, p.cell.heart(), z, p.depth);
    } catch (const PreconditionError& e) {
        throw DriverError(std::string("driver cannot realise the deformed heart: ") + e.what());
    }
}

}  // namespace

DeformationReport verify_normal_deformation(const LaxPoint& p, double r, double eps, std::optional<double> psi_override) {
    if (!(eps > 0 && eps < 0.125)) throw PreconditionError("eps must lie in (0, 1/8)");
    if (!(r > 0)) throw PreconditionError("r must be positive");
    check_rank_one(p);
    const StableEntry& gen = min_norm(p, true);
    DeformationReport rep;
    rep.r = r;
    rep.eps = eps;
    rep.generator = gen.obj;
    rep.psi = psi_override ? *psi_override : gen.phase;
    const InnerProductQ ip = p.driver->natural_ip();
    rep.W = normal_charge(ip, gen.k, r, rep.psi);
    SemiNorm n = seminorm_sigma(rep.W, p.massive(), p.truncated);
    if (n.infinite || n.value >= std::sin(PI * eps))
        throw PreconditionError("deformation norm " + std::to_string(n.value) + " is not below sin(pi eps)");
    rep.norm_W = n.value;
    rep.norm_W_operator = operator_norm(rep.W, ip);
    rep.deformed = deform(p, rep.W);
    rep.receiving_chamber = rep.deformed.chamber_key;
    rep.distance = slicing_distance(p, rep.deformed);
    rep.classical = !rep.deformed.lax() && rep.deformed.support_ok;
    rep.generator_phase = rep.deformed.phase_of(gen.obj);
    double dphi = rep.generator_phase - rep.psi;
    rep.phase_matches = std::abs(dphi - 2.0 * std::round(dphi / 2.0)) <= 1e-9;
    rep.within_eps = rep.distance < eps;

    bool conv = true;
    double prev_d = rep.distance, prev_n = rep.norm_W;
    for (int k = 1; k <= 4; ++k) {
        double rk = r * std::pow(4.0, -k);
        ChargeD wk = normal_charge(ip, gen.k, rk, rep.psi);
        StabilityPoint qk = deform(p, wk);
        double dk = slicing_distance(p, qk);
        double nk = seminorm_sigma(wk, p.massive(), p.truncated).value;
        rep.grid_r.push_back(rk);
        rep.grid_distance.push_back(dk);
        rep.grid_norm.push_back(nk);
        if (dk > prev_d + 1e-15 || nk > prev_n + 1e-15) conv = false;
        if (std::abs(nk - rep.norm_W * rk / r) > 1e-12 * (1 + rep.norm_W)) conv = false;
        prev_d = dk;
        prev_n = nk;
    }
    if (rep.grid_distance.back() > rep.distance / 16.0 + 1e-15) conv = false;
    rep.converges = conv;
    return rep;
}

}  // namespace stabscan

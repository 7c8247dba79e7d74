#include "stabscan/orbit.hpp"

#include <algorithm>
#include <cmath>

namespace stabscan {

namespace {

void add_unique(std::vector<double>& v, double x) {
    for (double y : v)
        if (phase_equal_mod1(x, y)) return;
    v.push_back(x);
}

}  // namespace

PhaseDiagram phase_diagram(const StabilityPoint& p) {
    PhaseDiagram pd;
    for (const auto& a : p.driver->accumulation(p.cell)) {
        AccumulationPhase ap;
        ap.phase = frac1(p.phase_of(a.obj));
        ap.obj = a.obj;
        ap.from_below = a.from_below;
        ap.from_above = a.from_above;
        pd.accumulation.push_back(ap);
    }
    for (const auto& e : p.stables) {
        double ph = frac1(e.phase);
        bool acc = std::any_of(pd.accumulation.begin(), pd.accumulation.end(),
                               [&](const AccumulationPhase& a) { return phase_equal_mod1(a.phase, ph); });
        if (!acc) add_unique(pd.isolated, ph);
    }
    std::sort(pd.isolated.begin(), pd.isolated.end());
    return pd;
}

cplx disk_f(cplx w) { return cplx(0, 1) * (1.0 + w) / (1.0 - w); }

cplx M_w(cplx w, cplx z) { return z.real() + disk_f(w) * z.imag(); }

double boundary_charge_generic(double phi, double phi_prime, double mass) {
    if (phase_equal_mod1(phi, 0.0)) throw PreconditionError("sine rule branch needs phi != 0 mod 1");
    if (phase_equal_mod1(phi, phi_prime)) return 0.0;
    return mass * std::sin(PI * (phi - phi_prime)) / std::sin(PI * phi);
}

double boundary_charge(double phi, double phi_prime, double mass) {
    if (phase_equal_mod1(phi, phi_prime)) return 0.0;
    if (phase_equal_mod1(phi, 0.0)) return -mass * std::sin(PI * phi_prime);
    return boundary_charge_generic(phi, phi_prime, mass);
}

double boundary_charge(const StabilityPoint& p, double phi, const ObjectId& c) {
    return boundary_charge(phi, p.phase_of(c), std::abs(p.charge(p.driver->kclass(c))));
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Classical: return "CLASSICAL";
        case Verdict::Lax: return "LAX";
        default: return "EXCLUDED";
    }
}

DiskBoundaryClass classify_boundary(const StabilityPoint& p, double phi) {
    PhaseDiagram pd = phase_diagram(p);
    DiskBoundaryClass b;
    b.phi = frac1(phi);
    if (pd.dense) {
        b.verdict = Verdict::Excluded;
        b.support_ok = false;
        return b;
    }
    for (const auto& e : p.stables)
        if (phase_equal_mod1(e.phase, phi)) b.massless.push_back(e.obj);
    const AccumulationPhase* acc = nullptr;
    for (const auto& a : pd.accumulation)
        if (phase_equal_mod1(a.phase, phi)) acc = &a;
    b.accumulation = acc != nullptr;

    if (b.massless.empty()) {
        b.verdict = acc ? Verdict::Excluded : Verdict::Classical;
        b.support_ok = !acc;
        return b;
    }
    bool candidates = std::all_of(b.massless.begin(), b.massless.end(),
                                  [&](const ObjectId& x) { return p.driver->heart_simple_candidate(x.name); });
    if (!acc) {
        b.verdict = Verdict::Lax;
        b.psi_lo = 0.0;
        b.psi_hi = 1.0;
        b.support_ok = true;
    } else if (acc->from_above && !acc->from_below) {
        b.verdict = Verdict::Lax;
        b.psi_lo = b.psi_hi = 1.0;
        b.support_ok = candidates;
    } else if (acc->from_below && !acc->from_above) {
        b.verdict = Verdict::Lax;
        b.psi_lo = b.psi_hi = 0.0;
        b.support_ok = candidates;
    } else {
        b.verdict = Verdict::Excluded;
        b.support_ok = false;
    }
    return b;
}

DiskReport disk_report(const StabilityPoint& p) {
    DiskReport r;
    r.phases = phase_diagram(p);
    std::vector<double> special = r.phases.isolated;
    for (const auto& a : r.phases.accumulation) add_unique(special, a.phase);
    std::sort(special.begin(), special.end());
    for (double phi : special) {
        DiskBoundaryClass b = classify_boundary(p, phi);
        if (b.verdict == Verdict::Classical) r.d_sigma.push_back(phi);
        if (b.verdict == Verdict::Classical || (b.verdict == Verdict::Lax && b.support_ok)) r.d_sigma_q.push_back(phi);
        r.points.push_back(std::move(b));
    }
    r.generic_classical = !r.phases.dense;
    return r;
}

}  // namespace stabscan

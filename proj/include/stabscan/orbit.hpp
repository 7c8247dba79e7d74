#pragma once

#include "stabscan/slicing.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stabscan {

struct AccumulationPhase {
    double phase = 0.0;  // mod 1
    ObjectId obj;        // stable object sitting there
    bool from_below = false;
    bool from_above = false;
};

struct PhaseDiagram {
    std::vector<double> isolated;  // occupied phases mod 1, ascending, accumulation phases removed
    std::vector<AccumulationPhase> accumulation;
    bool dense = false;
};

PhaseDiagram phase_diagram(const StabilityPoint& p);

// the conformal map of the disk used for the orbit
cplx disk_f(cplx w);
// real-linear map sending 1 -> 1 and i -> f(w)
cplx M_w(cplx w, cplx z);

// Z_w(c) for c of phase phi_prime and mass m at the boundary point w = exp(2 pi i phi).
// Exactly zero when phi_prime = phi mod 1.
double boundary_charge(double phi, double phi_prime, double mass);
// only the w != 1 branch; throws PreconditionError at phi = 0 mod 1
double boundary_charge_generic(double phi, double phi_prime, double mass);
double boundary_charge(const StabilityPoint& p, double phi, const ObjectId& c);

enum class Verdict { Classical, Lax, Excluded };
std::string verdict_name(Verdict v);

struct DiskBoundaryClass {
    double phi = 0.0;
    Verdict verdict = Verdict::Classical;
    double psi_lo = 0.0, psi_hi = 0.0;  // permitted massless phases for Lax
    bool support_ok = true;
    bool accumulation = false;
    std::vector<ObjectId> massless;  // stables of phase phi
};

DiskBoundaryClass classify_boundary(const StabilityPoint& p, double phi);

struct DiskReport {
    PhaseDiagram phases;
    std::vector<DiskBoundaryClass> points;  // every occupied or accumulation phase
    bool generic_classical = true;          // all other boundary points lie in D_sigma
    std::vector<double> d_sigma;            // listed points that are classical
    std::vector<double> d_sigma_q;          // listed points in D_sigma^Q
};

DiskReport disk_report(const StabilityPoint& p);

}  // namespace stabscan

#pragma once

#include "stabscan/driver.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabscan {

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ChargeOnWall : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct ChargeOutsideHeart : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct UnreachableStratum : PreconditionError {
    using PreconditionError::PreconditionError;
};

inline constexpr double DEFAULT_EPS = 1.0 / 16.0;

struct StableEntry {
    ObjectId obj;
    KClass k;
    cplx z;
    double phase = 0.0;
    bool massless = false;
};

// A point of the (lax) stability space: one cell of the atlas, a charge, lifted phases.
struct StabilityPoint {
    DriverPtr driver;
    CellRep cell;
    std::string chamber_key;
    ChargeD Z;
    int depth = 4;
    std::vector<StableEntry> stables;  // ascending phase, one period
    bool truncated = false;            // stable set cut from an infinite family
    bool relocated = false;            // make_point moved away from the requested cell
    bool support_ok = true;            // mass gap on the massive stables

    bool lax() const;
    const StableEntry* find(const std::string& name) const;
    // phase of a stable object up to shift
    double phase_of(const ObjectId& x) const;
    cplx charge(const KClass& k) const { return charge_eval(Z, k); }
    // massive stables, dropping classes that are sums of other massive stables of the same phase
    std::vector<MassiveEntry> massive() const;
    std::vector<ObjectId> massless_set() const;
};

using LaxPoint = StabilityPoint;

// Both heart simples must have phases in (0,1]; the cell follows from their order.
StabilityPoint make_point(DriverPtr d, const Heart& h, const ChargeD& z, int depth = 4);
StabilityPoint make_point(DriverPtr d, const Heart& h, const ChargeQ& z, int depth = 4);
// as above, flags relocated when the phases pick the other cell of the heart
StabilityPoint make_point(DriverPtr d, const CellRep& expected, const ChargeD& z, int depth = 4);
// A point in a given cell with the phase of cell.lo lifted next to phi_lo. Throws
// PreconditionError if the charge does not order the stables of the cell.
StabilityPoint make_point_lifted(DriverPtr d, const CellRep& c, const ChargeD& z, double phi_lo, int depth = 4);
// Charges may vanish; every massless stable needs an entry in psi.
LaxPoint make_lax_point(DriverPtr d, const CellRep& c, const ChargeD& z, const std::map<std::string, double>& psi,
                        std::optional<double> phi_lo = std::nullopt, int depth = 4);
// On a wall the closed side is the cell where the extension is still semistable.
StabilityPoint make_point_closed(DriverPtr d, const Heart& h, const ChargeD& z, int depth = 4);

double mass_of(const StabilityPoint& p, const ObjectId& x);
// (phi+, phi-) of x
std::pair<double, double> phase_range(const StabilityPoint& p, const ObjectId& x);

double slicing_distance(const StabilityPoint& p, const StabilityPoint& q, std::optional<int> test_depth = std::nullopt);

bool in_Beps(const StabilityPoint& sigma, const StabilityPoint& tau, double eps = DEFAULT_EPS);

// w acts by Z -> exp(-i pi w) Z, phases -> phases - Re w
StabilityPoint act(const StabilityPoint& p, cplx w);
// image of p under a driver autoequivalence
StabilityPoint twist_point(const StabilityPoint& p, const std::string& gen);

LaxPoint degenerate_limit(const StabilityPoint& p, const std::set<std::string>& dying);

struct QuotientDatum {
    ObjectId generator;
    KClass k;
    cplx z;
    double phase = 0.0;
    double mass = 0.0;
    double log_mass = 0.0;
    double pi_phase = 0.0;
};

struct MasslessStratumCoords {
    QuotientDatum quotient;
    double psi = 0.0;
};

QuotientDatum mu_N(const LaxPoint& p);
double rho_N(const LaxPoint& p);
MasslessStratumCoords stratum_coords(const LaxPoint& p);
// distance of two rank-one quotient data
double quotient_distance(const QuotientDatum& a, const QuotientDatum& b);

struct DeformationReport {
    double r = 0.0;
    double eps = DEFAULT_EPS;
    double psi = 0.0;
    ObjectId generator;
    ChargeD W;
    double norm_W = 0.0;           // semi-norm at p, W re-embedded orthogonally
    double norm_W_operator = 0.0;  // operator norm of the same W
    StabilityPoint deformed;
    std::string receiving_chamber;
    double distance = 0.0;
    double generator_phase = 0.0;
    bool classical = false;     // (a)
    bool phase_matches = false; // (b)
    bool within_eps = false;    // (c)
    bool converges = false;     // (d)
    std::vector<double> grid_r, grid_distance, grid_norm;
    bool passed() const { return classical && phase_matches && within_eps && converges; }
};

DeformationReport verify_normal_deformation(const LaxPoint& p, double r, double eps = DEFAULT_EPS,
                                            std::optional<double> psi_override = std::nullopt);

}  // namespace stabscan

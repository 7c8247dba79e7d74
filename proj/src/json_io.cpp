#include "stabscan/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace stabscan {

json num6(double x) {
    if (std::isnan(x)) return nullptr;
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

json kclass_json(const KClass& k) { return json::array({k(0), k(1)}); }

json charge_json(const ChargeD& z) {
    json out = json::array();
    for (int j = 0; j < 2; ++j) out.push_back(json::array({num6(z.m(0, j)), num6(z.m(1, j))}));
    return out;
}

json charge_json(const ChargeQ& z) {
    auto q = [](const Rational& r) {
        return r.denominator() == 1 ? std::to_string(r.numerator())
                                    : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
    };
    json out = json::array();
    for (int j = 0; j < 2; ++j) out.push_back(json::array({q(z.m(0, j)), q(z.m(1, j))}));
    return out;
}

std::string chamber_label(const StabilityPoint& p) {
    if (p.driver->name() == "a2") return p.stables.size() >= 3 ? "triple" : "pair";
    return p.chamber_key;
}

json category_model_json(const CategoryModel& d) {
    json j;
    j["schema"] = "category-model.v1";
    j["driver"] = d.name();
    Heart h = d.seed_heart();
    j["simples"] = json::array();
    for (const auto& x : {h.a, h.b}) j["simples"].push_back({{"id", x.str()}, {"class", kclass_json(d.kclass(x))}});
    auto e = d.ext_dims(h);
    j["ext_dims"] = json::array({json::array({e(0, 0), e(0, 1)}), json::array({e(1, 0), e(1, 1)})});
    j["twists"] = json::array();
    for (const auto& g : d.twist_generators())
        j["twists"].push_back({{"name", g.name},
                               {"k_matrix", json::array({json::array({g.k_matrix(0, 0), g.k_matrix(0, 1)}),
                                                         json::array({g.k_matrix(1, 0), g.k_matrix(1, 1)})})}});
    j["hyperbolic"] = d.hyperbolic();
    j["shift_modulus"] = d.shift_modulus();
    return j;
}

json point_json(const StabilityPoint& p) {
    json j;
    j["schema"] = "stability-point.v1";
    j["driver"] = p.driver->name();
    j["chamber"] = chamber_label(p);
    j["chamber_key"] = p.chamber_key;
    j["cell"] = {{"lo", p.cell.lo.str()}, {"hi", p.cell.hi.str()}};
    j["charge"] = charge_json(p.Z);
    json phases = json::object(), masses = json::object(), massless = json::array();
    for (const auto& e : p.stables) {
        phases[e.obj.str()] = num6(e.phase);
        masses[e.obj.str()] = num6(std::abs(e.z));
        if (e.massless) massless.push_back({{"id", e.obj.str()}, {"psi", num6(e.phase)}});
    }
    j["phases"] = phases;
    j["masses"] = masses;
    j["massless"] = massless;
    auto inf = support_infimum(p.massive(), identity_ip(), p.truncated);
    j["support_infimum"] = num6(inf.value);
    j["support_ok"] = p.support_ok;
    j["truncated"] = p.truncated;
    j["relocated"] = p.relocated;
    j["depth"] = p.depth;
    return j;
}

json atlas_json(const ChamberAtlas& at) {
    json j;
    j["schema"] = "atlas.v1";
    j["driver"] = at.driver;
    j["depth"] = at.depth;
    j["cells"] = json::array();
    for (const auto& c : at.cells) {
        json st = json::array();
        for (const auto& x : c.stables) st.push_back(x.str());
        j["cells"].push_back({{"key", c.key},
                              {"lo", c.rep.lo.str()},
                              {"hi", c.rep.hi.str()},
                              {"distance", c.distance},
                              {"chamber", c.chamber},
                              {"stables", st}});
    }
    j["walls"] = json::array();
    for (const auto& w : at.walls)
        j["walls"].push_back({{"key", w.key},
                              {"a", w.heart.a.str()},
                              {"b", w.heart.b.str()},
                              {"cell_a", w.cell_a},
                              {"cell_b", w.cell_b},
                              {"true_wall", w.true_wall},
                              {"frontier", w.frontier}});
    j["chambers"] = json::array();
    for (const auto& c : at.chambers) j["chambers"].push_back({{"cells", c.cells}, {"stables", c.stable_names}});
    j["speiser"] = json::array();
    for (const auto& [a, b] : at.speiser) j["speiser"].push_back(json::array({a, b}));
    j["speiser_tree"] = at.speiser_is_tree();
    j["exchange"] = json::array();
    for (const auto& e : at.exchange) j["exchange"].push_back(json::array({e.from, e.to, e.label}));
    json b = boundary_json(at);
    j["boundary"] = b["boundary"];
    j["excluded"] = b["excluded"];
    return j;
}

json boundary_json(const ChamberAtlas& at) {
    json j;
    j["schema"] = "atlas.v1";
    j["driver"] = at.driver;
    j["depth"] = at.depth;
    j["boundary"] = json::array();
    for (const auto& b : at.boundary) j["boundary"].push_back({{"name", b.name}, {"walls", b.walls}});
    j["excluded"] = json::array();
    for (const auto& e : at.excluded) j["excluded"].push_back({{"name", e.name}, {"reason", e.reason}});
    return j;
}

json orbit_json(const StabilityPoint& p, const DiskReport& r) {
    json j;
    j["schema"] = "orbit-report.v1";
    j["driver"] = p.driver->name();
    j["chamber_key"] = p.chamber_key;
    json iso = json::array(), acc = json::array();
    for (double x : r.phases.isolated) iso.push_back(num6(x));
    for (const auto& a : r.phases.accumulation)
        acc.push_back({{"phase", num6(a.phase)},
                       {"object", a.obj.str()},
                       {"from_below", a.from_below},
                       {"from_above", a.from_above}});
    j["phases"] = {{"isolated", iso}, {"accumulation", acc}};
    j["boundary"] = json::array();
    for (const auto& b : r.points) {
        json ml = json::array();
        for (const auto& x : b.massless) ml.push_back(x.str());
        json range = b.verdict == Verdict::Lax ? json::array({num6(b.psi_lo), num6(b.psi_hi)}) : json(nullptr);
        j["boundary"].push_back({{"phi", num6(b.phi)},
                                 {"verdict", verdict_name(b.verdict)},
                                 {"psi_range", range},
                                 {"support_ok", b.support_ok},
                                 {"accumulation", b.accumulation},
                                 {"massless", ml}});
    }
    j["generic_classical"] = r.generic_classical;
    j["dense"] = r.phases.dense;
    return j;
}

json walk_json(const WalkReport& r) {
    json j;
    j["schema"] = "walk-report.v1";
    j["driver"] = r.driver;
    j["trials"] = r.cfg.trials;
    j["max_steps"] = r.cfg.max_steps;
    j["seed"] = r.cfg.seed;
    j["estimates"] = json::array();
    for (const auto& e : r.estimates)
        j["estimates"].push_back({{"depth", e.depth},
                                  {"return_prob", num6(e.return_prob)},
                                  {"stderr", num6(e.stderr_)},
                                  {"returns", e.returns},
                                  {"absorbed", e.absorbed},
                                  {"unfinished", e.unfinished}});
    j["decay_exponent"] = num6(r.decay_exponent);
    j["verdict"] = walk_verdict_name(r.verdict);
    return j;
}

}  // namespace stabscan

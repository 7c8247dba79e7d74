#include "stabscan/driver.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace stabscan {
namespace {

// Spherical objects up to shift are Farey points p/q; only shift parity is kept.
struct Pt {
    long p, q;
};

Pt norm_pt(long p, long q) {
    long g = std::gcd(std::labs(p), std::labs(q));
    if (g == 0) throw DriverError("ginzburg-a2: zero Farey vector");
    p /= g;
    q /= g;
    if (q < 0 || (q == 0 && p < 0)) {
        p = -p;
        q = -q;
    }
    return {p, q};
}

std::string pt_name(Pt a) { return std::to_string(a.p) + "/" + std::to_string(a.q); }

Pt parse(const std::string& n) {
    auto k = n.find('/');
    if (k == std::string::npos) throw DriverError("ginzburg-a2: bad object " + n);
    return norm_pt(std::stol(n.substr(0, k)), std::stol(n.substr(k + 1)));
}

long cross(Pt a, Pt b) { return a.p * b.q - a.q * b.p; }

// position of x on the projective line counted counter-clockwise from a
bool rel_less(Pt a, Pt x, Pt y) {
    int bx = cross(a, x) >= 0 ? 0 : 1;
    int by = cross(a, y) >= 0 ? 0 : 1;
    if (bx != by) return bx < by;
    return cross(x, y) > 0;
}

bool same(Pt a, Pt b) { return a.p == b.p && a.q == b.q; }

KClass kappa(Pt a) { return KClass(std::labs(a.p) % 2, std::labs(a.q) % 2); }

using Tri = std::array<std::string, 3>;

Tri make_tri(std::string a, std::string b, std::string c) {
    Tri t{std::move(a), std::move(b), std::move(c)};
    std::sort(t.begin(), t.end());
    return t;
}

class GinzburgA2 final : public CategoryModel {
public:
    std::string name() const override { return "ginzburg-a2"; }
    int shift_modulus() const override { return 2; }

    KClass base_class(const std::string& n) const override { return kappa(parse(n)); }

    Heart seed_heart() const override { return {{"1/0", 0}, {"0/1", 0}}; }

    // the sign of [sub]+[quot] fixes the parity of the middle term
    ObjectId with_class(Pt r, const KClass& k) const {
        KClass kr = kappa(r);
        if (k == kr) return {pt_name(r), 0};
        if (k == KClass(-kr)) return {pt_name(r), 1};
        throw DriverError("ginzburg-a2: class mismatch at " + pt_name(r));
    }

    std::optional<ObjectId> ext(const ObjectId& sub, const ObjectId& quot) const override {
        Pt a = parse(sub.name), b = parse(quot.name);
        if (std::labs(cross(a, b)) != 1) return std::nullopt;
        Pt r1 = norm_pt(a.p + b.p, a.q + b.q);
        Pt r2 = norm_pt(a.p - b.p, a.q - b.q);
        Pt r = rel_less(a, r1, b) ? r1 : r2;
        return with_class(r, kclass(sub) + kclass(quot));
    }

    bool spherical(const std::string&) const override { return true; }

    std::string cell_key(const CellRep& c, int depth) const override {
        auto L = stable_set(c, depth);
        if (L.size() != 3) throw DriverError("ginzburg-a2: cell without three stables");
        auto t = make_tri(L[0].name, L[1].name, L[2].name);
        return "tri:" + t[0] + "," + t[1] + "," + t[2];
    }

    std::vector<HNFactor> hn_factors(const ObjectId& x, const CellRep& c, int depth) const override {
        auto L = stable_set(c, depth);
        if (locate(L, x)) return {{normalize(x), 1}};
        // objects just across one of the three walls split into the two simples of that wall
        const std::pair<ObjectId, ObjectId> walls[3] = {
            {L[2], L[0]}, {L[0].shifted(1), L[1]}, {L[1].shifted(1), L[2]}};
        for (const auto& [hi, lo] : walls) {
            auto m = ext(hi, lo);
            if (!m || m->name != x.name) continue;
            KClass sum = kclass(hi) + kclass(lo);
            int off = kclass(x) == sum ? 0 : 1;
            return {{normalize(hi.shifted(off)), 1}, {normalize(lo.shifted(off)), 1}};
        }
        throw NotExpressible("ginzburg-a2: " + x.str() + " is not adjacent to cell " + cell_key(c, depth));
    }

    std::vector<Tri> triangles(int depth) const {
        Tri seed = make_tri("1/0", "0/1", "1/1");
        std::set<Tri> seen{seed};
        std::vector<Tri> out{seed}, frontier{seed};
        for (int d = 0; d < depth; ++d) {
            std::vector<Tri> next;
            for (const auto& t : frontier) {
                for (int i = 0; i < 3; ++i) {
                    Pt a = parse(t[(i + 1) % 3]), b = parse(t[(i + 2) % 3]), c = parse(t[i]);
                    Pt r1 = norm_pt(a.p + b.p, a.q + b.q);
                    Pt r = same(r1, c) ? norm_pt(a.p - b.p, a.q - b.q) : r1;
                    Tri n = make_tri(pt_name(a), pt_name(b), pt_name(r));
                    if (seen.insert(n).second) {
                        out.push_back(n);
                        next.push_back(n);
                    }
                }
            }
            frontier = std::move(next);
        }
        return out;
    }

    std::vector<ObjectId> enumerate(int depth) const override {
        std::set<std::string> names;
        for (const auto& t : triangles(depth))
            for (const auto& n : t) names.insert(n);
        std::vector<ObjectId> out;
        for (const auto& n : names) out.push_back({n, 0});
        return out;
    }

    std::vector<TwistGenerator> twist_generators() const override {
        Mat2<std::int64_t> as, at;
        as << -1, 1, 0, 1;
        at << 1, 0, 1, -1;
        return {{"T_s", as}, {"T_t", at}};
    }

    ObjectId apply_twist(const std::string& gen, const ObjectId& x) const override {
        Pt a = parse(x.name);
        Pt r;
        if (gen == "T_s")
            r = norm_pt(a.p - a.q, a.q);
        else if (gen == "T_t")
            r = norm_pt(a.p, a.p + a.q);
        else
            throw DriverError("ginzburg-a2: unknown twist " + gen);
        KClass k = twist_matrix(gen) * kclass(x);
        return with_class(r, k);
    }

    InnerProductQ natural_ip() const override { return cartan_ip(); }
    bool hyperbolic() const override { return true; }

    std::optional<double> boundary_coordinate(const std::string& n) const override {
        Pt a = parse(n);
        if (a.q == 0) return std::numeric_limits<double>::infinity();
        return static_cast<double>(a.p) / static_cast<double>(a.q);
    }
};

}  // namespace

DriverPtr driver_ginzburg_a2() { return std::make_shared<GinzburgA2>(); }

}  // namespace stabscan

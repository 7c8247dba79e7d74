#include "stabscan/driver.hpp"

#include <algorithm>
#include <map>

namespace stabscan {
namespace {

// Objects: the spherical s and the exceptional t_n = T_s^n t_0.
bool is_s(const std::string& n) { return n == "s"; }

int t_index(const std::string& n) {
    if (n.size() < 3 || n[0] != 't' || n[1] != '_') throw DriverError("lambda210: unknown object " + n);
    return std::stoi(n.substr(2));
}

ObjectId t_obj(int n, int shift) { return {"t_" + std::to_string(n), shift}; }
ObjectId s_obj(int shift) { return {"s", shift}; }

// T_s^k
ObjectId twist_pow(const ObjectId& x, int k) {
    if (is_s(x.name)) return s_obj(x.shift - k);
    return t_obj(t_index(x.name) + k, x.shift);
}

std::vector<HNFactor> twist_all(std::vector<HNFactor> f, int k, int shift) {
    for (auto& h : f) h.obj = twist_pow(h.obj, k).shifted(shift);
    return f;
}

// HN factors in the seed triple cell (s < t_{-1} < t_0 < s[1]), decreasing phase
std::vector<HNFactor> seed_triple(const ObjectId& x) {
    if (is_s(x.name)) return {{x, 1}};
    int n = t_index(x.name), j = x.shift;
    if (n == 0 || n == -1) return {{x, 1}};
    std::vector<HNFactor> out;
    if (n >= 1) {
        out.push_back({t_obj(0, j), 1});
        for (int i = 0; i < n; ++i) out.push_back({s_obj(j - i), 1});
    } else {
        for (int i = -n - 1; i >= 1; --i) out.push_back({s_obj(j + i), 1});
        out.push_back({t_obj(-1, j), 1});
    }
    return out;
}

// seed tooth n: t_{-1}[n] < t_0 < t_{-1}[n+1]
std::vector<HNFactor> seed_tooth(const ObjectId& x, int n) {
    std::map<std::pair<int, int>, int> acc;  // (which t, shift) -> multiplicity
    auto add_s = [&](int k, int mult) {
        acc[{0, k - 1}] += mult;
        acc[{-1, k}] += mult;
    };
    if (is_s(x.name)) {
        add_s(x.shift, 1);
    } else {
        int m = t_index(x.name);
        if (m == 0 || m == -1) return {{x, 1}};
        for (const auto& f : seed_triple(x)) {
            if (is_s(f.obj.name))
                add_s(f.obj.shift, f.mult);
            else
                acc[{t_index(f.obj.name), f.obj.shift}] += f.mult;
        }
    }
    auto key = [n](const std::pair<int, int>& o) {
        return o.first == -1 ? 2.0 * o.second : 2.0 * (o.second + n) + 1.0;
    };
    std::vector<std::pair<int, int>> objs;
    for (const auto& [o, m] : acc) objs.push_back(o);
    std::sort(objs.begin(), objs.end(), [&](auto& a, auto& b) { return key(a) > key(b); });
    std::vector<HNFactor> out;
    for (const auto& o : objs) out.push_back({t_obj(o.first, o.second), acc[o]});
    return out;
}

class Lambda210 final : public CategoryModel {
public:
    std::string name() const override { return "lambda210"; }

    KClass base_class(const std::string& n) const override {
        if (is_s(n)) return KClass(1, 0);
        int m = t_index(n);
        return (m % 2 == 0) ? KClass(0, 1) : KClass(1, 1);
    }

    Heart seed_heart() const override { return {s_obj(0), t_obj(0, 0)}; }

    std::optional<ObjectId> ext(const ObjectId& sub, const ObjectId& quot) const override {
        if (is_s(sub.name) && is_s(quot.name)) return std::nullopt;
        if (is_s(sub.name)) {
            int m = t_index(quot.name);
            if (quot.shift - sub.shift == m) return t_obj(m - 1, quot.shift);
            return std::nullopt;
        }
        if (is_s(quot.name)) {
            int m = t_index(sub.name);
            if (sub.shift - quot.shift == m) return t_obj(m + 1, sub.shift);
            return std::nullopt;
        }
        int a = t_index(sub.name), b = t_index(quot.name);
        if (a == b + 1 && quot.shift == sub.shift + 1) return s_obj(quot.shift - a);
        return std::nullopt;
    }

    bool spherical(const std::string& n) const override { return is_s(n); }

    std::vector<HNFactor> hn_factors(const ObjectId& x, const CellRep& c, int depth) const override {
        auto L = stable_set(c, depth);
        if (L.size() == 3) {
            // triple cell = T_s^m(seed triple)[y], read off from t_m
            int m = -1000000, y = 0;
            for (const auto& o : L)
                if (!is_s(o.name) && t_index(o.name) > m) {
                    m = t_index(o.name);
                    y = o.shift;
                }
            auto f = seed_triple(twist_pow(x, -m).shifted(-y));
            return twist_all(f, m, y);
        }
        // tooth cell: t_{m-1}[a] < t_m[y] < t_{m-1}[a+1]
        ObjectId lo = L[0], hi = L[1];
        if (is_s(lo.name) || is_s(hi.name)) throw DriverError("lambda210: unexpected pair cell");
        int il = t_index(lo.name), ih = t_index(hi.name);
        int m, y, a;
        if (ih == il + 1) {
            m = ih;
            y = hi.shift;
            a = lo.shift;
        } else {
            m = il;
            y = lo.shift;
            a = hi.shift - 1;
        }
        auto f = seed_tooth(twist_pow(x, -m).shifted(-y), a - y);
        return twist_all(f, m, y);
    }

    std::vector<ObjectId> enumerate(int depth) const override {
        std::vector<ObjectId> out{s_obj(0)};
        for (int n = -depth; n <= depth; ++n) out.push_back(t_obj(n, 0));
        return out;
    }

    std::vector<TwistGenerator> twist_generators() const override {
        Mat2<std::int64_t> a;
        a << -1, 1, 0, 1;
        return {{"T_s", a}};
    }

    ObjectId apply_twist(const std::string& gen, const ObjectId& x) const override {
        if (gen != "T_s") throw DriverError("lambda210: unknown twist " + gen);
        return twist_pow(x, 1);
    }

    InnerProductQ natural_ip() const override { return cartan_ip(); }

    std::optional<double> boundary_coordinate(const std::string& n) const override {
        if (is_s(n)) return std::numeric_limits<double>::infinity();
        return static_cast<double>(t_index(n));
    }
};

}  // namespace

DriverPtr driver_lambda210() { return std::make_shared<Lambda210>(); }

}  // namespace stabscan

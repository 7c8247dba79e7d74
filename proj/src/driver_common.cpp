#include "stabscan/driver.hpp"

#include <algorithm>

namespace stabscan {

std::string ObjectId::str() const {
    if (shift == 0) return name;
    return name + "[" + std::to_string(shift) + "]";
}

int CategoryModel::reduce_shift(int s) const {
    int m = shift_modulus();
    if (m == 0) return s;
    return ((s % m) + m) % m;
}

ObjectId CategoryModel::normalize(ObjectId x) const {
    x.shift = reduce_shift(x.shift);
    return x;
}

KClass CategoryModel::kclass(const ObjectId& x) const {
    KClass k = base_class(x.name);
    return (x.shift % 2 == 0) ? k : KClass(-k);
}

int CategoryModel::ext1_dim(const ObjectId& x, const ObjectId& y) const {
    // Ext^1(x, y) classifies extensions 0 -> y -> ? -> x -> 0
    return ext(y, x).has_value() ? 1 : 0;
}

Mat2<std::int64_t> CategoryModel::ext_dims(const Heart& h) const {
    Mat2<std::int64_t> d;
    d << 0, ext1_dim(h.a, h.b), ext1_dim(h.b, h.a), 0;
    return d;
}

bool CategoryModel::true_wall(const Heart& h) const {
    auto d = ext_dims(h);
    return d(0, 1) != 0 || d(1, 0) != 0;
}

std::vector<ObjectId> CategoryModel::stable_set(const CellRep& c, int) const {
    std::vector<ObjectId> out{c.lo};
    if (auto x = ext(c.lo, c.hi)) out.push_back(*x);
    out.push_back(c.hi);
    return out;
}

std::string CategoryModel::cell_key(const CellRep& c, int depth) const {
    auto L = stable_set(c, depth);
    const int m = static_cast<int>(L.size());
    std::string best;
    for (int r = 0; r < m; ++r) {
        std::string s = "cell:";
        int base = L[r].shift;
        for (int j = 0; j < m; ++j) {
            int idx = r + j;
            ObjectId o = idx < m ? L[idx] : L[idx - m].shifted(1);
            s += o.name + ":" + std::to_string(reduce_shift(o.shift - base)) + (j + 1 < m ? "," : "");
        }
        if (best.empty() || s < best) best = s;
    }
    return best;
}

std::string CategoryModel::heart_key(const Heart& h) const {
    ObjectId x = h.a, y = h.b;
    if (y.name < x.name) std::swap(x, y);
    return "heart:" + x.name + ":0," + y.name + ":" + std::to_string(reduce_shift(y.shift - x.shift));
}

std::optional<std::pair<int, int>> CategoryModel::locate(const std::vector<ObjectId>& list,
                                                         const ObjectId& x) const {
    for (int j = 0; j < static_cast<int>(list.size()); ++j)
        if (list[j].name == x.name) return std::make_pair(j, reduce_shift(x.shift - list[j].shift));
    return std::nullopt;
}

std::vector<HNFactor> CategoryModel::hn_factors(const ObjectId& x, const CellRep& c, int depth) const {
    auto L = stable_set(c, depth);
    if (locate(L, x)) return {{normalize(x), 1}};
    throw NotExpressible(name() + ": no HN rule for " + x.str());
}

Heart CategoryModel::tilt(const Heart& h, const ObjectId& at, TiltDir dir, int depth) const {
    ObjectId other;
    if (normalize(at) == normalize(h.a))
        other = h.b;
    else if (normalize(at) == normalize(h.b))
        other = h.a;
    else
        throw DriverError("tilt at a non-simple object " + at.str());
    if (dir == TiltDir::Right) {
        auto L = stable_set({at, other}, depth);
        return {normalize(L[1]), normalize(at.shifted(1))};
    }
    auto L = stable_set({other, at}, depth);
    return {normalize(at.shifted(-1)), normalize(L[L.size() - 2])};
}

std::vector<CellRep> CategoryModel::windows(const CellRep& c, int depth) const {
    auto L = stable_set(c, depth);
    const int m = static_cast<int>(L.size());
    std::vector<CellRep> out;
    for (int i = 0; i < m; ++i) {
        ObjectId lo = L[i];
        ObjectId hi = i == 0 ? L[m - 1] : L[i - 1].shifted(1);
        if (!heart_simple_candidate(lo.name) || !heart_simple_candidate(hi.name)) continue;
        out.push_back({normalize(lo), normalize(hi)});
    }
    return out;
}

bool CategoryModel::tracked(const ObjectId& x, int depth) const {
    for (const auto& o : enumerate(depth))
        if (o.name == x.name) return true;
    return false;
}

Mat2<std::int64_t> CategoryModel::twist_matrix(const std::string& gen) const {
    for (const auto& g : twist_generators())
        if (g.name == gen) return g.k_matrix;
    throw DriverError(name() + ": unknown twist generator " + gen);
}

DriverPtr make_driver(const std::string& name) {
    if (name == "a2") return driver_a2();
    if (name == "ginzburg-a2" || name == "g2a2") return driver_ginzburg_a2();
    if (name == "lambda210") return driver_lambda210();
    if (name == "p1") return driver_p1();
    throw DriverError("unknown driver " + name);
}

std::vector<std::string> driver_names() { return {"a2", "ginzburg-a2", "lambda210", "p1"}; }

ChargeD twist_kaction(const CategoryModel& d, const std::string& gen, const ChargeD& z) {
    Mat2<double> a = d.twist_matrix(gen).cast<double>();
    return ChargeD(z.m * a.transpose(), z.approximate);
}

ChargeD twist_charge_pullback(const CategoryModel& d, const std::string& gen, const ChargeD& z) {
    Mat2<double> a = d.twist_matrix(gen).cast<double>();
    return ChargeD(z.m * a.inverse(), z.approximate);
}

KClass hn_class_sum(const CategoryModel& d, const std::vector<HNFactor>& f) {
    KClass s = KClass::Zero();
    for (const auto& x : f) s += x.mult * d.kclass(x.obj);
    return s;
}

}  // namespace stabscan

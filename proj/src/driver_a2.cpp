#include "stabscan/driver.hpp"

namespace stabscan {
namespace {

// Indecomposables X_n, n in Z, with X_{n+3} = X_n[1]: s = X_0, e = X_1, t = X_2.
const char* kNames[3] = {"s", "e", "t"};

int pos(const std::string& n) {
    if (n == "s") return 0;
    if (n == "e") return 1;
    if (n == "t") return 2;
    throw DriverError("a2: unknown object " + n);
}

long index_of(const ObjectId& x) { return 3L * x.shift + pos(x.name); }

ObjectId from_index(long n) {
    long q = n >= 0 ? n / 3 : -((-n + 2) / 3);
    long r = n - 3 * q;
    return {kNames[r], static_cast<int>(q)};
}

class A2 final : public CategoryModel {
public:
    std::string name() const override { return "a2"; }

    KClass base_class(const std::string& n) const override {
        switch (pos(n)) {
            case 0: return KClass(1, 0);
            case 1: return KClass(1, 1);
            default: return KClass(0, 1);
        }
    }

    Heart seed_heart() const override { return {{"s", 0}, {"t", 0}}; }

    std::optional<ObjectId> ext(const ObjectId& sub, const ObjectId& quot) const override {
        long i = index_of(sub), j = index_of(quot);
        if (i == j - 2) return from_index(j - 1);
        return std::nullopt;
    }

    bool spherical(const std::string&) const override { return false; }

    std::vector<HNFactor> hn_factors(const ObjectId& x, const CellRep& c, int depth) const override {
        auto L = stable_set(c, depth);
        if (locate(L, x)) return {{x, 1}};
        // pair cell missing x: x is the extension of its two neighbours, which split it
        long n = index_of(x);
        return {{from_index(n - 1), 1}, {from_index(n + 1), 1}};
    }

    std::vector<ObjectId> enumerate(int) const override { return {{"s", 0}, {"e", 0}, {"t", 0}}; }

    std::vector<TwistGenerator> twist_generators() const override {
        Mat2<std::int64_t> a;
        a << 1, -1, 1, 0;
        return {{"S", a}};
    }

    ObjectId apply_twist(const std::string& gen, const ObjectId& x) const override {
        if (gen != "S") throw DriverError("a2: unknown twist " + gen);
        return from_index(index_of(x) + 1);
    }

    InnerProductQ natural_ip() const override { return cartan_ip(); }
};

}  // namespace

DriverPtr driver_a2() { return std::make_shared<A2>(); }

}  // namespace stabscan

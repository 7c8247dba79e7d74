#include "stabscan/driver.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace stabscan {
namespace {

const std::string kSky = "O_x";

bool is_sky(const std::string& n) { return n == kSky; }

int degree(const std::string& n) {
    if (n.size() < 4 || n[0] != 'O' || n[1] != '(' || n.back() != ')') throw DriverError("p1: unknown object " + n);
    return std::stoi(n.substr(2, n.size() - 3));
}

ObjectId line(int k, int shift) { return {"O(" + std::to_string(k) + ")", shift}; }

// Hearts are <O(k+1)[j], O(k)[j+d]>, d >= 1 (d = 1: Kronecker quiver, d >= 2: semisimple).
struct HeartShape {
    int k;        // smaller degree
    int j;        // shift of O(k+1)
    int d;        // relative shift of O(k)
    bool big_lo;  // O(k+1) has the lower phase
};

HeartShape shape(const CellRep& c) {
    if (is_sky(c.lo.name) || is_sky(c.hi.name)) throw DriverError("p1: skyscraper is never a heart simple");
    int a = degree(c.lo.name), b = degree(c.hi.name);
    if (std::abs(a - b) != 1) throw DriverError("p1: not a heart " + c.lo.str() + "," + c.hi.str());
    const ObjectId& big = a > b ? c.lo : c.hi;
    const ObjectId& small = a > b ? c.hi : c.lo;
    HeartShape h{std::min(a, b), big.shift, small.shift - big.shift, a > b};
    if (h.d < 1) throw DriverError("p1: not a heart " + c.lo.str() + "," + c.hi.str());
    return h;
}

void push(std::vector<HNFactor>& f, const ObjectId& o, int mult) {
    if (mult > 0) f.push_back({o, mult});
}

class P1 final : public CategoryModel {
public:
    std::string name() const override { return "p1"; }

    KClass base_class(const std::string& n) const override {
        if (is_sky(n)) return KClass(0, 1);
        return KClass(1, degree(n));
    }

    Heart seed_heart() const override { return {line(0, 0), line(-1, 1)}; }

    std::optional<ObjectId> ext(const ObjectId& sub, const ObjectId& quot) const override {
        if (is_sky(sub.name) || is_sky(quot.name)) return std::nullopt;
        if (degree(sub.name) == degree(quot.name) + 1 && quot.shift == sub.shift + 1) return ObjectId{kSky, sub.shift};
        return std::nullopt;
    }

    int ext1_dim(const ObjectId& x, const ObjectId& y) const override { return ext(y, x) ? 2 : 0; }

    bool spherical(const std::string&) const override { return false; }
    bool heart_simple_candidate(const std::string& n) const override { return !is_sky(n); }
    std::optional<std::string> exclusion_reason(const std::string& n) const override {
        if (is_sky(n)) return std::string("never simple in an algebraic heart");
        return std::nullopt;
    }

    std::vector<ObjectId> stable_set(const CellRep& c, int depth) const override {
        HeartShape h = shape(c);
        if (!(h.d == 1 && h.big_lo)) return {c.lo, c.hi};
        // coh(P^1) cell, truncated: O(k+1) .. O(N), O_x, O(-N)[1] .. O(k)[1]
        int top = std::max(depth, h.k + 2), bottom = std::min(-depth, h.k - 1);
        std::vector<ObjectId> out;
        for (int n = h.k + 1; n <= top; ++n) out.push_back(line(n, h.j));
        out.push_back({kSky, h.j});
        for (int n = bottom; n <= h.k; ++n) out.push_back(line(n, h.j + 1));
        return out;
    }

    std::string cell_key(const CellRep& c, int depth) const override {
        HeartShape h = shape(c);
        if (h.d == 1 && h.big_lo) return "coh";
        return CategoryModel::cell_key(c, depth);
    }

    std::vector<HNFactor> hn_factors(const ObjectId& x, const CellRep& c, int) const override {
        HeartShape h = shape(c);
        if (h.d == 1 && h.big_lo) return {{x, 1}};
        // two-bundle chamber: O(k)[1] < O(k+1) up to shift
        const int k = h.k, i = x.shift;
        std::vector<HNFactor> f;
        if (is_sky(x.name)) {
            push(f, line(k + 1, i), 1);
            push(f, line(k, i + 1), 1);
            return f;
        }
        int m = degree(x.name);
        if (m >= k + 1) {
            push(f, line(k + 1, i), m - k);
            push(f, line(k, i + 1), m - k - 1);
        } else {
            push(f, line(k + 1, i - 1), k - m);
            push(f, line(k, i), k - m + 1);
        }
        return f;
    }

    std::vector<ObjectId> enumerate(int depth) const override {
        std::vector<ObjectId> out;
        for (int n = -depth; n <= depth; ++n) out.push_back(line(n, 0));
        out.push_back({kSky, 0});
        return out;
    }

    std::vector<TwistGenerator> twist_generators() const override {
        Mat2<std::int64_t> a;
        a << 1, 0, 1, 1;
        return {{"O(1)", a}};
    }

    ObjectId apply_twist(const std::string& gen, const ObjectId& x) const override {
        if (gen != "O(1)") throw DriverError("p1: unknown twist " + gen);
        if (is_sky(x.name)) return x;
        return line(degree(x.name) + 1, x.shift);
    }

    std::vector<Accumulation> accumulation(const CellRep& c) const override {
        HeartShape h = shape(c);
        if (h.d == 1 && h.big_lo) return {{{kSky, h.j}, true, true}};
        return {};
    }

    std::optional<double> boundary_coordinate(const std::string& n) const override {
        if (is_sky(n)) return std::numeric_limits<double>::infinity();
        return static_cast<double>(degree(n));
    }
};

}  // namespace

DriverPtr driver_p1() { return std::make_shared<P1>(); }

}  // namespace stabscan

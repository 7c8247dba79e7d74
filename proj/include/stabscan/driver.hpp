#pragma once

#include "stabscan/lattice.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabscan {

struct ObjectId {
    std::string name;
    int shift = 0;

    ObjectId shifted(int k) const { return {name, shift + k}; }
    std::string str() const;
    bool operator==(const ObjectId& o) const { return name == o.name && shift == o.shift; }
    bool operator!=(const ObjectId& o) const { return !(*this == o); }
    bool operator<(const ObjectId& o) const { return name != o.name ? name < o.name : shift < o.shift; }
};

// Two simples of an algebraic heart. Unordered as a heart; CellRep gives an order.
struct Heart {
    ObjectId a, b;
};

// A cell named by one of its hearts together with the phase order of the simples.
struct CellRep {
    ObjectId lo, hi;
    Heart heart() const { return {lo, hi}; }
    CellRep reversed() const { return {hi, lo}; }
};

struct HNFactor {
    ObjectId obj;
    int mult = 1;
};

struct TwistGenerator {
    std::string name;
    Mat2<std::int64_t> k_matrix;  // action on K-classes, column convention
};

struct Accumulation {
    ObjectId obj;  // stable object sitting at the accumulation phase
    bool from_below = false;
    bool from_above = false;
};

enum class TiltDir { Left, Right };

struct NotExpressible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DriverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class CategoryModel {
public:
    virtual ~CategoryModel() = default;

    virtual std::string name() const = 0;
    // 0: shifts are integers; 2: only the parity of a shift is tracked
    virtual int shift_modulus() const { return 0; }
    ObjectId normalize(ObjectId x) const;

    virtual KClass base_class(const std::string& name) const = 0;
    KClass kclass(const ObjectId& x) const;

    virtual Heart seed_heart() const = 0;
    // The stable middle term of the unique nonsplit extension 0 -> sub -> X -> quot -> 0
    // between the two simples of a heart, if there is one.
    virtual std::optional<ObjectId> ext(const ObjectId& sub, const ObjectId& quot) const = 0;
    // dim Ext^1(x, y) for the two simples of a heart
    virtual int ext1_dim(const ObjectId& x, const ObjectId& y) const;
    virtual bool spherical(const std::string& name) const = 0;
    Mat2<std::int64_t> ext_dims(const Heart& h) const;
    bool true_wall(const Heart& h) const;

    // classes that may be simple in some algebraic heart
    virtual bool heart_simple_candidate(const std::string&) const { return true; }
    virtual std::optional<std::string> exclusion_reason(const std::string&) const { return std::nullopt; }

    // ascending phase, all in the heart of the cell
    virtual std::vector<ObjectId> stable_set(const CellRep& c, int depth) const;
    virtual std::string cell_key(const CellRep& c, int depth) const;
    std::string heart_key(const Heart& h) const;

    // decreasing phase
    virtual std::vector<HNFactor> hn_factors(const ObjectId& x, const CellRep& c, int depth) const;

    Heart tilt(const Heart& h, const ObjectId& at, TiltDir dir, int depth) const;
    // hearts met by rotating a point of the cell through one full turn; each returned
    // CellRep is this cell written in that heart
    std::vector<CellRep> windows(const CellRep& c, int depth) const;

    virtual std::vector<ObjectId> enumerate(int depth) const = 0;
    bool tracked(const ObjectId& x, int depth) const;

    virtual std::vector<TwistGenerator> twist_generators() const = 0;
    virtual ObjectId apply_twist(const std::string& gen, const ObjectId& x) const = 0;
    Mat2<std::int64_t> twist_matrix(const std::string& gen) const;

    virtual std::vector<Accumulation> accumulation(const CellRep&) const { return {}; }
    virtual InnerProductQ natural_ip() const { return identity_ip(); }
    virtual bool hyperbolic() const { return false; }
    // position on the real line (infinity allowed) for disk layouts
    virtual std::optional<double> boundary_coordinate(const std::string&) const { return std::nullopt; }

protected:
    // position of x (mod shift) in a list, with the shift offset
    std::optional<std::pair<int, int>> locate(const std::vector<ObjectId>& list, const ObjectId& x) const;
    int reduce_shift(int s) const;
};

using DriverPtr = std::shared_ptr<const CategoryModel>;

DriverPtr driver_a2();
DriverPtr driver_ginzburg_a2();
DriverPtr driver_lambda210();
DriverPtr driver_p1();
// "a2", "ginzburg-a2", "lambda210", "p1"; throws DriverError on unknown names
DriverPtr make_driver(const std::string& name);
std::vector<std::string> driver_names();

ChargeD twist_kaction(const CategoryModel& d, const std::string& gen, const ChargeD& z);
// Z composed with the inverse K-action: the charge of the twisted stability condition
ChargeD twist_charge_pullback(const CategoryModel& d, const std::string& gen, const ChargeD& z);

KClass hn_class_sum(const CategoryModel& d, const std::vector<HNFactor>& f);

}  // namespace stabscan

#include "stabscan/json_io.hpp"
#include "stabscan/orbit.hpp"
#include "stabscan/render.hpp"
#include "stabscan/walk.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

using namespace stabscan;

namespace {

constexpr int EXIT_PRECONDITION = 2;
constexpr int EXIT_DRIVER = 3;
constexpr int EXIT_USAGE = 64;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::optional<Rational> parse_rational(std::string s) {
    static const std::regex frac(R"(([+-]?\d+)(?:/(\d+))?)");
    static const std::regex dec(R"(([+-]?)(\d*)\.(\d+))");
    std::smatch m;
    if (std::regex_match(s, m, frac)) {
        std::int64_t den = m[2].matched ? std::stoll(m[2]) : 1;
        if (den == 0) return std::nullopt;
        return Rational(std::stoll(m[1]), den);
    }
    if (std::regex_match(s, m, dec) && m[3].length() <= 12) {
        std::string digits = std::string(m[2]) + std::string(m[3]);
        std::int64_t den = 1;
        for (int i = 0; i < m[3].length(); ++i) den *= 10;
        Rational r(digits.empty() ? 0 : std::stoll(digits), den);
        return m[1] == "-" ? -r : r;
    }
    return std::nullopt;
}

struct ParsedComplex {
    std::string re = "0", im = "0";
};

// a, bi, a+bi, a-bi, i, -i
ParsedComplex split_complex(std::string s) {
    s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
    if (s.empty()) throw UsageError("empty charge value");
    ParsedComplex out;
    if (s.back() != 'i') {
        out.re = s;
        return out;
    }
    s.pop_back();
    std::size_t cut = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;)
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            cut = k;
            break;
        }
    std::string im = cut == std::string::npos ? s : s.substr(cut);
    if (cut != std::string::npos) out.re = s.substr(0, cut);
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    out.im = im;
    return out;
}

double parse_double(const std::string& s) {
    if (auto q = parse_rational(s)) return to_double(*q);
    std::size_t pos = 0;
    double x = 0;
    try {
        x = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size()) throw UsageError("cannot parse number '" + s + "'");
    return x;
}

struct ParsedCharge {
    ChargeD z;
    std::optional<ChargeQ> exact;
};

ParsedCharge parse_charge(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("--charge needs two values z1,z2");
    ParsedComplex a = split_complex(text.substr(0, comma)), b = split_complex(text.substr(comma + 1));
    ParsedCharge out;
    out.z = charge_from({parse_double(a.re), parse_double(a.im)}, {parse_double(b.re), parse_double(b.im)});
    auto ar = parse_rational(a.re), ai = parse_rational(a.im), br = parse_rational(b.re), bi = parse_rational(b.im);
    if (ar && ai && br && bi) out.exact = charge_exact(*ar, *ai, *br, *bi);
    return out;
}

DriverPtr driver_arg(const std::string& name) {
    auto names = driver_names();
    if (name != "g2a2" && std::find(names.begin(), names.end(), name) == names.end())
        throw UsageError("unknown driver '" + name + "'");
    return make_driver(name);
}

// "name" or "name[k]"
ObjectId object_arg(std::string t) {
    ObjectId o;
    auto lb = t.rfind('[');
    if (lb != std::string::npos && t.back() == ']') {
        try {
            o.shift = std::stoi(t.substr(lb + 1, t.size() - lb - 2));
        } catch (const std::exception&) {
            throw UsageError("bad shift in " + t);
        }
        t = t.substr(0, lb);
    }
    if (t.empty()) throw UsageError("empty object name");
    o.name = t;
    return o;
}

Heart heart_arg(DriverPtr d, const std::string& text) {
    if (text.empty()) return d->seed_heart();
    auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError("--heart needs two objects a,b");
    Heart h;
    h.a = object_arg(text.substr(0, comma));
    h.b = object_arg(text.substr(comma + 1));
    d->kclass(h.a);
    d->kclass(h.b);
    return h;
}

StabilityPoint point_arg(DriverPtr d, const std::string& charge, int depth, const std::string& heart = {}) {
    ParsedCharge c = parse_charge(charge);
    Heart h = heart_arg(d, heart);
    return c.exact ? make_point(d, h, *c.exact, depth) : make_point(d, h, c.z, depth);
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw PreconditionError("cannot write " + path);
    f << text;
}

std::string config_value(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ",") + config_value(x);
        return s;
    }
    return v.dump();
}

// pull --config out of argv and splice its keys in as options of the chosen subcommand
std::vector<std::string> merge_config(CLI::App& app, std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (path.empty()) return args;
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read config " + path);
    nlohmann::json cfg;
    try {
        cfg = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("bad config: ") + e.what());
    }
    if (!cfg.is_object()) throw UsageError("config must be a JSON object");
    auto subpos = std::find_if(args.begin(), args.end(), [](const std::string& a) { return a.rfind("-", 0) != 0; });
    if (subpos == args.end()) return args;
    CLI::App* sub = nullptr;
    try {
        sub = app.get_subcommand(*subpos);
    } catch (const CLI::OptionNotFound&) {
        return args;
    }
    std::vector<std::string> extra;
    for (const auto& [key, val] : cfg.items()) {
        std::string flag = "--" + key;
        if (!sub->get_option_no_throw(flag)) continue;
        bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (given) continue;
        if (val.is_boolean()) {
            if (val.get<bool>()) extra.push_back(flag);
            continue;
        }
        extra.push_back(flag);
        extra.push_back(config_value(val));
    }
    args.insert(subpos + 1, extra.begin(), extra.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabscan: stability conditions on two-simple categories"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");
    app.add_option("--config", "JSON file of option defaults");

    std::string driver, charge, style = "schematic", out, graph, depths_text, heart;
    int depth = 4, size = 600, max_labels = 64;
    std::int64_t trials = 100000, max_steps = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    bool csv = false, force = false, no_labels = false, no_speiser = false, no_exchange = false,
         no_chambers = false, no_walls = false;

    auto drivers = driver_names();
    std::string driver_help = "one of a2, ginzburg-a2, lambda210, p1";

    auto* model = app.add_subcommand("model", "static driver data (category-model.v1)");
    model->add_option("driver", driver, driver_help)->required();

    auto* analyze = app.add_subcommand("analyze", "point report (stability-point.v1)");
    analyze->add_option("driver", driver, driver_help)->required();
    analyze->add_option("--charge", charge, "Z of the two basis classes, e.g. 0+1i,-1+1i")->required();
    analyze->add_option("--depth", depth, "truncation depth")->check(CLI::PositiveNumber);
    analyze->add_option("--heart", heart, "two heart simples a,b (shift as name[k]); the seed heart by default");

    auto* chambers = app.add_subcommand("chambers", "chamber atlas (atlas.v1)");
    chambers->add_option("driver", driver, driver_help)->required();
    chambers->add_option("--depth", depth, "scan depth")->check(CLI::PositiveNumber);
    chambers->add_option("--graphviz", graph, "print a graph instead: speiser or exchange");

    auto* boundary = app.add_subcommand("boundary", "boundary points of the atlas");
    boundary->add_option("driver", driver, driver_help)->required();
    boundary->add_option("--depth", depth, "scan depth")->check(CLI::PositiveNumber);

    auto* orbit = app.add_subcommand("orbit", "orbit-closure report (orbit-report.v1)");
    orbit->add_option("driver", driver, driver_help)->required();
    orbit->add_option("--charge", charge, "Z of the two basis classes")->required();
    orbit->add_option("--depth", depth, "truncation depth")->check(CLI::PositiveNumber);
    orbit->add_option("--heart", heart, "two heart simples a,b");

    auto* walk = app.add_subcommand("walk", "random walk type (walk-report.v1)");
    walk->add_option("driver", driver, driver_help)->required();
    walk->add_option("--depth", depth, "middle depth; the walk runs depth-2, depth, depth+2")->check(CLI::PositiveNumber);
    walk->add_option("--depths", depths_text, "explicit comma separated depths");
    walk->add_option("--trials", trials, "walks per depth");
    walk->add_option("--max-steps", max_steps, "step cap per walk");
    walk->add_option("--seed", seed, "RNG seed");
    walk->add_option("--threads", threads, "worker threads, 0 for all cores");
    walk->add_flag("--csv", csv, "CSV instead of JSON");

    auto* thurston = app.add_subcommand("thurston", "normalised mass vector of an a2 point");
    thurston->add_option("--charge", charge, "Z of the two basis classes")->required();

    auto* render = app.add_subcommand("render", "SVG picture of the atlas");
    render->add_option("driver", driver, driver_help)->required();
    render->add_option("--depth", depth, "scan depth")->check(CLI::PositiveNumber);
    render->add_option("--style", style, "poincare or schematic")->check(CLI::IsMember({"poincare", "schematic"}));
    render->add_option("-o,--output", out, "output file, stdout by default");
    render->add_option("--size", size, "pixels");
    render->add_option("--max-labels", max_labels, "label budget");
    render->add_flag("--force-poincare", force, "hyperbolic layout for any driver");
    render->add_flag("--no-labels", no_labels);
    render->add_flag("--no-speiser", no_speiser);
    render->add_flag("--no-exchange", no_exchange);
    render->add_flag("--no-chambers", no_chambers);
    render->add_flag("--no-walls", no_walls);

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = merge_config(app, args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return EXIT_USAGE;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return EXIT_USAGE;
    }

    try {
        if (*thurston) driver = "a2";
        DriverPtr d = driver_arg(driver);
        if (*model) {
            std::cout << category_model_json(*d).dump(2) << "\n";
        } else if (*analyze) {
            std::cout << point_json(point_arg(d, charge, depth, heart)).dump(2) << "\n";
        } else if (*chambers) {
            ChamberAtlas at = scan(*d, depth);
            if (graph == "speiser")
                std::cout << graphviz_speiser(at);
            else if (graph == "exchange")
                std::cout << graphviz_exchange(at);
            else if (!graph.empty())
                throw UsageError("--graphviz takes speiser or exchange");
            else
                std::cout << atlas_json(at).dump(2) << "\n";
        } else if (*boundary) {
            std::cout << boundary_json(scan(*d, depth)).dump(2) << "\n";
        } else if (*orbit) {
            StabilityPoint p = point_arg(d, charge, depth, heart);
            std::cout << orbit_json(p, disk_report(p)).dump(2) << "\n";
        } else if (*walk) {
            WalkConfig cfg;
            if (!depths_text.empty()) {
                cfg.depths.clear();
                std::stringstream ss(depths_text);
                for (std::string tok; std::getline(ss, tok, ',');) cfg.depths.push_back(static_cast<int>(parse_double(tok)));
            } else if (walk->count("--depth")) {
                cfg.depths = {std::max(1, depth - 2), depth, depth + 2};
            }
            cfg.trials = trials;
            cfg.max_steps = max_steps;
            cfg.seed = seed;
            cfg.threads = threads;
            WalkReport r = estimate_type(d, cfg);
            std::cout << (csv ? walk_csv(r) : walk_json(r).dump(2) + "\n");
        } else if (*thurston) {
            StabilityPoint p = point_arg(d, charge, 4);
            MassVector v = thurston_map_a2(p);
            json j;
            j["driver"] = "a2";
            j["chamber"] = chamber_label(p);
            j["masses"] = {{"s", num6(v[0])}, {"e", num6(v[1])}, {"t", num6(v[2])}};
            j["in_region"] = thurston_region_check(v);
            std::cout << j.dump(2) << "\n";
        } else if (*render) {
            RenderSpec spec;
            spec.style = style == "poincare" ? RenderStyle::Poincare : RenderStyle::Schematic;
            spec.depth = depth;
            spec.size = size;
            spec.max_labels = max_labels;
            spec.force_poincare = force;
            spec.labels = !no_labels;
            spec.speiser = !no_speiser;
            spec.exchange = !no_exchange;
            spec.chambers = !no_chambers;
            spec.walls = !no_walls;
            RenderResult r = render_svg(scan(*d, depth), *d, spec);
            for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
            write_out(out, r.svg);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return EXIT_USAGE;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return EXIT_PRECONDITION;
    } catch (const DriverError& e) {
        std::cerr << "driver: " << e.what() << "\n";
        return EXIT_DRIVER;
    } catch (const NotExpressible& e) {
        std::cerr << "driver: " << e.what() << "\n";
        return EXIT_DRIVER;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

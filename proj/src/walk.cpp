#include "stabscan/walk.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

namespace stabscan {

TransitionMatrix transition_matrix(const ChamberAtlas& at, const CategoryModel& d, const InnerProductQ& ip) {
    TransitionMatrix tm;
    tm.rows.resize(at.cells.size());
    for (std::size_t v = 0; v < at.cells.size(); ++v) {
        auto& row = tm.rows[v];
        double total = 0.0;
        for (const auto& w : d.windows(at.cells[v].rep, at.depth)) {
            TransitionEdge e;
            auto it = at.wall_index.find(d.heart_key(w.heart()));
            if (it != at.wall_index.end()) {
                const WallInfo& wi = at.walls[it->second];
                e.wall = it->second;
                if (!wi.frontier) e.to = wi.cell_a == static_cast<int>(v) ? wi.cell_b : wi.cell_a;
            }
            e.length = wall_arc(d, w.heart(), ip).length;
            total += e.length;
            row.push_back(e);
        }
        // walls of an accumulating cell sweep half the equator; the rest is past the truncation
        if (!d.accumulation(at.cells[v].rep).empty() && total < 0.5) {
            TransitionEdge e;
            e.length = 0.5 - total;
            e.tail = true;
            total = 0.5;
            row.push_back(e);
        }
        for (auto& e : row) e.prob = total > 0 ? e.length / total : 0.0;
    }
    tm.trivial = tm.rows.empty() ||
                 std::none_of(tm.rows[0].begin(), tm.rows[0].end(), [](const TransitionEdge& e) { return e.to >= 0; });
    return tm;
}

std::string walk_verdict_name(WalkVerdict v) {
    switch (v) {
        case WalkVerdict::Recurrent: return "recurrent-signature";
        case WalkVerdict::Transient: return "transient-signature";
        case WalkVerdict::Trivial: return "trivial";
        default: return "inconclusive";
    }
}

namespace {

struct Sampler {
    std::vector<std::vector<double>> cum;
    std::vector<std::vector<int>> to;
};

Sampler make_sampler(const TransitionMatrix& tm) {
    Sampler s;
    for (const auto& row : tm.rows) {
        std::vector<double> c;
        std::vector<int> t;
        double acc = 0.0;
        for (const auto& e : row) {
            acc += e.prob;
            c.push_back(acc);
            t.push_back(e.to);
        }
        if (!c.empty()) c.back() = 1.0;
        s.cum.push_back(std::move(c));
        s.to.push_back(std::move(t));
    }
    return s;
}

// 0: returned, 1: absorbed, 2: unfinished
int run_trial(const Sampler& s, std::uint64_t seed, std::int64_t trial, std::int64_t max_steps) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int v = 0;
    for (std::int64_t step = 0; step < max_steps; ++step) {
        const auto& c = s.cum[v];
        if (c.empty()) return 1;
        double x = u(rng);
        std::size_t j = std::upper_bound(c.begin(), c.end(), x) - c.begin();
        if (j >= c.size()) j = c.size() - 1;
        int n = s.to[v][j];
        if (n < 0) return 1;
        if (n == 0) return 0;
        v = n;
    }
    return 2;
}

void check_config(WalkConfig& cfg) {
    if (const char* b = std::getenv("STABSCAN_BUDGET")) cfg.budget = std::atoll(b);
    if (cfg.trials <= 0 || cfg.max_steps <= 0 || cfg.depths.empty())
        throw PreconditionError("walk needs positive trials, max_steps and at least one depth");
    long double work = static_cast<long double>(cfg.trials) * cfg.max_steps * cfg.depths.size();
    if (work > static_cast<long double>(cfg.budget))
        throw BudgetExceeded("walk budget exceeded: trials * max_steps * depths > " + std::to_string(cfg.budget));
}

}  // namespace

WalkReport estimate_type(DriverPtr d, WalkConfig cfg) {
    check_config(cfg);
    const InnerProductQ ip = d->natural_ip();
    std::vector<TransitionMatrix> ladder;
    for (int depth : cfg.depths) ladder.push_back(transition_matrix(scan(*d, depth), *d, ip));
    WalkReport rep = estimate_type(ladder, cfg);
    rep.driver = d->name();
    return rep;
}

WalkReport estimate_type(const std::vector<TransitionMatrix>& ladder, WalkConfig cfg) {
    check_config(cfg);
    if (ladder.size() != cfg.depths.size()) throw PreconditionError("one transition matrix per depth");
    WalkReport rep;
    rep.cfg = cfg;
    unsigned nthreads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    for (std::size_t k = 0; k < ladder.size(); ++k) {
        const int depth = cfg.depths[k];
        const TransitionMatrix& tm = ladder[k];
        if (tm.trivial) {
            rep.verdict = WalkVerdict::Trivial;
            return rep;
        }
        Sampler s = make_sampler(tm);
        std::vector<std::array<std::int64_t, 3>> counts(nthreads, {0, 0, 0});
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) {
            pool.emplace_back([&, t] {
                std::int64_t lo = cfg.trials * t / nthreads, hi = cfg.trials * (t + 1) / nthreads;
                for (std::int64_t i = lo; i < hi; ++i) counts[t][run_trial(s, cfg.seed, i, cfg.max_steps)]++;
            });
        }
        for (auto& th : pool) th.join();
        DepthEstimate e;
        e.depth = depth;
        for (const auto& c : counts) {
            e.returns += c[0];
            e.absorbed += c[1];
            e.unfinished += c[2];
        }
        e.return_prob = static_cast<double>(e.returns) / cfg.trials;
        e.stderr_ = std::sqrt(e.return_prob * (1 - e.return_prob) / cfg.trials);
        rep.estimates.push_back(e);
    }
    const auto& first = rep.estimates.front();
    const auto& last = rep.estimates.back();
    bool monotone = true;
    for (std::size_t i = 1; i < rep.estimates.size(); ++i) {
        const auto& a = rep.estimates[i - 1];
        const auto& b = rep.estimates[i];
        double se = std::sqrt(a.stderr_ * a.stderr_ + b.stderr_ * b.stderr_);
        if (b.return_prob < a.return_prob - 2 * se) monotone = false;
    }
    double esc0 = std::max(1.0 - first.return_prob, 1.0 / cfg.trials);
    double esc1 = std::max(1.0 - last.return_prob, 1.0 / cfg.trials);
    rep.decay_exponent =
        first.depth == last.depth ? 0.0 : -std::log(esc1 / esc0) / std::log(double(last.depth) / first.depth);
    if (monotone && rep.decay_exponent >= 0.25)
        rep.verdict = WalkVerdict::Recurrent;
    else if (last.return_prob <= 0.9 && rep.decay_exponent < 0.25)
        rep.verdict = WalkVerdict::Transient;
    else
        rep.verdict = WalkVerdict::Inconclusive;
    return rep;
}

std::string walk_csv(const WalkReport& r) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(6);
    os << "depth,return_prob,stderr\n";
    for (const auto& e : r.estimates) os << e.depth << "," << e.return_prob << "," << e.stderr_ << "\n";
    return os.str();
}

MassVector thurston_map_a2(const StabilityPoint& p) {
    if (p.driver->name() != "a2") throw PreconditionError("the mass map is implemented for a2 only");
    MassVector m{mass_of(p, {"s", 0}), mass_of(p, {"e", 0}), mass_of(p, {"t", 0})};
    double sum = m[0] + m[1] + m[2];
    if (!(sum > 0)) throw PreconditionError("all three masses vanish");
    for (auto& x : m) x /= sum;
    return m;
}

bool thurston_region_check(const MassVector& v, double tol) {
    if (std::abs(v[0] + v[1] + v[2] - 1.0) > tol) return false;
    int zeros = 0;
    for (int i = 0; i < 3; ++i) {
        if (v[i] < -tol) return false;
        if (v[i] <= tol) ++zeros;
        if (v[i] - v[(i + 1) % 3] + v[(i + 2) % 3] < -tol) return false;
    }
    return zeros <= 1;
}

}  // namespace stabscan

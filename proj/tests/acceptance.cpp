// One line per acceptance criterion; exit status 0 only if every line passes.
#include "kcoh/verify.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>

using namespace kcoh;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Loaded {
    std::string name;
    Scenario s;
    Decomposition d;
    CRPairing p;
    OptimalBasis b;
};

std::vector<Loaded> shipped() {
    std::vector<Loaded> out;
    std::vector<std::string> files;
    for (auto& f : std::filesystem::directory_iterator(std::string(KCOH_DATA_DIR) + "/scenarios"))
        if (f.path().extension() == ".json") files.push_back(f.path().string());
    std::sort(files.begin(), files.end());
    for (auto& f : files) {
        Loaded l;
        l.s = load_scenario_file(f);
        l.name = l.s.name;
        l.d = validate(l.s);
        l.p = cr_pairing(l.s, l.d);
        l.b = build_optimal_basis(l.s, l.d, l.p);
        out.push_back(std::move(l));
    }
    return out;
}

struct Line {
    bool pass = true;
    double worst = 0;
    std::vector<std::string> failed;

    void add(const std::string& who, const CheckResult& c) {
        worst = std::max(worst, c.value);
        if (!c.pass) {
            pass = false;
            failed.push_back(who + (c.detail.empty() ? "" : " (" + c.detail + ")"));
        }
    }
};

bool report(int k, const char* what, const Line& l, double secs, double limit = 0) {
    const bool timing_ok = limit <= 0 || secs < limit;
    const bool ok = l.pass && timing_ok;
    std::printf("criterion %d: %s  %s; worst %.3e; %.2f s%s\n", k, ok ? "PASS" : "FAIL", what, l.worst, secs,
                limit > 0 ? (timing_ok ? "" : " (over time limit)") : "");
    for (auto& f : l.failed) std::printf("    failed: %s\n", f.c_str());
    return ok;
}

}  // namespace

int main() {
    bool all = true;
    const auto grid = TGrid{}.points();

    {  // 1
        auto t0 = Clock::now();
        Line l;
        const SimpleFactor algs[] = {{Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::A, 4}, {Family::B, 2},
                                     {Family::B, 3}, {Family::B, 4}, {Family::C, 2}, {Family::C, 3}, {Family::C, 4},
                                     {Family::D, 3}, {Family::D, 4}, {Family::F4, 4}};
        for (auto f : algs) {
            auto g = Algebra::build({f});
            for (auto& c : chevalley_checks(*g)) l.add(family_name(f.family) + std::to_string(f.rank) + " " + c.name, c);
        }
        all &= report(1, "Chevalley kernel identities, exact (count of violations)", l, seconds_since(t0), 10);
    }

    auto t_load = Clock::now();
    std::vector<Loaded> sc = shipped();
    const double load_secs = seconds_since(t_load);

    {  // 2
        auto t0 = Clock::now();
        Line l;
        for (auto& x : sc) {
            if (!x.s.mn_row || x.name.rfind("mn_", 0) != 0) continue;
            l.add(x.name + " m10_dim", check_m10_dim(x.s, x.d, x.p));
            l.add(x.name + " integrability", check_integrability(x.s, x.d, x.p, {-2, -1, -0.3, 0.3, 1, 2}));
        }
        all &= report(2, "catalog rows: dim m10 and integrability (membership residual)", l, seconds_since(t0) + load_secs, 20);
    }
    {  // 3
        auto t0 = Clock::now();
        Line l;
        for (auto& x : sc)
            if (x.name.rfind("mn_", 0) == 0)
                l.add(x.name, check_j_oracle(x.s, x.p, x.b, {-2, -1, -0.5, -0.25, 0.25, 0.5, 1, 2}));
        all &= report(3, "closed-form J vs eigenspace oracle (max componentwise error)", l, seconds_since(t0));
    }
    {  // 4
        auto t0 = Clock::now();
        Line l;
        for (auto& x : sc) l.add(x.name, check_orthonormal(x.b));
        all &= report(4, "optimal basis exactly B-orthonormal (violations)", l, seconds_since(t0));
    }

    std::vector<MetricProfile> prof;
    for (auto& x : sc) prof.push_back(load_profile(default_profile_json(x.s, x.d), x.s, x.d));

    {  // 5
        auto t0 = Clock::now();
        Line l;
        for (size_t k = 0; k < sc.size(); ++k)
            if (sc[k].d.alpha >= 0) l.add(sc[k].name, check_closedness(prof[k], sc[k].d, {-2, -1, -0.5, 0.5, 1, 2}));
        all &= report(5, "closedness residuals on admissible profiles, injected term detected", l, seconds_since(t0));
    }
    {  // 6
        auto t0 = Clock::now();
        Line l;
        for (size_t k = 0; k < sc.size(); ++k) {
            RicciEngine e(sc[k].s, sc[k].d, sc[k].b, prof[k]);
            l.add(sc[k].name, check_paths(e, sc[k].p, grid));
        }
        all &= report(6, "general path vs closed form vs oracle J, 25-point grid (relative error)", l, seconds_since(t0));
    }
    {  // 7
        auto t0 = Clock::now();
        Line l;
        for (size_t k = 0; k < sc.size(); ++k) {
            RicciEngine e(sc[k].s, sc[k].d, sc[k].b, prof[k]);
            l.add(sc[k].name, check_zrho(e, grid, 1e-4));
        }
        all &= report(7, "Z_rho reconstruction shape (residual / F_alpha component)", l, seconds_since(t0));
    }
    {  // 8
        auto t0 = Clock::now();
        Line l;
        for (auto& x : sc) l.add(x.name, check_convention(x.s, grid, 1e-4));
        all &= report(8, "rho unchanged under the alternate sign table (absolute)", l, seconds_since(t0));
    }
    {  // 9
        auto t0 = Clock::now();
        Line l;
        for (auto& x : sc) {
            RicciEngine e(x.s, x.d, x.b, default_profile(x.s));
            l.add(x.name, check_hprime(e, grid, 1e-4));
        }
        all &= report(9, "finite-difference h' vs block-product derivative (relative)", l, seconds_since(t0));
    }
    {  // full suite
        auto t0 = Clock::now();
        Line l;
        for (auto& r : verify_path(std::string(KCOH_DATA_DIR) + "/scenarios"))
            for (auto& c : r.checks) l.add(r.scenario + " " + c.name, c);
        const double secs = seconds_since(t0);
        const bool ok = secs < 60;
        std::printf("full suite: %s  verify over shipped scenarios in %.2f s (limit 60 s); %s\n", ok ? "PASS" : "FAIL", secs,
                    l.pass ? "all checks pass" : "some checks fail, see criteria above");
        all &= ok;
    }
    std::printf("overall: %s\n", all ? "PASS" : "FAIL");
    return all ? 0 : 1;
}

// kcoh: catalog | validate | jtable | ricci | zrho | einstein-residual | verify
#include "kcoh/verify.hpp"
#include "kcoh/numeric.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace kcoh;

namespace {

enum Exit { kOk = 0, kVerifyFail = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string scenario, profile, format = "csv", out, convention = "standard", emit_dir;
    TGrid grid;
    double dt = 1e-4;
    double c = 0;
};

// Everything a per-scenario command needs, built in dependency order.
struct Loaded {
    Scenario s;
    Decomposition d;
    CRPairing p;
    OptimalBasis b;
    MetricProfile pr;
};

SignConvention parse_convention(const std::string& s) {
    if (s == "standard") return SignConvention::Standard;
    if (s == "alternate") return SignConvention::Alternate;
    throw UsageError("unknown convention '" + s + "'");
}

Loaded load(const Options& o, bool need_profile) {
    if (o.scenario.empty()) throw UsageError("--scenario is required");
    if (!std::filesystem::exists(o.scenario)) throw UsageError("cannot open scenario " + o.scenario);
    Loaded l;
    try {
        l.s = load_scenario_file(o.scenario, parse_convention(o.convention));
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    l.d = validate(l.s);
    l.p = cr_pairing(l.s, l.d);
    l.b = build_optimal_basis(l.s, l.d, l.p);
    if (need_profile) {
        if (!o.profile.empty() && !std::filesystem::exists(o.profile))
            throw UsageError("cannot open profile " + o.profile);
        try {
            l.pr = o.profile.empty() ? load_profile(default_profile_json(l.s, l.d), l.s, l.d)
                                     : load_profile_file(o.profile, l.s, l.d);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }
    return l;
}

class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot write " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

std::string csv_row(const std::vector<std::string>& cells) {
    std::string s;
    for (size_t k = 0; k < cells.size(); ++k) s += (k ? "," : "") + cells[k];
    return s + "\n";
}

void emit_table(const Options& o, const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows,
                const std::vector<std::vector<json>>& jrows) {
    Sink out(o.out);
    if (o.format == "json") {
        json arr = json::array();
        for (auto& r : jrows) {
            json obj = json::object();
            for (size_t k = 0; k < header.size(); ++k) obj[header[k]] = r[k];
            arr.push_back(obj);
        }
        out.os() << arr.dump(2) << "\n";
        return;
    }
    out.os() << csv_row(header);
    for (auto& r : rows) out.os() << csv_row(r);
}

int cmd_catalog(const Options& o) {
    if (!o.emit_dir.empty()) {
        std::filesystem::create_directories(o.emit_dir);
        for (auto& r : catalog()) {
            json j = row_scenario_json(r);
            std::ofstream f(o.emit_dir + "/" + j["name"].get<std::string>() + ".json");
            if (!f) throw UsageError("cannot write into " + o.emit_dir);
            f << j.dump(2) << "\n";
        }
    }
    std::vector<std::string> header{"id", "g_F", "l_F", "Z_D", "modules", "pairs", "m10"};
    std::vector<std::vector<std::string>> rows;
    std::vector<std::vector<json>> jrows;
    for (auto& r : catalog()) {
        Scenario s = load_scenario(row_scenario_json(r));
        Decomposition d = validate(s);
        CRPairing p = cr_pairing(s, d);
        std::vector<std::string> row{r.id, r.gf_name, r.lf_name, r.zd_text, std::to_string(p.nmodules),
                                     std::to_string(p.pairs.size()), r.m10_text};
        rows.push_back(row);
        std::vector<json> jr(row.begin(), row.end());
        jr[4] = p.nmodules;
        jr[5] = p.pairs.size();
        jrows.push_back(jr);
    }
    if (o.format == "csv")
        for (auto& r : rows)
            for (auto& c : r)
                if (c.find(',') != std::string::npos) c = "\"" + c + "\"";
    emit_table(o, header, rows, jrows);
    return kOk;
}

int cmd_validate(const Options& o) {
    Loaded l = load(o, false);
    const Algebra& g = *l.s.alg;
    json pairs = json::array();
    for (auto& q : l.p.pairs)
        pairs.push_back({{"alpha", g.root_str(q.alpha)}, {"alpha_d", g.root_str(q.alpha_d)}, {"eps", q.eps},
                         {"ell", q.ell}, {"module", q.module}});
    json basis = json::array();
    for (int i = 1; i <= l.b.size(); ++i) {
        const BasisEntry& e = l.b.entries[i - 1];
        json j{{"i", i}, {"kind", kind_name(e.kind)}, {"F", element_to_json(e.F)}, {"G", element_to_json(e.G)}};
        if (e.kind == EntryKind::Flag) j["beta"] = g.root_str(e.beta);
        else j["ell"] = e.ell;
        basis.push_back(j);
    }
    json rep{{"scenario", l.s.name},
             {"classification", classify(l.d, l.s).str()},
             {"dim_g", g.dim()},
             {"dim_l", l.d.l_basis.size()},
             {"dim_m", l.d.m_basis.size()},
             {"dim_a", l.d.dim_a},
             {"dim_z_l", l.d.zl_basis.size()},
             {"zd_norm2", l.d.zd_norm2.str()},
             {"pairs", pairs},
             {"basis", basis}};
    if (l.d.alpha >= 0) rep["alpha"] = g.root_str(l.d.alpha);
    Sink out(o.out);
    out.os() << rep.dump(2) << "\n";
    return kOk;
}

int cmd_jtable(const Options& o) {
    Loaded l = load(o, false);
    std::vector<std::string> header{"t", "i", "kind", "ell", "jcoef", "oracle_error"};
    std::vector<std::vector<std::string>> rows;
    std::vector<std::vector<json>> jrows;
    for (double t : o.grid.points()) {
        JOracle jo(l.s, l.p, t);
        for (int i = 1; i <= l.b.size(); ++i) {
            const BasisEntry& e = l.b.entries[i - 1];
            const double jc = j_coefficient(e, t);
            Eigen::VectorXcd diff = to_vector(j_closed(l.b, i, t)) - to_vector(jo.apply(to_numeric(e.F)));
            const double err = diff.cwiseAbs().maxCoeff();
            rows.push_back({fmt_sci(t), std::to_string(i), kind_name(e.kind), std::to_string(e.ell), fmt_sci(jc), fmt_sci(err)});
            jrows.push_back({t, i, kind_name(e.kind), e.ell, jc, err});
        }
    }
    emit_table(o, header, rows, jrows);
    return kOk;
}

int cmd_ricci(const Options& o) {
    Loaded l = load(o, true);
    RicciEngine e(l.s, l.d, l.b, l.pr);
    const auto ts = o.grid.points();
    if (l.pr.c == 0) {
        double off = 0;
        for (double t : ts) off = std::max(off, GramBuilder::off_block(e.gram(t)));
        std::cerr << "block-diagonal Gram: " << (off <= 1e-12 ? "yes" : "no") << " (max off-block " << fmt_sci(off) << ")\n";
    }
    std::vector<std::string> header{"t", "i", "A", "B", "hprime", "rho"};
    std::vector<std::vector<std::string>> rows;
    std::vector<std::vector<json>> jrows;
    for (double t : ts) {
        RicciSample r;
        try {
            r = e.sample(t, o.dt);
        } catch (const std::exception& ex) {
            throw std::runtime_error("t = " + fmt_sci(t) + ": " + ex.what());
        }
        for (size_t i = 0; i < r.values.size(); ++i) {
            rows.push_back({fmt_sci(t), std::to_string(i + 1), fmt_sci(r.a_coefs[i]), fmt_sci(r.b_coefs[i]),
                            fmt_sci(r.hprime), fmt_sci(r.values[i])});
            jrows.push_back({t, i + 1, r.a_coefs[i], r.b_coefs[i], r.hprime, r.values[i]});
        }
    }
    emit_table(o, header, rows, jrows);
    return kOk;
}

int cmd_zrho(const Options& o) {
    Loaded l = load(o, true);
    RicciEngine e(l.s, l.d, l.b, l.pr);
    ZRhoFit z = reconstruct_z_rho(e, o.grid.points(), o.dt);
    std::vector<std::string> header{"t"};
    for (auto& u : z.unknowns) header.push_back(u);
    header.push_back("residual");
    std::vector<std::vector<std::string>> rows;
    std::vector<std::vector<json>> jrows;
    for (auto& s : z.samples) {
        std::vector<std::string> r{fmt_sci(s.t)};
        std::vector<json> jr{s.t};
        for (double c : s.coeffs) {
            r.push_back(fmt_sci(c));
            jr.push_back(c);
        }
        r.push_back(fmt_sci(s.residual));
        jr.push_back(s.residual);
        rows.push_back(r);
        jrows.push_back(jr);
    }
    for (auto& u : z.unobservable) std::cerr << "unobservable: " << u << " (solved as 0)\n";
    if (z.ke) std::cerr << "c_rho = " << fmt_sci(z.c_rho) << ", relative variation " << fmt_sci(z.c_variation) << "\n";
    emit_table(o, header, rows, jrows);
    return kOk;
}

int cmd_einstein(const Options& o) {
    Loaded l = load(o, true);
    RicciEngine e(l.s, l.d, l.b, l.pr);
    EinsteinResidual r = einstein_residual(e, o.c, o.grid.points(), o.dt);
    std::vector<std::string> header{"c", "orbit", "transversal", "total"};
    emit_table(o, header, {{fmt_sci(o.c), fmt_sci(r.orbit), fmt_sci(r.transversal), fmt_sci(r.total())}},
               {{o.c, r.orbit, r.transversal, r.total()}});
    return kOk;
}

int cmd_verify(const Options& o) {
    if (o.scenario.empty()) throw UsageError("--scenario is required");
    if (!std::filesystem::exists(o.scenario)) throw UsageError("cannot open " + o.scenario);
    VerifyOptions vo;
    vo.tgrid = o.grid.points();
    vo.dt = o.dt;
    if (!o.profile.empty()) {
        std::ifstream in(o.profile);
        if (!in) throw UsageError("cannot open profile " + o.profile);
        json j;
        try {
            in >> j;
        } catch (const json::exception& ex) {
            throw UsageError("malformed JSON in " + o.profile + ": " + ex.what());
        }
        vo.profile = j;
    }
    std::vector<ScenarioReport> reps;
    try {
        reps = verify_path(o.scenario, vo);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    json arr = json::array();
    bool ok = true;
    for (auto& r : reps) {
        arr.push_back(r.to_json());
        ok = ok && r.pass();
        std::cerr << (r.pass() ? "PASS " : "FAIL ") << r.scenario;
        for (auto& c : r.checks)
            if (!c.pass) std::cerr << " [" << c.name << "]";
        std::cerr << "\n";
    }
    Sink out(o.out);
    out.os() << json{{"pass", ok}, {"scenarios", arr}}.dump(2) << "\n";
    return ok ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lie-algebraic data for cohomogeneity-one Kaehler manifolds"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* c, bool grid, bool profile) {
        c->add_option("--scenario", o.scenario, "scenario JSON file (or directory for verify)");
        c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
        c->add_option("--out", o.out, "output file (default stdout)");
        c->add_option("--convention", o.convention, "structure-constant sign table")
            ->check(CLI::IsMember({"standard", "alternate"}));
        if (profile) c->add_option("--profile", o.profile, "metric profile JSON");
        if (grid) {
            c->add_option("--t-start", o.grid.start, "first t");
            c->add_option("--t-stop", o.grid.stop, "last t");
            c->add_option("--t-count", o.grid.count, "number of t samples");
            c->add_option("--t-gap", o.grid.gap, "half-width of the hole around t = 0");
            c->add_flag("!--include-zero", o.grid.exclude_zero, "plain linspace (fails if it hits 0)");
            c->add_option("--dt", o.dt, "finite-difference step for h'");
        }
    };

    auto* cat = app.add_subcommand("catalog", "list the Morimoto-Nagano rows");
    cat->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    cat->add_option("--out", o.out);
    cat->add_option("--emit-scenarios", o.emit_dir, "also write one scenario file per row into DIR");
    auto* val = app.add_subcommand("validate", "structural decomposition, CR pairing and optimal basis");
    add_common(val, false, false);
    auto* jt = app.add_subcommand("jtable", "J_t coefficients with the oracle cross-check");
    add_common(jt, true, false);
    auto* ri = app.add_subcommand("ricci", "rows (t, i, A, B, h', rho)");
    add_common(ri, true, true);
    auto* zr = app.add_subcommand("zrho", "reconstruct Z_rho(t)");
    add_common(zr, true, true);
    auto* ei = app.add_subcommand("einstein-residual", "rho - c omega on the grid");
    add_common(ei, true, true);
    ei->add_option("--c", o.c, "Einstein constant")->required();
    auto* ve = app.add_subcommand("verify", "run the invariant suite, JSON report");
    add_common(ve, true, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*cat) return cmd_catalog(o);
        if (*val) return cmd_validate(o);
        if (*jt) return cmd_jtable(o);
        if (*ri) return cmd_ricci(o);
        if (*zr) return cmd_zrho(o);
        if (*ei) return cmd_einstein(o);
        if (*ve) return cmd_verify(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ValidationError& e) {
        std::cerr << "validation failed: " << e.what() << "\n";
        return kVerifyFail;
    } catch (const CatalogError& e) {
        std::cerr << "catalog check failed: " << e.what() << "\n";
        return kVerifyFail;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << "\n";
        return kVerifyFail;
    }
    return kUsage;
}

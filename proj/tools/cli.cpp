#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "cknlab/cknlab.hpp"

namespace cknlab::cli {

using nlohmann::json;

namespace {

json point_json(int N, double a, double b) { return {{"N", N}, {"a", a}, {"b", b}}; }

json region_class_json(const RegionClass& rc) {
    json j = {{"region", to_string(rc.region)},
              {"b_fs", rc.b_fs},
              {"b_fs_star", rc.b_fs_star},
              {"a_c_star", rc.a_c_star},
              {"at_a_c_star", rc.at_a_c_star},
              {"lambda_star_branch", rc.lambda_star_branch}};
    if (!rc.condition.empty()) j["condition"] = rc.condition;
    return j;
}

json quotient_json(const QuotientReport& q) {
    return {{"value", q.value},       {"numerator", q.numerator}, {"distance_sq", q.distance_sq},
            {"norm_sq", q.norm_sq},   {"shift", q.shift},         {"c_star", q.c_star},
            {"edge_hit", q.edge_hit}, {"iterations", q.iterations}};
}

}  // namespace

int default_workers() {
    if (const char* env = std::getenv(kWorkersEnv)) {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && n > 0 && n <= 1024) return static_cast<int>(n);
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

json region_json(int N, double a, double b) {
    const CknParams P = make_params(N, a, b);
    json j = point_json(N, a, b);
    j.update(region_class_json(classify(P)));
    j["a_c"] = P.a_c;
    j["p"] = P.p;
    return j;
}

json spectrum_json(const CknParams& P, int imax, int jmax) {
    if (imax < 0 || jmax < 0) throw DomainError("spectrum: --imax and --jmax must be >= 0");
    json j = point_json(P.N, P.a, P.b);
    j["p"] = P.p;
    j["gamma"] = P.gamma;
    j["beta"] = P.beta;
    json rows = json::array();
    for (int i = 0; i <= imax; ++i)
        for (int jj = 0; jj <= jmax; ++jj) {
            const SpectralPoint sp = eigenvalue_closed(P, i, jj);
            rows.push_back({{"i", sp.i},
                            {"j", sp.j},
                            {"tau", sp.tau},
                            {"lambda", sp.lambda},
                            {"multiplicity", sp.multiplicity}});
        }
    j["eigenvalues"] = std::move(rows);
    return j;
}

json gap_json(const CknParams& P) {
    const GapReport g = spectral_gap(P);
    json j = point_json(P.N, P.a, P.b);
    j["region"] = to_string(g.region.region);
    j["lambda_star"] = g.lambda_star;
    j["winner"] = g.winner;
    j["lambda_star_branch"] = g.region.lambda_star_branch;
    j["lambda_02"] = g.lambda_02;
    j["lambda_10"] = g.lambda_10;
    j["lambda_11"] = g.lambda_11;
    j["lambda_star_q_form"] = g.lambda_star_q_form;
    j["lambda_star_alt"] = g.lambda_star_alt;
    j["lambda_star_alt_minus_q_form"] = g.lambda_star_alt - g.lambda_star_q_form;
    return j;
}

json bounds_json(const CknParams& P) {
    const BoundsReport r = bounds(P);
    json j = point_json(P.N, P.a, P.b);
    j["region"] = to_string(r.region.region);
    j["bound_two_bubble"] = r.bound_two_bubble;
    j["bound_two_bubble_alt"] = r.bound_two_bubble_alt;
    j["bound_gap"] = r.bound_gap;
    j["effective_bound"] = r.effective_bound;
    j["effective"] = r.effective;
    return j;
}

json energy_json(const CknParams& P, double s, double eps) {
    const auto space = CylinderSpace::create(P);
    json j = point_json(P.N, P.a, P.b);
    j["region"] = to_string(classify(P).region);
    j["third_order_coefficient"] = third_order_coefficient(P);
    j["third_order_coefficient_alt"] = third_order_coefficient_alt(P);
    j["a0"] = a0_coefficient(P);
    j["a0_bare"] = a0_bare(P);

    const TwoBubbleReport tb = two_bubble_quotient(P, s, space);
    j["two_bubble"] = {{"s", tb.s},
                       {"quotient", tb.quotient.value},
                       {"bound", tb.bound},
                       {"deficit", tb.deficit},
                       {"coefficient_alt", tb.coefficient_alt},
                       {"coefficient_expansion", tb.coefficient_expansion},
                       {"predicted_alt", tb.predicted_alt},
                       {"predicted_expansion", tb.predicted_expansion},
                       {"distance_ratio", tb.distance_ratio}};

    const Region reg = classify(P).region;
    const bool rho02 = reg == Region::CaseI || reg == Region::CaseII;
    const PerturbationReport pr =
        rho02 ? gap_perturbation_quotient(P, eps, space) : rho10_perturbation_quotient(P, eps, space);
    j["perturbation"] = {{"direction", rho02 ? "rho_02" : "rho_10"},
                         {"eps", pr.eps},
                         {"quotient", pr.quotient.value},
                         {"gap", pr.gap},
                         {"rho_norm_sq", pr.rho_norm_sq},
                         {"coefficient", pr.coefficient},
                         {"slope", pr.slope},
                         {"predicted", pr.predicted}};
    return j;
}

json zhat_json(const CknParams& P) {
    const ZhatReport z = zhat_report(P);
    json j = point_json(P.N, P.a, P.b);
    j["region"] = to_string(z.region);
    j["zhat_display"] = z.zhat_display;
    j["zhat_cylinder"] = z.zhat_cylinder;
    j["prefactor"] = z.prefactor;
    j["bracket_display"] = std::isfinite(z.bracket_display) ? json(z.bracket_display) : json(nullptr);
    j["B4"] = z.B4;
    j["B2"] = z.B2;
    j["B0"] = z.B0;
    j["D_N"] = z.D_N;
    j["q_star"] = z.q_star;
    j["fbar"] = z.fbar;
    j["a_c_2star"] = z.a_c_2star;
    j["a_c_3star"] = z.a_c_3star;
    j["b_fs_2star"] = z.b_fs_2star;
    j["p_equals_2"] = z.p_equals_2;
    j["negative"] = z.negative;
    return j;
}

json minimize_json(const CknParams& P, int starts, std::uint64_t seed, int workers) {
    if (starts < 0) throw DomainError("minimize: --starts must be >= 0");
    const CbeEstimate e = estimate_cbe(P, starts, seed, workers);
    json j = point_json(P.N, P.a, P.b);
    j["region"] = to_string(classify(P).region);
    j["seed"] = seed;
    j["starts"] = starts;
    j["q_best"] = e.best.value;
    j["best_recipe"] = e.best_recipe;
    j["bound"] = e.bound;
    j["bound_ok"] = e.bound_ok;
    j["best"] = quotient_json(e.best);
    json runs = json::array();
    for (std::size_t k = 0; k < e.recipes.size(); ++k) {
        json r = {{"recipe", e.recipes[k]}};
        r["q"] = std::isfinite(e.values[k]) ? json(e.values[k]) : json(nullptr);
        runs.push_back(std::move(r));
    }
    j["runs"] = std::move(runs);
    j["failures"] = e.failures;
    return j;
}

namespace {

struct Point {
    int N = 4;
    double a = 0.0;
    double b = 0.0;
};

void add_point(CLI::App* sub, Point& pt) {
    sub->add_option("N", pt.N, "dimension")->required();
    sub->add_option("a", pt.a, "weight exponent a")->required();
    sub->add_option("b", pt.b, "weight exponent b")->required();
}

void emit_error(std::ostream& err, const std::string& message, const json& extra = json::object()) {
    json j = {{"error", message}};
    j.update(extra);
    err << j.dump(2) << '\n';
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Caffarelli-Kohn-Nirenberg stability numerics", "cknlab"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    Point pt;
    int imax = 2, jmax = 2;
    double s = std::nan(""), eps = 0.01;
    int starts = 2;
    std::uint64_t seed = 1;
    std::string config;

    auto* region = app.add_subcommand("region", "classify a parameter point");
    add_point(region, pt);
    auto* spectrum = app.add_subcommand("spectrum", "closed-form linearization eigenvalues");
    add_point(spectrum, pt);
    spectrum->add_option("--imax", imax, "largest spherical degree")->capture_default_str();
    spectrum->add_option("--jmax", jmax, "largest radial index")->capture_default_str();
    auto* gap = app.add_subcommand("gap", "spectral gap lambda*");
    add_point(gap, pt);
    auto* bnd = app.add_subcommand("bounds", "upper bounds on the stability constant");
    add_point(bnd, pt);
    auto* energy = app.add_subcommand("energy", "energy expansion coefficients and test quotients");
    add_point(energy, pt);
    energy->add_option("--s", s, "two-bubble separation (default 10/gamma)");
    energy->add_option("--eps", eps, "perturbation size")->capture_default_str();
    auto* zh = app.add_subcommand("zhat", "fourth-order coefficient in the rho_10 direction");
    add_point(zh, pt);
    auto* mini = app.add_subcommand("minimize", "multi-start quotient minimization");
    add_point(mini, pt);
    mini->add_option("--starts", starts, "random starts")->capture_default_str();
    mini->add_option("--seed", seed, "base seed")->capture_default_str();
    auto* sweep = app.add_subcommand("sweep", "parameter sweep from a JSON config");
    sweep->add_option("--config", config, "sweep config file")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        emit_error(err, std::string("usage: ") + e.what(), {{"kind", "Usage"}});
        return kExitInvalid;
    }

    try {
        json j;
        if (*region) {
            j = region_json(pt.N, pt.a, pt.b);
        } else if (*spectrum) {
            j = spectrum_json(make_params(pt.N, pt.a, pt.b), imax, jmax);
        } else if (*gap) {
            j = gap_json(make_params(pt.N, pt.a, pt.b));
        } else if (*bnd) {
            j = bounds_json(make_params(pt.N, pt.a, pt.b));
        } else if (*energy) {
            const CknParams P = make_params(pt.N, pt.a, pt.b);
            j = energy_json(P, std::isnan(s) ? 10.0 / P.gamma : s, eps);
        } else if (*zh) {
            j = zhat_json(make_params(pt.N, pt.a, pt.b));
        } else if (*mini) {
            j = minimize_json(make_params(pt.N, pt.a, pt.b), starts, seed, default_workers());
        } else if (*sweep) {
            std::ifstream in(config);
            if (!in) throw DomainError("sweep: cannot read config file " + config);
            json cfg;
            try {
                cfg = json::parse(in);
            } catch (const json::exception& e) {
                throw DomainError(std::string("sweep: config is not valid JSON: ") + e.what());
            }
            const SweepSpec spec = SweepSpec::from_json(cfg);
            if (spec.output.empty() || spec.output == "-") {
                run_sweep(spec, out);
            } else {
                std::ofstream file(spec.output);
                if (!file) throw DomainError("sweep: cannot write output path " + spec.output);
                run_sweep(spec, file);
                if (!file) throw DomainError("sweep: write to " + spec.output + " failed");
                out << json{{"output", spec.output}, {"rows", spec.a.steps * spec.b.steps}}.dump(2) << '\n';
            }
            return kExitOk;
        }
        out << j.dump(2) << '\n';
        return kExitOk;
    } catch (const ParameterError& e) {
        emit_error(err, e.what(), {{"kind", e.kind()}, {"condition", e.condition()}});
        return kExitInvalid;
    } catch (const DomainError& e) {
        emit_error(err, e.what(), {{"kind", "Domain"}});
        return kExitInvalid;
    } catch (const NumericalError& e) {
        emit_error(err, e.what(), {{"kind", "Numerical"}});
        return kExitNumerical;
    } catch (const std::exception& e) {
        emit_error(err, e.what(), {{"kind", "Internal"}});
        return kExitNumerical;
    }
}

}  // namespace cknlab::cli

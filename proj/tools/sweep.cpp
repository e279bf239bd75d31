#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "cknlab/cknlab.hpp"
#include "cli.hpp"

namespace cknlab::cli {

using nlohmann::json;

namespace {

constexpr std::array<const char*, 6> kTaskOrder = {"region", "spectrum", "gap", "bounds", "zhat", "minimize"};

Range range_from_json(const json& j, const char* name) {
    if (!j.is_object()) throw DomainError(std::string("sweep: '") + name + "' must be an object");
    Range r;
    r.min = j.at("min").get<double>();
    r.max = j.value("max", r.min);
    r.steps = j.value("steps", 1);
    if (r.steps < 1) throw DomainError(std::string("sweep: ") + name + ".steps must be >= 1");
    if (!(r.min <= r.max)) throw DomainError(std::string("sweep: ") + name + " range must satisfy min <= max");
    if (!std::isfinite(r.min) || !std::isfinite(r.max))
        throw DomainError(std::string("sweep: ") + name + " range must be finite");
    return r;
}

json range_to_json(const Range& r) { return {{"min", r.min}, {"max", r.max}, {"steps", r.steps}}; }

bool has_task(const SweepSpec& spec, const char* t) {
    return std::find(spec.tasks.begin(), spec.tasks.end(), t) != spec.tasks.end();
}

std::string format_cell(const json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char c : s) {
        if (c == '"') r += '"';
        r += c;
    }
    return r + '"';
}

json compute_row(const SweepSpec& spec, int N, double a, double b) {
    json row = {{"N", N}, {"a", a}, {"b", b}};
    const RegionClass rc = classify_point(N, a, b);
    row["region"] = to_string(rc.region);
    if (rc.region == Region::Invalid || rc.region == Region::DegenerateBoundary) {
        row["condition"] = rc.condition;
        return row;
    }
    try {
        const CknParams P = make_params(N, a, b);
        if (has_task(spec, "region")) {
            row["b_fs"] = rc.b_fs;
            row["b_fs_star"] = rc.b_fs_star;
        }
        if (has_task(spec, "spectrum")) {
            row["lambda_00"] = eigenvalue_closed(P, 0, 0).lambda;
            row["lambda_01"] = eigenvalue_closed(P, 0, 1).lambda;
            row["lambda_02"] = eigenvalue_closed(P, 0, 2).lambda;
            row["lambda_10"] = eigenvalue_closed(P, 1, 0).lambda;
            row["lambda_11"] = eigenvalue_closed(P, 1, 1).lambda;
        }
        if (has_task(spec, "gap")) row["lambda_star"] = spectral_gap(P).lambda_star;
        if (has_task(spec, "bounds")) {
            const BoundsReport br = bounds(P);
            row["bound_two_bubble"] = br.bound_two_bubble;
            row["effective_bound"] = br.effective_bound;
        }
        if (has_task(spec, "zhat")) {
            const ZhatReport z = zhat_report(P);
            row["zhat_display"] = z.zhat_display;
            row["zhat_cylinder"] = z.zhat_cylinder;
        }
        if (has_task(spec, "minimize")) {
            const CbeEstimate e = estimate_cbe(P, spec.starts, spec.seed, 1);
            row["q_best"] = e.best.value;
            row["best_recipe"] = e.best_recipe;
            row["minimize_bound_ok"] = e.bound_ok;
        }
    } catch (const Error& e) {
        row["error"] = e.what();
    }
    return row;
}

}  // namespace

SweepSpec SweepSpec::from_json(const json& j) {
    try {
        SweepSpec s;
        s.N = j.at("N").get<int>();
        if (s.N < 2) throw DomainError("sweep: N must be >= 2");
        s.a = range_from_json(j.at("a"), "a");
        const json& b = j.at("b");
        s.b = range_from_json(b, "b");
        const std::string rule = b.value("rule", "absolute");
        if (rule == "absolute")
            s.b_rule = BRule::Absolute;
        else if (rule == "offset")
            s.b_rule = BRule::OffsetFromFs;
        else
            throw DomainError("sweep: b.rule must be \"absolute\" or \"offset\"");
        for (const auto& t : j.at("tasks")) {
            const std::string name = t.get<std::string>();
            if (std::find(kTaskOrder.begin(), kTaskOrder.end(), name) == kTaskOrder.end())
                throw DomainError("sweep: unknown task '" + name + "'");
            if (std::find(s.tasks.begin(), s.tasks.end(), name) == s.tasks.end()) s.tasks.push_back(name);
        }
        if (s.tasks.empty()) throw DomainError("sweep: tasks must be non-empty");
        s.output = j.value("output", std::string{});
        const std::string fmt = j.value("format", std::string{"csv"});
        if (fmt == "csv")
            s.format = Format::Csv;
        else if (fmt == "json")
            s.format = Format::Json;
        else
            throw DomainError("sweep: format must be \"csv\" or \"json\"");
        s.seed = j.value("seed", std::uint64_t{1});
        s.starts = j.value("starts", 2);
        s.workers = j.value("workers", 0);
        if (s.starts < 0 || s.workers < 0) throw DomainError("sweep: starts and workers must be >= 0");
        return s;
    } catch (const json::exception& e) {
        throw DomainError(std::string("sweep: malformed config: ") + e.what());
    }
}

json SweepSpec::to_json() const {
    json b = range_to_json(this->b);
    b["rule"] = b_rule == BRule::Absolute ? "absolute" : "offset";
    return {{"N", N},
            {"a", range_to_json(a)},
            {"b", b},
            {"tasks", tasks},
            {"output", output},
            {"format", format == Format::Csv ? "csv" : "json"},
            {"seed", seed},
            {"starts", starts},
            {"workers", workers}};
}

std::vector<std::string> sweep_columns(const SweepSpec& spec) {
    std::vector<std::string> cols = {"N", "a", "b", "region"};
    const auto add = [&](const char* task, std::initializer_list<const char*> names) {
        if (has_task(spec, task)) cols.insert(cols.end(), names.begin(), names.end());
    };
    add("region", {"b_fs", "b_fs_star"});
    add("spectrum", {"lambda_00", "lambda_01", "lambda_02", "lambda_10", "lambda_11"});
    add("gap", {"lambda_star"});
    add("bounds", {"bound_two_bubble", "effective_bound"});
    add("zhat", {"zhat_display", "zhat_cylinder"});
    add("minimize", {"q_best", "best_recipe", "minimize_bound_ok"});
    return cols;
}

void run_sweep(const SweepSpec& spec, std::ostream& out) {
    const int rows = spec.a.steps * spec.b.steps;
    std::vector<json> results(rows);
    const int workers = std::clamp(spec.workers > 0 ? spec.workers : default_workers(), 1, std::max(1, rows));

    std::atomic<int> next{0};
    const auto work = [&] {
        for (int k = next++; k < rows; k = next++) {
            const double a = spec.a.at(k / spec.b.steps);
            double b = spec.b.at(k % spec.b.steps);
            if (spec.b_rule == BRule::OffsetFromFs) b += felli_schneider(spec.N, a);
            results[k] = compute_row(spec, spec.N, a, b);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    const std::vector<std::string> cols = sweep_columns(spec);
    if (spec.format == Format::Json) {
        out << json{{"config", spec.to_json()}, {"columns", cols}, {"rows", results}}.dump(2) << '\n';
        return;
    }
    for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
    out << '\n';
    for (const json& row : results) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto it = row.find(cols[c]);
            out << (c ? "," : "") << csv_escape(it == row.end() ? std::string{} : format_cell(*it));
        }
        out << '\n';
    }
}

}  // namespace cknlab::cli

#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace cknlab::testing {

inline nlohmann::json read_golden(const std::string& name) {
    std::ifstream in(std::string(CKNLAB_GOLDEN_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing golden file " + name);
    return nlohmann::json::parse(in);
}

// Empty when equal: same keys, identical strings and integers, floats within rel_tol.
inline std::string golden_diff(const nlohmann::json& got, const nlohmann::json& want, double rel_tol = 1e-12,
                               const std::string& path = "") {
    if (want.is_object()) {
        if (!got.is_object()) return path + ": expected object";
        for (const auto& [k, v] : want.items()) {
            if (!got.contains(k)) return path + "/" + k + ": missing";
            const std::string d = golden_diff(got.at(k), v, rel_tol, path + "/" + k);
            if (!d.empty()) return d;
        }
        for (const auto& [k, v] : got.items())
            if (!want.contains(k)) return path + "/" + k + ": unexpected key";
        return {};
    }
    if (want.is_number_float() || (want.is_number() && got.is_number_float())) {
        if (!got.is_number()) return path + ": expected number";
        const double a = got.get<double>(), b = want.get<double>();
        if (std::abs(a - b) <= rel_tol * std::max(std::abs(b), 1e-300)) return {};
        std::ostringstream os;
        os.precision(17);
        os << path << ": " << a << " vs golden " << b;
        return os.str();
    }
    if (got != want) return path + ": " + got.dump() + " vs golden " + want.dump();
    return {};
}

}  // namespace cknlab::testing

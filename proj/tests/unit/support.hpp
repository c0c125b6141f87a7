#pragma once

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ccqed/ccqed.hpp"

namespace ccqed::test {

inline DerivedRates default_rates(double lf = 1.23) {
    PhysicalConfig cfg;
    cfg.Lf = lf;
    return derive_rates(cfg);
}

inline double mhz(double rad_per_s) { return to_mhz(rad_per_s); }

/// Every rate scaled by an independent log-uniform factor in [1/10, 10].
inline DerivedRates random_rates(std::mt19937_64& rng, const DerivedRates& base) {
    std::uniform_real_distribution<double> lg(-1.0, 1.0);
    auto f = [&] { return std::pow(10.0, lg(rng)); };
    DerivedRates r = base;
    r.kappa_1p = base.kappa_1p * f();
    r.kappa_2p = base.kappa_2p * f();
    r.kappa_b = base.kappa_b * f();
    r.kappa_2r = base.kappa_2r * f();
    r.v1 = base.v1 * f();
    r.v2 = base.v2 * f();
    r.gamma_perp = base.gamma_perp * f();
    return r;
}

struct GoldenRow {
    std::string name;
    double lf = 0.0;
    double value_mhz = 0.0;
    int decimals = 0;
};

inline std::vector<GoldenRow> load_reference_rates() {
    std::ifstream in(std::string(CCQED_DATA_DIR) + "/reference_rates.csv");
    std::vector<GoldenRow> rows;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string name, lf, value;
        std::getline(ss, name, ',');
        std::getline(ss, lf, ',');
        std::getline(ss, value, ',');
        const auto dot = value.find('.');
        const int decimals = dot == std::string::npos ? 0 : static_cast<int>(value.size() - dot - 1);
        rows.push_back({name, std::stod(lf), std::stod(value), decimals});
    }
    return rows;
}

}  // namespace ccqed::test

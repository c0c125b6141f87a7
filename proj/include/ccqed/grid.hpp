#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ccqed/error.hpp"

namespace ccqed {

/// Uniform detuning grid, rad/s. Endpoints inclusive.
struct DetuningGrid {
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 0;

    std::vector<double> values() const {
        if (points == 0) throw ValidationError("detuning grid must be nonempty");
        if (points == 1) return {min};
        if (!(max > min)) throw ValidationError("detuning grid must be strictly increasing");
        std::vector<double> out(points);
        const double span = max - min;
        const double n = static_cast<double>(points - 1);
        for (std::size_t i = 0; i < points; ++i) out[i] = min + span * (static_cast<double>(i) / n);
        out.back() = max;
        return out;
    }
};

inline void require_increasing(const std::vector<double>& xs, const char* what) {
    if (xs.empty()) throw ValidationError(std::string(what) + " must be nonempty");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw ValidationError(std::string(what) + " must be strictly increasing");
}

}  // namespace ccqed

#pragma once

// One-axis parameter sweeps over the link pipeline.

#include <algorithm>
#include <atomic>
#include <exception>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "rbswipt/config.hpp"
#include "rbswipt/link.hpp"

namespace rbswipt::sweep {

enum class Output { P_recv_PT, P_recv_IT, P_hat_charge, R_b, eta_SHG, status };

inline const std::vector<Output>& all_outputs() {
    static const std::vector<Output> v = {Output::P_recv_PT, Output::P_recv_IT, Output::P_hat_charge,
                                          Output::R_b, Output::eta_SHG, Output::status};
    return v;
}

inline const char* to_string(Output o) {
    switch (o) {
        case Output::P_recv_PT: return "P_recv_PT";
        case Output::P_recv_IT: return "P_recv_IT";
        case Output::P_hat_charge: return "P_hat_charge";
        case Output::R_b: return "R_b";
        case Output::eta_SHG: return "eta_SHG";
        case Output::status: return "status";
    }
    return "?";
}

inline Output parse_output(std::string_view name) {
    for (Output o : all_outputs())
        if (name == to_string(o)) return o;
    throw ConfigError("unknown output '" + std::string(name) + "'");
}

struct Axis {
    const char* name;
    config::Dimension dimension;
    const char* unit;  // SI unit used in emitted files
};

inline const std::vector<Axis>& axes() {
    static const std::vector<Axis> v = {
        {"R_M2", config::Dimension::dimensionless, ""},
        {"l_s", config::Dimension::length, "m"},
        {"d", config::Dimension::length, "m"},
        {"P_in", config::Dimension::power, "W"},
    };
    return v;
}

inline const Axis& find_axis(std::string_view name) {
    for (const auto& a : axes())
        if (name == a.name) return a;
    throw ConfigError("unknown sweep axis '" + std::string(name) + "' (expected R_M2, l_s, d or P_in)");
}

struct SweepSpec {
    std::string axis = "d";
    double min = 0.0;
    double max = 1.0;
    int steps = 2;
    std::vector<Output> outputs = all_outputs();

    void validate() const {
        find_axis(axis);
        if (steps < 2) throw ConfigError("sweep needs at least 2 steps");
        if (!(min < max)) throw ConfigError("sweep range needs min < max");
    }

    // Evenly spaced, endpoints exact.
    double value(int i) const {
        if (i == steps - 1) return max;
        return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
};

// "<axis>:<min>:<max>:<steps>", min and max may carry units ("d:10 cm:12 m:60").
inline SweepSpec parse_spec(std::string_view text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto colon = text.find(':', start);
        parts.emplace_back(text.substr(start, colon == std::string_view::npos ? colon : colon - start));
        if (colon == std::string_view::npos) break;
        start = colon + 1;
    }
    if (parts.size() != 4) throw ConfigError("sweep must look like <axis>:<min>:<max>:<steps>");
    SweepSpec s;
    s.axis = config::detail::trim(parts[0]);
    const auto& axis = find_axis(s.axis);
    s.min = config::parse_quantity(parts[1], axis.dimension);
    s.max = config::parse_quantity(parts[2], axis.dimension);
    const std::string steps = config::detail::trim(parts[3]);
    std::size_t used = 0;
    try {
        s.steps = std::stoi(steps, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != steps.size()) throw ConfigError("sweep steps must be an integer");
    s.validate();
    return s;
}

struct Row {
    double axis = 0.0;
    LinkResult result;
};

inline SystemParams with_axis(SystemParams p, const std::string& axis, double value) {
    find_axis(axis);
    config::key_table().find(axis)->second.set(p, value);
    return p;
}

inline Row evaluate_row(const SystemParams& base, const SweepSpec& spec, int i) {
    const double x = spec.value(i);
    return {x, evaluate_link(with_axis(base, spec.axis, x))};
}

// Rows come back in axis order whatever the thread count. The first failing
// row (in axis order) has its error re-thrown.
inline std::vector<Row> run_sweep(const SystemParams& base, const SweepSpec& spec, unsigned threads = 1) {
    spec.validate();
    const int n = spec.steps;
    std::vector<Row> rows(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<int> next{0};
    const auto work = [&] {
        for (int i = next++; i < n; i = next++) {
            try {
                rows[i] = evaluate_row(base, spec, i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    threads = std::clamp(threads, 1u, static_cast<unsigned>(n));
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return rows;
}

}  // namespace rbswipt::sweep

// Shared fixtures for the unit and acceptance suites: schema paths, random
// generators, and oracles that recompute results without the library.

#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <stdexcept>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "portalis/core/expr.hpp"
#include "portalis/core/model.hpp"
#include "portalis/dsl/loader.hpp"
#include "portalis/error.hpp"
#include "portalis/world.hpp"

namespace portalis::testing {

inline std::string source_path(const std::string& relative) { return std::string(PORTALIS_SOURCE_DIR) + "/" + relative; }

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// The demo world; aborts the test binary if the shipped schema is broken.
inline World demo_world() {
    World w;
    auto diagnostics = dsl::load_text(read_text(source_path("schemas/demo.pds")), w);
    if (!diagnostics.empty()) throw std::runtime_error("demo schema failed: " + diagnostics.front().message);
    return w;
}

std::vector<std::string> corpus_files();

/// Code of the portalis::Error `fn` throws; nullopt if it returns normally.
template <typename F>
std::optional<ErrorCode> error_code(F&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(xs.size()) - 1))];
}

/// Field values of one probe individual, as plain C++ values.
struct ProbeRow {
    std::string id;
    std::int64_t n = 0;
    double x = 0;
    std::string t;
    bool b = false;
};

/// A generated predicate and the same predicate as native code.
struct GeneratedPredicate {
    core::ExprPtr expr;
    std::function<bool(const ProbeRow&)> oracle;
};

/// Concept `Probe (n: integer, x: real, t: text, b: boolean)`.
core::Concept probe_concept();
ProbeRow random_row(Rng& rng, std::string id);
core::ValueMap probe_values(const ProbeRow& row);

/// Random well-typed predicate over Probe fields and the `id` builtin,
/// nested up to `depth`.
GeneratedPredicate random_probe_predicate(Rng& rng, int depth, const std::vector<std::string>& ids);

}  // namespace portalis::testing

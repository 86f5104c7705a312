#include "support.hpp"

#include <algorithm>
#include <filesystem>

namespace portalis::testing {

using namespace core;
namespace b = core::build;

std::vector<std::string> corpus_files() {
    std::vector<std::string> out;
    for (const auto& entry : std::filesystem::directory_iterator(source_path("schemas/corpus"))) {
        if (entry.path().extension() == ".pds") out.push_back(entry.path().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

Concept probe_concept() {
    return Concept{"Probe",
                   {{"n", {Kind::Integer, ""}},
                    {"x", {Kind::Real, ""}},
                    {"t", {Kind::Text, ""}},
                    {"b", {Kind::Boolean, ""}}}};
}

namespace {

const std::vector<std::string> kWords = {"", "a", "ab", "b", "ba", "zeta", "\xc3\xa9t\xc3\xa9", "Z"};

}  // namespace

ProbeRow random_row(Rng& rng, std::string id) {
    ProbeRow row;
    row.id = std::move(id);
    row.n = uniform(rng, -5, 5);
    // Halves are exact in binary, so the oracle's doubles match the engine's.
    row.x = static_cast<double>(uniform(rng, -8, 8)) / 2.0;
    row.t = pick(rng, kWords);
    row.b = coin(rng);
    return row;
}

ValueMap probe_values(const ProbeRow& row) {
    return {{"n", integer(row.n)}, {"x", real(row.x)}, {"t", text(row.t)}, {"b", boolean(row.b)}};
}

namespace {

using Oracle = std::function<bool(const ProbeRow&)>;

template <typename T>
Oracle compare(ExprOp op, std::function<T(const ProbeRow&)> lhs, T rhs) {
    return [op, lhs = std::move(lhs), rhs](const ProbeRow& r) {
        T v = lhs(r);
        switch (op) {
            case ExprOp::Eq: return v == rhs;
            case ExprOp::Ne: return v != rhs;
            case ExprOp::Lt: return v < rhs;
            case ExprOp::Le: return v <= rhs;
            case ExprOp::Gt: return v > rhs;
            default: return v >= rhs;
        }
    };
}

const std::vector<ExprOp> kComparisons = {ExprOp::Eq, ExprOp::Ne, ExprOp::Lt, ExprOp::Le, ExprOp::Gt, ExprOp::Ge};

GeneratedPredicate atom(Rng& rng, const std::vector<std::string>& ids) {
    switch (uniform(rng, 0, 6)) {
        case 0: {
            ExprOp op = pick(rng, kComparisons);
            std::int64_t c = uniform(rng, -6, 6);
            return {b::binary(op, b::field("n"), b::lit(integer(c))),
                    compare<std::int64_t>(op, [](const ProbeRow& r) { return r.n; }, c)};
        }
        case 1: {
            // Affine term over n: n * k + m.
            ExprOp op = pick(rng, kComparisons);
            std::int64_t k = uniform(rng, -3, 3), m = uniform(rng, -4, 4), c = uniform(rng, -10, 10);
            auto term = b::binary(ExprOp::Add, b::binary(ExprOp::Mul, b::field("n"), b::lit(integer(k))),
                                  b::lit(integer(m)));
            return {b::binary(op, term, b::lit(integer(c))),
                    compare<std::int64_t>(op, [k, m](const ProbeRow& r) { return r.n * k + m; }, c)};
        }
        case 2: {
            ExprOp op = pick(rng, kComparisons);
            double c = static_cast<double>(uniform(rng, -8, 8)) / 2.0;
            return {b::binary(op, b::field("x"), b::lit(real(c))),
                    compare<double>(op, [](const ProbeRow& r) { return r.x; }, c)};
        }
        case 3: {
            // Mixed integer/real comparison: n <op> x.
            ExprOp op = pick(rng, kComparisons);
            return {b::binary(op, b::field("n"), b::field("x")), [op](const ProbeRow& r) {
                        double n = static_cast<double>(r.n);
                        switch (op) {
                            case ExprOp::Eq: return n == r.x;
                            case ExprOp::Ne: return n != r.x;
                            case ExprOp::Lt: return n < r.x;
                            case ExprOp::Le: return n <= r.x;
                            case ExprOp::Gt: return n > r.x;
                            default: return n >= r.x;
                        }
                    }};
        }
        case 4: {
            ExprOp op = pick(rng, kComparisons);
            std::string c = pick(rng, kWords);
            return {b::binary(op, b::field("t"), b::lit(text(c))),
                    compare<std::string>(op, [](const ProbeRow& r) { return r.t; }, c)};
        }
        case 5: {
            bool want = coin(rng);
            return {b::eq(b::field("b"), b::truth(want)), [want](const ProbeRow& r) { return r.b == want; }};
        }
        default: {
            std::vector<Value> members;
            std::set<std::string> chosen;
            for (const auto& id : ids) {
                if (coin(rng, 0.3)) {
                    members.push_back(text(id));
                    chosen.insert(id);
                }
            }
            if (members.empty()) return {b::field("b"), [](const ProbeRow& r) { return r.b; }};
            return {b::in(b::field("id"), std::move(members)),
                    [chosen](const ProbeRow& r) { return chosen.contains(r.id); }};
        }
    }
}

}  // namespace

GeneratedPredicate random_probe_predicate(Rng& rng, int depth, const std::vector<std::string>& ids) {
    if (depth <= 0 || coin(rng, 0.3)) return atom(rng, ids);
    switch (uniform(rng, 0, 2)) {
        case 0: {
            auto l = random_probe_predicate(rng, depth - 1, ids);
            auto r = random_probe_predicate(rng, depth - 1, ids);
            return {b::and_(l.expr, r.expr),
                    [lo = l.oracle, ro = r.oracle](const ProbeRow& row) { return lo(row) && ro(row); }};
        }
        case 1: {
            auto l = random_probe_predicate(rng, depth - 1, ids);
            auto r = random_probe_predicate(rng, depth - 1, ids);
            return {b::or_(l.expr, r.expr),
                    [lo = l.oracle, ro = r.oracle](const ProbeRow& row) { return lo(row) || ro(row); }};
        }
        default: {
            auto inner = random_probe_predicate(rng, depth - 1, ids);
            return {b::not_(inner.expr), [o = inner.oracle](const ProbeRow& row) { return !o(row); }};
        }
    }
}

}  // namespace portalis::testing

#pragma once

// Certainty-factor revision calculus.
//
// A certainty factor (CF) is revised by a pair of update maps: `contradict`
// (f1) pulls a CF down on contradictory evidence, `confirm` (f2) pushes it up
// on confirmatory evidence. A piece of evidence carries a degree of support d
// and a reliability q; the revised CF is
//
//     (1 - q) * x + q * (d * f2(x) + (1 - d) * f1(x))
//
// The concrete pair used here is linear:
//
//     f2(x) = x + rate_up * (1 - x)      f1(x) = (1 - rate_down) * x
//
// which keeps every CF in [0,1], saturates at both ends and satisfies
// f2(f1(x)) - f1(f2(x)) = rate_up * rate_down >= 0 for every x.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <functional>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "minds/errors.hpp"

namespace minds {

// Absolute tolerance for non-strict inequalities evaluated in floating point.
inline constexpr double kTolerance = 1e-12;

namespace detail {

inline bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

inline double require_unit(double v, std::string_view what) {
    if (!in_unit_interval(v)) {
        throw RangeError(std::string(what) + " must lie in [0,1], got " + std::to_string(v));
    }
    return v;
}

} // namespace detail

class CertaintyFactor {
public:
    constexpr CertaintyFactor() = default;
    explicit CertaintyFactor(double value) : value_(detail::require_unit(value, "certainty factor")) {}

    constexpr double value() const { return value_; }

    friend constexpr bool operator==(CertaintyFactor, CertaintyFactor) = default;
    friend constexpr auto operator<=>(CertaintyFactor, CertaintyFactor) = default;

private:
    double value_ = 0.0;
};

struct Evidence {
    double degree_of_support = 0.0;
    double reliability = 0.0;

    Evidence() = default;
    Evidence(double d, double q)
        : degree_of_support(detail::require_unit(d, "degree of support")),
          reliability(detail::require_unit(q, "reliability")) {}

    friend bool operator==(const Evidence&, const Evidence&) = default;
};

struct PolicyParams {
    double rate_up = 0.3;
    double rate_down = 0.3;

    PolicyParams() = default;
    PolicyParams(double up, double down)
        : rate_up(detail::require_unit(up, "rate_up")), rate_down(detail::require_unit(down, "rate_down")) {}

    friend bool operator==(const PolicyParams&, const PolicyParams&) = default;
};

// f2: upward revision.
inline CertaintyFactor confirm(CertaintyFactor x, const PolicyParams& p) {
    const double v = x.value();
    return CertaintyFactor(v + p.rate_up * (1.0 - v));
}

// f1: downward revision.
inline CertaintyFactor contradict(CertaintyFactor x, const PolicyParams& p) {
    return CertaintyFactor((1.0 - p.rate_down) * x.value());
}

// Weighted average of f2 and f1 in the ratio d : (1 - d).
inline CertaintyFactor blend(CertaintyFactor x, double degree_of_support, const PolicyParams& p) {
    const double d = detail::require_unit(degree_of_support, "degree of support");
    const double v = d * confirm(x, p).value() + (1.0 - d) * contradict(x, p).value();
    return CertaintyFactor(std::clamp(v, 0.0, 1.0));
}

inline CertaintyFactor revise(CertaintyFactor x, const Evidence& e, const PolicyParams& p) {
    const double q = e.reliability;
    const double v = (1.0 - q) * x.value() + q * blend(x, e.degree_of_support, p).value();
    return CertaintyFactor(std::clamp(v, 0.0, 1.0));
}

// ---------------------------------------------------------------------------
// Policy validation

// An arbitrary (f1, f2) candidate. The ceiling/floor flags say whether the
// pair is expected to have a strict upper bound on f1 and a strict lower bound
// on f2; the identity map has neither.
struct UpdateFunctions {
    std::function<double(double)> contradict;
    std::function<double(double)> confirm;
    bool expect_ceiling = true;
    bool expect_floor = true;

    static UpdateFunctions from(const PolicyParams& p) {
        return UpdateFunctions{
            [p](double x) { return (1.0 - p.rate_down) * x; },
            [p](double x) { return x + p.rate_up * (1.0 - x); },
            p.rate_down > 0.0,
            p.rate_up > 0.0,
        };
    }
};

enum class Constraint {
    DownwardRevision,     // (a) f1(x) <= x
    UpwardRevision,       // (b) f2(x) >= x
    UnitRange,            // (c) f1, f2 map [0,1] into [0,1]
    OrderPreserving,      // (d) x < y => f(x) <= f(y)
    ContradictionCeiling, // (e) max f1 < 1
    ConfirmationFloor,    // (f) min f2 > 0
    TemporalPrecedence,   // (g) f2(f1(x)) >= f1(f2(x))
};

inline constexpr Constraint kAllConstraints[] = {
    Constraint::DownwardRevision,     Constraint::UpwardRevision,    Constraint::UnitRange,
    Constraint::OrderPreserving,      Constraint::ContradictionCeiling,
    Constraint::ConfirmationFloor,    Constraint::TemporalPrecedence,
};

inline std::string_view constraint_name(Constraint c) {
    switch (c) {
    case Constraint::DownwardRevision: return "(a) f1 revises downward";
    case Constraint::UpwardRevision: return "(b) f2 revises upward";
    case Constraint::UnitRange: return "(c) f1, f2 map [0,1] into [0,1]";
    case Constraint::OrderPreserving: return "(d) f1, f2 preserve order";
    case Constraint::ContradictionCeiling: return "(e) contradiction ceiling below 1";
    case Constraint::ConfirmationFloor: return "(f) confirmation floor above 0";
    case Constraint::TemporalPrecedence: return "(g) temporal precedence f2(f1(x)) >= f1(f2(x))";
    }
    return "?";
}

struct Violation {
    Constraint constraint;
    double witness;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::size_t grid_points = 0;
    // Range of f2(f1(x)) - f1(f2(x)) over the grid.
    double min_precedence_gap = 0.0;
    double max_precedence_gap = 0.0;

    bool ok() const { return violations.empty(); }

    std::vector<Violation> of(Constraint c) const {
        std::vector<Violation> out;
        std::copy_if(violations.begin(), violations.end(), std::back_inserter(out),
                     [c](const Violation& v) { return v.constraint == c; });
        return out;
    }
};

inline ValidationReport validate_policy(const UpdateFunctions& fns, std::size_t grid_points) {
    if (grid_points < 2) {
        throw RangeError("grid_points must be at least 2, got " + std::to_string(grid_points));
    }

    ValidationReport report;
    report.grid_points = grid_points;
    auto fail = [&](Constraint c, double x, std::string detail) {
        report.violations.push_back({c, x, std::move(detail)});
    };
    auto fmt = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };

    const double last = static_cast<double>(grid_points - 1);
    std::vector<double> xs(grid_points), f1(grid_points), f2(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        xs[i] = static_cast<double>(i) / last;
        f1[i] = fns.contradict(xs[i]);
        f2[i] = fns.confirm(xs[i]);
    }

    for (std::size_t i = 0; i < grid_points; ++i) {
        const double x = xs[i];
        if (f1[i] > x + kTolerance) {
            fail(Constraint::DownwardRevision, x, "f1(x) = " + fmt(f1[i]) + " > x");
        }
        if (f2[i] < x - kTolerance) {
            fail(Constraint::UpwardRevision, x, "f2(x) = " + fmt(f2[i]) + " < x");
        }
        if (!detail::in_unit_interval(f1[i])) {
            fail(Constraint::UnitRange, x, "f1(x) = " + fmt(f1[i]) + " outside [0,1]");
        }
        if (!detail::in_unit_interval(f2[i])) {
            fail(Constraint::UnitRange, x, "f2(x) = " + fmt(f2[i]) + " outside [0,1]");
        }
        if (i + 1 < grid_points) {
            if (f1[i] > f1[i + 1] + kTolerance) {
                fail(Constraint::OrderPreserving, x,
                     "f1(x) = " + fmt(f1[i]) + " > f1(" + fmt(xs[i + 1]) + ") = " + fmt(f1[i + 1]));
            }
            if (f2[i] > f2[i + 1] + kTolerance) {
                fail(Constraint::OrderPreserving, x,
                     "f2(x) = " + fmt(f2[i]) + " > f2(" + fmt(xs[i + 1]) + ") = " + fmt(f2[i + 1]));
            }
        }

        const double gap = fns.confirm(f1[i]) - fns.contradict(f2[i]);
        if (i == 0 || gap < report.min_precedence_gap) report.min_precedence_gap = gap;
        if (i == 0 || gap > report.max_precedence_gap) report.max_precedence_gap = gap;
        if (!(gap >= -kTolerance)) {
            fail(Constraint::TemporalPrecedence, x, "f2(f1(x)) - f1(f2(x)) = " + fmt(gap));
        }
    }

    if (fns.expect_ceiling) {
        const auto it = std::max_element(f1.begin(), f1.end());
        if (!(*it < 1.0)) {
            fail(Constraint::ContradictionCeiling, xs[static_cast<std::size_t>(it - f1.begin())],
                 "max f1 = " + fmt(*it) + " is not below 1");
        }
    }
    if (fns.expect_floor) {
        const auto it = std::min_element(f2.begin(), f2.end());
        if (!(*it > 0.0)) {
            fail(Constraint::ConfirmationFloor, xs[static_cast<std::size_t>(it - f2.begin())],
                 "min f2 = " + fmt(*it) + " is not above 0");
        }
    }
    return report;
}

inline ValidationReport validate_policy(const PolicyParams& p, std::size_t grid_points) {
    return validate_policy(UpdateFunctions::from(p), grid_points);
}

} // namespace minds

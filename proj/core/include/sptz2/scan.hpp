#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sptz2/common.hpp"
#include "sptz2/config.hpp"
#include "sptz2/error.hpp"
#include "sptz2/mps.hpp"

/// Pointwise index evaluation along a one-parameter family of tuples.
namespace sptz2::scan {

struct FamilySpec {
    std::string name;
    double s_begin = 0.0;
    double s_end   = 1.0;
    std::size_t grid = 11;
    std::function<mps::RawTuple(double)> generator;
    /// Explicit parameter values; when set they replace the uniform grid.
    std::optional<std::vector<double>> samples;

    std::vector<double> points() const;
};

struct ScanPoint {
    double s;
    bool primitive;
    bool reflection_invariant;
    std::optional<Sign> zeta;
    std::optional<double> transfer_gap; ///< 1 − |second transfer eigenvalue|
    std::optional<ErrorCode> error;     ///< why ζ is absent
    std::string message;
};

struct ScanReport {
    std::string name;
    std::vector<ScanPoint> points;
    bool constant_index;
    std::optional<double> first_failure;
};

ScanPoint evaluate(const mps::RawTuple &raw, double s, const Config &cfg = {});

/// Points may be evaluated on `jobs` threads; the report is ordered by grid index.
/// Throws InvalidSpec for malformed specs only.
ScanReport scan(const FamilySpec &family, const Config &cfg = {}, unsigned jobs = 1);

} // namespace sptz2::scan

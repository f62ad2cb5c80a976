#include "sptz2/scan.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "sptz2/reflection.hpp"

namespace sptz2::scan {

std::vector<double> FamilySpec::points() const {
    if(samples) return *samples;
    std::vector<double> out(grid);
    for(std::size_t i = 0; i < grid; ++i)
        out[i] = i + 1 == grid ? s_end : s_begin + (s_end - s_begin) * double(i) / double(grid - 1);
    return out;
}

ScanPoint evaluate(const mps::RawTuple &raw, double s, const Config &cfg) {
    ScanPoint p{s, false, false, std::nullopt, std::nullopt, std::nullopt, {}};
    try {
        auto tuple    = mps::normalize(raw, cfg);
        auto spectrum = mps::transfer_spectrum(tuple);
        p.transfer_gap = 1.0 - (spectrum.size() > 1 ? std::abs(spectrum[1]) : 0.0);
    } catch(const Error &) {
        // reported through z2_index below
    }
    try {
        auto report            = reflection::z2_index(raw, cfg);
        p.primitive            = true;
        p.reflection_invariant = true;
        p.zeta                 = report.zeta;
    } catch(const Error &e) {
        p.error   = e.code();
        p.message = e.what();
        switch(e.code()) {
            case ErrorCode::NotPrimitive:
            case ErrorCode::PrimitivityDisagreement:
            case ErrorCode::NotNormalizable:
            case ErrorCode::InvalidTuple: break;
            case ErrorCode::NotReflectionInvariant: p.primitive = true; break;
            default:
                // Failures after the primitivity stage leave the reflection question open.
                p.primitive = e.code() != ErrorCode::NotFaithful;
                p.reflection_invariant =
                    e.code() == ErrorCode::AmbiguousSymmetry || e.code() == ErrorCode::IndexInvariantViolated;
                break;
        }
    }
    return p;
}

ScanReport scan(const FamilySpec &family, const Config &cfg, unsigned jobs) {
    if(!family.generator) fail(ErrorCode::InvalidSpec, "family '" + family.name + "' has no generator");
    if(!family.samples) {
        if(family.grid < 2) fail(ErrorCode::InvalidSpec, "grid must have at least 2 points");
        if(!std::isfinite(family.s_begin) || !std::isfinite(family.s_end) || family.s_end < family.s_begin)
            fail(ErrorCode::InvalidSpec, "range must be finite with s_begin ≤ s_end");
    } else if(family.samples->empty()) {
        fail(ErrorCode::InvalidSpec, "family table is empty");
    }

    const auto grid = family.points();
    std::vector<ScanPoint> points(grid.size());
    std::vector<std::optional<Error>> generator_errors(grid.size());

    auto work = [&](std::size_t i) {
        try {
            points[i] = evaluate(family.generator(grid[i]), grid[i], cfg);
        } catch(const Error &e) {
            generator_errors[i] = e;
        }
    };

    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(grid.size())));
    if(jobs == 1) {
        for(std::size_t i = 0; i < grid.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for(unsigned t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for(std::size_t i; (i = next.fetch_add(1)) < grid.size();) work(i);
            });
        for(auto &th : pool) th.join();
    }
    for(std::size_t i = 0; i < grid.size(); ++i)
        if(generator_errors[i])
            fail(ErrorCode::InvalidSpec, "generator failed at s = " + std::to_string(grid[i]) + ": " +
                                             generator_errors[i]->what());

    ScanReport out{family.name, std::move(points), true, std::nullopt};
    for(const auto &p : out.points) {
        if(!p.zeta) {
            out.constant_index = false;
            if(!out.first_failure) out.first_failure = p.s;
        } else if(p.zeta != out.points.front().zeta) {
            out.constant_index = false;
        }
    }
    return out;
}

} // namespace sptz2::scan

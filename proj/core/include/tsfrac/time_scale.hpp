#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tsfrac {

/// Closed interval [lo, hi]; lo == hi is an isolated point.
struct Segment {
    double lo;
    double hi;

    bool is_point() const noexcept { return lo == hi; }
    friend bool operator==(const Segment&, const Segment&) = default;
};

/// One side of a point's neighbourhood. `boundary` marks the side beyond
/// min T or max T, where the dense/scattered dichotomy does not apply.
enum class Neighbourhood { dense, scattered, boundary };

struct PointClass {
    Neighbourhood right;
    Neighbourhood left;

    bool right_scattered() const noexcept { return right == Neighbourhood::scattered; }
    bool left_scattered() const noexcept { return left == Neighbourhood::scattered; }
    bool isolated() const noexcept { return right_scattered() && left_scattered(); }
    bool dense() const noexcept {
        return right == Neighbourhood::dense && left == Neighbourhood::dense;
    }
    friend bool operator==(const PointClass&, const PointClass&) = default;
};

/// A bounded time scale: a finite union of disjoint closed intervals and
/// points, stored in increasing order with strict gaps between segments.
class TimeScale {
public:
    /// Sorts, merges touching segments and validates. Throws OverlapError for
    /// overlapping or inverted segments, DegenerateScaleError when the
    /// result has min == max (or no segments were given).
    static TimeScale build(std::vector<Segment> segments);

    std::span<const Segment> segments() const noexcept { return segments_; }
    double min() const noexcept { return segments_.front().lo; }
    double max() const noexcept { return segments_.back().hi; }

    bool contains(double t) const noexcept;

    /// Forward jump inf{s > t}; sigma(max) = max.
    double sigma(double t) const;
    /// Backward jump sup{s < t}; rho(min) = min.
    double rho(double t) const;
    /// sigma(t) - t.
    double graininess(double t) const;
    PointClass classify(double t) const;

    /// Isolated points of T, i.e. its degenerate segments.
    std::vector<double> isolated_points() const;

    friend bool operator==(const TimeScale&, const TimeScale&) = default;

private:
    explicit TimeScale(std::vector<Segment> segments) : segments_(std::move(segments)) {}

    // Index of the segment containing t; throws NotInScaleError.
    std::size_t segment_of(double t) const;

    std::vector<Segment> segments_;
};

inline TimeScale build_time_scale(std::vector<Segment> segments) {
    return TimeScale::build(std::move(segments));
}

} // namespace tsfrac

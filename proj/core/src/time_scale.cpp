#include "tsfrac/time_scale.hpp"

#include <algorithm>
#include <cmath>

#include "tsfrac/errors.hpp"
#include "tsfrac/format.hpp"

namespace tsfrac {

TimeScale TimeScale::build(std::vector<Segment> segments) {
    if (segments.empty()) throw DegenerateScaleError("time scale needs at least one segment");
    for (const auto& s : segments) {
        if (!std::isfinite(s.lo) || !std::isfinite(s.hi))
            throw DegenerateScaleError("segment endpoints must be finite");
        if (s.lo > s.hi)
            throw OverlapError("inverted segment [" + format_double(s.lo) + ", " +
                               format_double(s.hi) + "]");
    }
    std::sort(segments.begin(), segments.end(),
              [](const Segment& x, const Segment& y) { return x.lo < y.lo || (x.lo == y.lo && x.hi < y.hi); });

    std::vector<Segment> merged;
    merged.reserve(segments.size());
    for (const auto& s : segments) {
        if (merged.empty()) {
            merged.push_back(s);
            continue;
        }
        Segment& last = merged.back();
        if (s.lo > last.hi) {
            merged.push_back(s);
        } else if (s.lo == last.hi) {
            // Touching (or repeated point): merge.
            last.hi = std::max(last.hi, s.hi);
        } else {
            throw OverlapError("segments [" + format_double(last.lo) + ", " + format_double(last.hi) +
                               "] and [" + format_double(s.lo) + ", " + format_double(s.hi) +
                               "] overlap");
        }
    }
    if (merged.front().lo == merged.back().hi)
        throw DegenerateScaleError("time scale has min == max");
    return TimeScale(std::move(merged));
}

bool TimeScale::contains(double t) const noexcept {
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double v, const Segment& s) { return v < s.lo; });
    if (it == segments_.begin()) return false;
    --it;
    return t <= it->hi;
}

std::size_t TimeScale::segment_of(double t) const {
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                               [](double v, const Segment& s) { return v < s.lo; });
    if (it == segments_.begin()) throw NotInScaleError(t);
    --it;
    if (t > it->hi) throw NotInScaleError(t);
    return static_cast<std::size_t>(it - segments_.begin());
}

double TimeScale::sigma(double t) const {
    const std::size_t k = segment_of(t);
    if (t < segments_[k].hi) return t;
    if (k + 1 == segments_.size()) return t;
    return segments_[k + 1].lo;
}

double TimeScale::rho(double t) const {
    const std::size_t k = segment_of(t);
    if (t > segments_[k].lo) return t;
    if (k == 0) return t;
    return segments_[k - 1].hi;
}

double TimeScale::graininess(double t) const { return sigma(t) - t; }

PointClass TimeScale::classify(double t) const {
    const double s = sigma(t);
    const double r = rho(t);
    PointClass pc{};
    if (t == max())
        pc.right = Neighbourhood::boundary;
    else
        pc.right = s > t ? Neighbourhood::scattered : Neighbourhood::dense;
    if (t == min())
        pc.left = Neighbourhood::boundary;
    else
        pc.left = r < t ? Neighbourhood::scattered : Neighbourhood::dense;
    return pc;
}

std::vector<double> TimeScale::isolated_points() const {
    std::vector<double> out;
    for (const auto& s : segments_)
        if (s.is_point()) out.push_back(s.lo);
    return out;
}

} // namespace tsfrac

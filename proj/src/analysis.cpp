#include "biphoton/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "biphoton/errors.hpp"

namespace biphoton {

namespace {

struct RefinedExtremum {
    double x = 0.0;
    double value = 0.0;
};

// Quadratic through (x[i-1],y[i-1]), (x[i],y[i]), (x[i+1],y[i+1]) on a uniform
// grid; returns the parabola's vertex. Falls back to the node when the three
// points are collinear.
RefinedExtremum refine(const Pattern& p, std::size_t i) {
    const double dx = p.axis.dx();
    const double ym = p.density[i - 1];
    const double y0 = p.density[i];
    const double yp = p.density[i + 1];
    const double denom = ym - 2.0 * y0 + yp;
    RefinedExtremum e;
    if (std::abs(denom) < 1e-30 * std::max({std::abs(ym), std::abs(y0), std::abs(yp), 1e-300})) {
        e.x = p.axis.node(i);
        e.value = y0;
        return e;
    }
    const double shift = 0.5 * (ym - yp) / denom;  // in units of dx, within (-1, 1)
    e.x = p.axis.node(i) + shift * dx;
    e.value = y0 - 0.25 * (ym - yp) * shift;
    return e;
}

// Interior local maxima above the height threshold, refined to sub-node accuracy.
// Plateau points (ties with a neighbor) count only at their left edge.
std::vector<RefinedExtremum> find_peaks(const Pattern& p, double threshold) {
    std::vector<RefinedExtremum> peaks;
    const std::size_t n = p.density.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double y = p.density[i];
        if (y < threshold) continue;
        if (y > p.density[i - 1] && y >= p.density[i + 1]) {
            peaks.push_back(refine(p, i));
        }
    }
    return peaks;
}

// Refined minimum between two node indices (exclusive), or the lower endpoint
// value if the stretch is monotone.
RefinedExtremum valley_between(const Pattern& p, std::size_t lo, std::size_t hi) {
    std::size_t arg = lo;
    double best = p.density[lo];
    for (std::size_t i = lo; i <= hi; ++i) {
        if (p.density[i] < best) {
            best = p.density[i];
            arg = i;
        }
    }
    if (arg > 0 && arg + 1 < p.density.size() && p.density[arg - 1] >= best &&
        p.density[arg + 1] >= best) {
        return refine(p, arg);
    }
    RefinedExtremum e;
    e.x = p.axis.node(arg);
    e.value = best;
    return e;
}

}  // namespace

FringeMetrics fringe_metrics(const Pattern& pattern) {
    const double peak_value = *std::max_element(pattern.density.begin(), pattern.density.end());
    if (peak_value <= 0.0) {
        fail(ErrorCode::TooFewPeaks, "pattern '" + pattern.label + "' has no positive values");
    }
    const auto peaks = find_peaks(pattern, 0.05 * peak_value);
    if (peaks.size() < 3) {
        fail(ErrorCode::TooFewPeaks, "pattern '" + pattern.label + "' has " +
                                         std::to_string(peaks.size()) +
                                         " usable peaks, need at least 3");
    }

    // The five fringes nearest the origin carry the spacing estimate; the
    // envelope suppresses and broadens the outer ones.
    std::vector<std::size_t> order(peaks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(peaks[a].x) < std::abs(peaks[b].x);
    });
    const std::size_t n_used = std::min<std::size_t>(5, peaks.size());
    std::vector<double> xs(n_used);
    for (std::size_t i = 0; i < n_used; ++i) xs[i] = peaks[order[i]].x;
    std::sort(xs.begin(), xs.end());

    FringeMetrics m;
    m.n_peaks_used = static_cast<int>(n_used);
    double gap_sum = 0.0;
    for (std::size_t i = 0; i + 1 < n_used; ++i) gap_sum += xs[i + 1] - xs[i];
    m.spacing = gap_sum / static_cast<double>(n_used - 1);
    if (m.spacing < 10.0 * pattern.axis.dx()) {
        fail(ErrorCode::UnderResolved,
             "fringe spacing " + std::to_string(m.spacing) + " is under 10 grid steps (dx = " +
                 std::to_string(pattern.axis.dx()) + ")");
    }

    // Visibility: central peak against the deepest point on each side of it,
    // looking half a fringe outwards.
    const RefinedExtremum& central = peaks[order[0]];
    const std::size_t c = pattern.axis.nearest_node(central.x);
    const auto half = static_cast<std::size_t>(std::ceil(0.75 * m.spacing / pattern.axis.dx()));
    const std::size_t left_lo = c > half ? c - half : 0;
    const std::size_t right_hi = std::min(c + half, pattern.density.size() - 1);
    const RefinedExtremum left = valley_between(pattern, left_lo, c);
    const RefinedExtremum right = valley_between(pattern, c, right_hi);
    const double vmin = std::max(0.0, std::min(left.value, right.value));
    const double vmax = central.value;
    m.visibility = (vmax - vmin) / (vmax + vmin);

    // Envelope half-width: outermost peak still above half the central height.
    double hw = 0.0;
    for (const auto& p : peaks) {
        if (p.value >= 0.5 * central.value) hw = std::max(hw, std::abs(p.x - central.x));
    }
    m.envelope_halfwidth = hw;
    return m;
}

PatternComparison compare(const Pattern& reference, const Pattern& candidate) {
    if (!(reference.axis == candidate.axis)) {
        fail(ErrorCode::GridMismatch, "patterns '" + reference.label + "' and '" +
                                          candidate.label + "' live on different axes");
    }
    const double dx = reference.axis.dx();
    double diff2 = 0.0;
    double ref2 = 0.0;
    double max_abs = 0.0;
    double ref_peak = 0.0;
    for (std::size_t i = 0; i < reference.density.size(); ++i) {
        const double d = candidate.density[i] - reference.density[i];
        diff2 += d * d * dx;
        ref2 += reference.density[i] * reference.density[i] * dx;
        max_abs = std::max(max_abs, std::abs(d));
        ref_peak = std::max(ref_peak, reference.density[i]);
    }
    if (ref2 <= 0.0 || ref_peak <= 0.0) {
        fail(ErrorCode::ZeroNorm, "reference pattern '" + reference.label + "' is empty");
    }
    PatternComparison cmp;
    cmp.l2_err = std::sqrt(diff2) / std::sqrt(ref2);
    cmp.max_err = max_abs / ref_peak;
    const FringeMetrics fr = fringe_metrics(reference);
    const FringeMetrics fc = fringe_metrics(candidate);
    cmp.spacing_ratio = fc.spacing / fr.spacing;
    cmp.visibility_diff = fc.visibility - fr.visibility;
    return cmp;
}

double l2_error_window(const Pattern& reference, const Pattern& candidate, double x_lo,
                       double x_hi) {
    if (!(reference.axis == candidate.axis)) {
        fail(ErrorCode::GridMismatch, "patterns '" + reference.label + "' and '" +
                                          candidate.label + "' live on different axes");
    }
    const double dx = reference.axis.dx();
    double diff2 = 0.0;
    double ref2 = 0.0;
    for (std::size_t i = 0; i < reference.density.size(); ++i) {
        const double x = reference.axis.node(i);
        if (x < x_lo || x > x_hi) continue;
        const double d = candidate.density[i] - reference.density[i];
        diff2 += d * d * dx;
        ref2 += reference.density[i] * reference.density[i] * dx;
    }
    if (ref2 <= 0.0) {
        fail(ErrorCode::ZeroNorm, "reference pattern '" + reference.label +
                                      "' carries no mass in the requested window");
    }
    return std::sqrt(diff2) / std::sqrt(ref2);
}

double mirror_asymmetry(const Pattern& pattern) {
    const Grid1D& g = pattern.axis;
    const double peak = *std::max_element(pattern.density.begin(), pattern.density.end());
    if (peak <= 0.0) {
        fail(ErrorCode::ZeroNorm, "pattern '" + pattern.label + "' is empty");
    }
    double worst = 0.0;
    bool paired = false;
    for (std::size_t i = 0; i < g.n; ++i) {
        const double x = g.node(i);
        if (x <= 0.0) continue;
        if (-x < g.x_min) continue;  // unpaired edge node of a zero-centered grid
        const std::size_t j = g.nearest_node(-x);
        if (std::abs(g.node(j) + x) > 1e-9 * g.dx()) continue;
        paired = true;
        worst = std::max(worst, std::abs(pattern.density[i] - pattern.density[j]));
    }
    if (!paired) {
        fail(ErrorCode::GridMismatch,
             "axis of pattern '" + pattern.label + "' has no mirror node pairs");
    }
    return worst / peak;
}

}  // namespace biphoton

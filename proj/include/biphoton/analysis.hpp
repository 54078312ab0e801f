#pragma once

#include "biphoton/pattern.hpp"

namespace biphoton {

/// Summary of an interference pattern's fringe structure.
struct FringeMetrics {
    double spacing = 0.0;             ///< mean peak-to-peak distance near the center
    double visibility = 0.0;          ///< (max - min) / (max + min) around the central fringe
    int n_peaks_used = 0;             ///< peaks entering the spacing estimate
    double envelope_halfwidth = 0.0;  ///< distance from center to where peak heights drop below half
};

/// Locate fringes in a density pattern and measure their spacing and contrast.
///
/// Peaks are local maxima above 5% of the global maximum, refined to sub-node
/// accuracy by a quadratic fit through the three nodes around each maximum.
/// Spacing is the mean separation of adjacent refined peaks among the five
/// fringes nearest x = 0 (fewer if the pattern has fewer). Visibility compares
/// the central peak against the refined minima on either side of it.
///
/// Throws TooFewPeaks if fewer than 3 peaks survive the threshold, and
/// UnderResolved if the measured spacing is below 10 grid steps.
FringeMetrics fringe_metrics(const Pattern& pattern);

/// Pointwise difference measures between two densities on the same axis.
struct PatternComparison {
    double l2_err = 0.0;           ///< sqrt(integral of squared diff) / sqrt(integral of first squared)
    double max_err = 0.0;          ///< max abs diff relative to the first pattern's peak
    double spacing_ratio = 0.0;    ///< fringe spacing of second / first
    double visibility_diff = 0.0;  ///< visibility of second - first
};

/// Compare two patterns node by node and by their fringe metrics.
/// Throws GridMismatch unless both live on the same axis.
PatternComparison compare(const Pattern& reference, const Pattern& candidate);

/// l2_err restricted to nodes with x_lo <= x <= x_hi, densities taken as given
/// (no re-normalization inside the window). Throws GridMismatch on different
/// axes and ZeroNorm if the reference carries no mass in the window.
double l2_error_window(const Pattern& reference, const Pattern& candidate, double x_lo,
                       double x_hi);

/// Largest |p(x) - p(-x)| over mirror node pairs, relative to the peak density.
/// Requires an axis whose nodes come in +/- pairs; the one unpaired edge node of
/// a zero-centered grid is skipped.
double mirror_asymmetry(const Pattern& pattern);

}  // namespace biphoton

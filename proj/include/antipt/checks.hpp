#pragma once

#include <string>
#include <vector>

#include "antipt/dynamics.hpp"

namespace antipt::checks {

/// One analytic self-check. `criterion` groups checks under the numbered
/// acceptance criteria (0 marks supplementary invariants).
struct CheckResult {
    std::string name;
    int criterion = 0;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string note;
};

/// The full self-check suite behind the `validate` command and the
/// acceptance runner. Every tolerance is pinned here.
std::vector<CheckResult> run_all();

/// Interior local maxima of one atom's population trace, with parabolic
/// refinement of the peak times.
struct PeakTrain {
    std::vector<double> times;
    std::vector<double> values;
};

PeakTrain population_peaks(const std::vector<dynamics::TrajectoryPoint>& trajectory,
                           int atom_index, double t_min = 0.0);

/// Angular frequency of the population oscillation from the mean peak
/// spacing; throws when fewer than three peaks are present.
double oscillation_frequency(const PeakTrain& peaks);

}  // namespace antipt::checks

// Kink (dark-soliton) counting in the sign-changing component phi2.

#ifndef BICO_KINKS_HPP
#define BICO_KINKS_HPP

#include "bico/model.hpp"

#include <string>
#include <vector>

namespace bico {

enum class ThresholdReference {
    /// relative_threshold * max|phi1|
    MaxPhi1,
    /// absolute_value
    AbsoluteValue,
};

struct KinkThresholdConfig {
    double relative_threshold = 0.05;
    ThresholdReference reference = ThresholdReference::MaxPhi1;
    double absolute_value = 0.02;

    void validate() const;
};

struct KinkReport {
    int count = 0;
    std::vector<double> positions;
    double threshold_used = 0;
    /// Odd count for an odd profile, even count for an even one.
    bool parity_consistent = true;
};

/// Counts sign changes of phi2 whose flanking lobes both reach the threshold.
///
/// Lobes are the intervals between consecutive sign changes, the outermost
/// ones extending to the grid ends. Sub-threshold lobes are removed one at a
/// time, smallest first: an edge lobe is fused with its only neighbour (one
/// crossing removed), an interior lobe is fused with both neighbours (both
/// flanking crossings removed). Values below 10 eps max|phi2| carry no sign.
KinkReport count_kinks(const FieldPair<double>& fields, Parity parity,
                       const KinkThresholdConfig& cfg = {});

}  // namespace bico

#endif  // BICO_KINKS_HPP

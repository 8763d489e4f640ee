#include "bico/kinks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bico {

void KinkThresholdConfig::validate() const {
    if (!(relative_threshold > 0 && relative_threshold < 1))
        throw std::invalid_argument("relative kink threshold must lie in (0, 1)");
    if (reference == ThresholdReference::AbsoluteValue && !(absolute_value > 0))
        throw std::invalid_argument("absolute kink threshold must be positive");
}

namespace {

struct Crossing {
    double position;
};

struct Lobe {
    double peak;
};

}  // namespace

KinkReport count_kinks(const FieldPair<double>& fields, Parity parity,
                       const KinkThresholdConfig& cfg) {
    cfg.validate();
    fields.check();
    KinkReport report;
    report.threshold_used = cfg.reference == ThresholdReference::MaxPhi1
                                ? cfg.relative_threshold * fields.phi1.cwiseAbs().maxCoeff()
                                : cfg.absolute_value;

    const Field<double>& p = fields.phi2;
    const Field<double>& x = fields.grid.nodes();
    const double peak2 = p.cwiseAbs().maxCoeff();
    const double floor = 10 * std::numeric_limits<double>::epsilon() * peak2;

    std::vector<Crossing> crossings;
    std::vector<Lobe> lobes;
    if (peak2 > 0) {
        int last_sign = 0;
        Eigen::Index last_idx = -1;
        double lobe_peak = 0;
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            const double v = p[i];
            if (std::abs(v) <= floor) continue;
            const int s = v > 0 ? 1 : -1;
            if (last_sign != 0 && s != last_sign) {
                const double x0 = x[last_idx], x1 = x[i];
                const double v0 = p[last_idx];
                crossings.push_back({x0 + (x1 - x0) * v0 / (v0 - v)});
                lobes.push_back({lobe_peak});
                lobe_peak = 0;
            }
            lobe_peak = std::max(lobe_peak, std::abs(v));
            last_sign = s;
            last_idx = i;
        }
        lobes.push_back({lobe_peak});
    }

    // lobes.size() == crossings.size() + 1; crossing k separates lobes k and k+1.
    const double theta = report.threshold_used;
    while (!crossings.empty()) {
        std::size_t weakest = 0;
        for (std::size_t k = 1; k < lobes.size(); ++k)
            if (lobes[k].peak < lobes[weakest].peak) weakest = k;
        if (lobes[weakest].peak >= theta) break;

        const std::size_t last = lobes.size() - 1;
        if (weakest == 0) {
            lobes[1].peak = std::max(lobes[0].peak, lobes[1].peak);
            lobes.erase(lobes.begin());
            crossings.erase(crossings.begin());
        } else if (weakest == last) {
            lobes[last - 1].peak = std::max(lobes[last - 1].peak, lobes[last].peak);
            lobes.pop_back();
            crossings.pop_back();
        } else {
            const double fused =
                std::max({lobes[weakest - 1].peak, lobes[weakest].peak, lobes[weakest + 1].peak});
            lobes[weakest - 1].peak = fused;
            lobes.erase(lobes.begin() + static_cast<std::ptrdiff_t>(weakest),
                        lobes.begin() + static_cast<std::ptrdiff_t>(weakest) + 2);
            crossings.erase(crossings.begin() + static_cast<std::ptrdiff_t>(weakest) - 1,
                            crossings.begin() + static_cast<std::ptrdiff_t>(weakest) + 1);
        }
    }

    report.count = static_cast<int>(crossings.size());
    report.positions.reserve(crossings.size());
    for (const auto& c : crossings) report.positions.push_back(c.position);
    report.parity_consistent = (report.count % 2 == 1) == (parity == Parity::Odd);
    return report;
}

}  // namespace bico

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tmac/catalog.hpp"
#include "tmac/elicitation.hpp"
#include "tmac/model.hpp"
#include "tmac/ratio.hpp"

namespace tmac {

struct Band {
    Ratio lower;  // inclusive; the upper bound is the next band's lower (or +inf)
    std::string label;

    bool operator==(const Band&) const = default;
};

/// Contiguous bands covering [0, +inf), ordered from lowest to highest risk.
class BandConfig {
public:
    /// Throws tmac::Error unless bands are non-empty, start at 0, strictly
    /// increase, and have unique non-empty labels.
    explicit BandConfig(std::vector<Band> bands, std::optional<Ratio> display_max = std::nullopt);

    /// Low [0, 1/2), Moderate [1/2, 1), High [1, +inf); display max 2.
    static BandConfig standard();

    /// Parses `label:lower,label:lower,...` with exact decimal bounds, e.g.
    /// "low:0,moderate:0.5,high:1". The display maximum is not set.
    static BandConfig parse(std::string_view spec);

    const std::vector<Band>& bands() const { return bands_; }
    const std::optional<Ratio>& display_max() const { return display_max_; }

    /// Index of the band containing `value`. Throws for negative values.
    std::size_t index_of(const Ratio& value) const;

    /// Canonical text identifying the configuration, e.g. "Low:0,Moderate:1/2,High:1;max=2".
    std::string fingerprint() const;

    bool operator==(const BandConfig&) const = default;

private:
    std::vector<Band> bands_;
    std::optional<Ratio> display_max_;
};

struct BandAssignment {
    std::string label;
    std::size_t rank = 0;             // position in the config, 0 = lowest
    bool exceeds_display_max = false;  // warning condition, not an error
};

/// Likelihood L = Tn / Ti. Throws tmac::Error when Ti == 0 or Tn > Ti.
Ratio likelihood(std::size_t occurrences, std::size_t interactions);

/// PIA = L x C.
Ratio pia(const Ratio& likelihood, int consequence);

/// Band of the exact (unrounded) value.
BandAssignment band_of(const Ratio& pia, const BandConfig& config);

inline constexpr int kLikelihoodDecimals = 5;
inline constexpr int kPiaDecimals = 2;

struct ThreatAssessment {
    std::string threat;
    std::string name;
    int initial_consequence = 0;
    int aggravated = 0;
    int consequence = 0;
    std::size_t occurrences = 0;
    Ratio likelihood;
    Ratio pia;
    std::string likelihood_display;
    std::string pia_display;
    std::string band;
    std::size_t band_rank = 0;
    bool exceeds_display_max = false;

    bool operator==(const ThreatAssessment&) const = default;
};

struct AssessmentReport {
    std::string model_name;
    std::size_t interactions = 0;  // Ti
    std::vector<ThreatAssessment> rows;  // catalog order
    std::string band_fingerprint;
    std::vector<std::string> band_labels;  // lowest to highest
    std::optional<std::string> scenario;
    std::optional<std::string> scope;

    bool operator==(const AssessmentReport&) const = default;
};

struct AssessOptions {
    std::string model_name;
    std::optional<std::string> scenario;
    /// Restrict to one group: Ti becomes the group size, Tn the scoped count.
    std::optional<std::string> scope;
    const Model* model = nullptr;  // required when scope is set
};

/// One row per catalog threat with Tn, C, L, PIA and band.
AssessmentReport assess(const MarkingMatrix& matrix, const Catalog& catalog, const BandConfig& config,
                        const AssessOptions& options = {});

/// Rows by exact PIA descending, ties by ascending threat id.
std::vector<ThreatAssessment> prioritize(const AssessmentReport& report);

}  // namespace tmac

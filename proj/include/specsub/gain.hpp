#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specsub/dsp.hpp"
#include "specsub/errors.hpp"

namespace specsub {

// The subtraction gain formulas, in the order they were introduced.
// x = |X| (current frame magnitude), p = smoothed magnitude, n = noise
// estimate, lambda = spectral floor, a = per-bin subtraction multiplier
// (alpha, times delta when the band table is active):
//   BasicClamped  max(0, 1 - a n/x)
//   Floored       max(lambda, 1 - a n/x)
//   V441          max(lambda n/x, 1 - a n/x)
//   V442          max(lambda p/x, 1 - a n/x)
//   V443          max(lambda n/p, 1 - a n/p)
//   V444          max(lambda, 1 - a n/p)
//   PowerDomain   max(lambda, sqrt(max(0, 1 - (a n/x)^2)))
//   Full          Floored with a = delta(F) * alpha(SNR)
// Every result is clamped to <= 1.
enum class GainVariant {
    BasicClamped,
    Floored,
    V441,
    V442,
    V443,
    V444,
    PowerDomain,
    Full,
};

GainVariant gain_variant_from_name(const std::string& name);
std::string gain_variant_name(GainVariant variant);

// Oversubtraction factor selection. In fixed mode the factor is a constant
// (20 for the unsmoothed chain, 2 once magnitude/power smoothing is on); in
// SNR-adaptive mode it follows the piecewise-linear clamp(5 - 0.2*snr, 1, 5).
struct AlphaSchedule {
    enum class Mode { Fixed, SnrAdaptive };
    Mode mode = Mode::Fixed;
    // Unset means "pick the conventional default for the smoothing mode".
    std::optional<double> alpha_fixed;

    static constexpr double kAlphaMax = 5.0;
    static constexpr double kAlphaMin = 1.0;
    static constexpr double kSlopePerDb = 4.0 / 20.0;

    double resolve_fixed(bool smoothing_on) const {
        return alpha_fixed.value_or(smoothing_on ? 2.0 : 20.0);
    }
};

// clamp(5 - (4/20) snr_db, 1, 5)
double alpha_of_snr(double snr_db);

// Frequency-dependent subtraction multiplier delta(F). Bands are keyed by
// their lower edge in Hz; the factor of the last edge <= F applies. The
// default table is 1.0 below 1 kHz, 2.5 in [1, 2) kHz, 1.5 from 2 kHz up.
class DeltaTable {
public:
    struct Band {
        double edge_hz;
        double factor;
    };

    DeltaTable() : DeltaTable(paper_default().bands_) {}
    explicit DeltaTable(std::vector<Band> bands);

    static DeltaTable paper_default();
    // Parses "f1:d1,f2:d2,..." as used by the --delta flag.
    static DeltaTable parse(const std::string& text);

    double factor_at_hz(double frequency_hz) const;
    const std::vector<Band>& bands() const { return bands_; }

private:
    std::vector<Band> bands_;
};

// Band factor for a half-spectrum bin: F = bin * sample_rate / frame_len.
double delta_of_bin(const DeltaTable& table, std::size_t bin, double sample_rate,
                    std::size_t frame_len);

enum class SnrGranularity { Frame, Bin };

// Per-bin SNR in dB. Bin granularity: 20 log10(x/n) per bin. Frame
// granularity: 10 log10(sum x^2 / sum n^2) replicated to every bin.
// Zero magnitudes are floored to keep the result finite.
std::vector<double> frame_snr_db(std::span<const double> signal_mag,
                                 std::span<const double> noise_mag,
                                 SnrGranularity granularity);

struct GainParams {
    GainVariant variant = GainVariant::Floored;
    double lambda = 0.05;  // spectral floor, in [0, 1]
    AlphaSchedule alpha;
    bool delta_enabled = false;
    DeltaTable delta;
    SnrGranularity snr_granularity = SnrGranularity::Bin;
    double sample_rate = 8000.0;
    bool smoothing_on = false;  // selects the fixed-alpha default (20 vs 2)

    void validate() const;
};

// Per-bin gains over the half spectrum (x, p, n all of length N/2+1).
// The SNR feeding the adaptive alpha is measured from the raw frame
// magnitudes against the unscaled noise estimate. Bins whose noise estimate
// is zero get gain 1; bins whose gain denominator is zero get the floor.
std::vector<double> compute_gain(const GainParams& params,
                                 std::span<const double> x_mag,
                                 std::span<const double> p_mag,
                                 std::span<const double> n_mag);

// Y(w) = X(w) g(w) over bins 0..N/2, with the upper half rebuilt from
// conjugate symmetry so only half the frame is ever processed. Gains are
// real and nonnegative, so bin phases are untouched.
Spectrum apply_gain(const Spectrum& spectrum, std::span<const double> gains);

}  // namespace specsub

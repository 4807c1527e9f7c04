#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specsub/dsp.hpp"
#include "specsub/errors.hpp"
#include "specsub/framing.hpp"
#include "specsub/gain.hpp"
#include "specsub/noise_estimator.hpp"

namespace specsub {

// Everything the enhancer can be told to do, with the source defaults.
struct EnhancerConfig {
    std::size_t frame_len = 256;
    std::size_t oversampling = 4;
    double sample_rate = 8000.0;
    WindowKind window = WindowKind::SqrtHammingPaper;

    GainVariant gain = GainVariant::Floored;
    double lambda = 0.05;
    AlphaSchedule alpha;                  // fixed 20 / 2 unless SNR-adaptive
    bool delta_enabled = false;
    DeltaTable delta;                     // paper default bands
    SnrGranularity snr_granularity = SnrGranularity::Bin;

    SmoothingMode smoothing = SmoothingMode::Off;
    // 0 picks the conventional default: 30 ms for magnitude, 25 ms for power.
    double tau_ms = 0.0;
    bool noise_smoothing = false;
    double noise_tau_ms = 50.0;

    double mmse_segment_seconds = 2.5;
    bool residual_reduction = false;

    // basic: the plain subtraction chain (floored gain, alpha 20, lambda 0.05,
    //   sqrt-hamming-paper window, no smoothing).
    // paper-final: power smoothing (25 ms), noise smoothing, gain v443,
    //   SNR-adaptive alpha, delta bands, sqrt-hanning window.
    // all-on: paper-final plus residual reduction.
    static EnhancerConfig preset(const std::string& name);

    FrameConfig frame_config() const {
        return FrameConfig{frame_len, oversampling, sample_rate};
    }
    std::size_t increment() const { return frame_len / oversampling; }
    std::size_t bin_count() const { return frame_len / 2 + 1; }
    std::size_t segment_len_frames() const;
    std::size_t latency_samples() const {
        return pipeline_latency(frame_config(), residual_reduction);
    }
    double resolved_tau_ms() const;

    void validate() const;
};

// Per-increment result: warm-up increments carry no samples.
using IncrementResult = std::optional<std::vector<double>>;

// Three-frame magnitude minimum for the middle frame (the musical-noise
// residual rule). Phase handling is the caller's business.
std::vector<double> residual_reduce(std::span<const double> prev_mag,
                                    std::span<const double> mid_mag,
                                    std::span<const double> next_mag);

// The streaming enhancer: framing -> FFT -> smoothing -> minimum statistics
// -> gain -> optional residual reduction -> IFFT -> overlap-add. One instance
// per stream; calls must be sequential.
class Enhancer {
public:
    explicit Enhancer(EnhancerConfig config);

    // Feeds exactly one increment (I samples). Returns the next I output
    // samples, or nullopt while the pipeline is still warming up. The emitted
    // stream aligns one-to-one with the input stream once warm-up increments
    // are dropped; keeping them as zeros instead yields the raw synthesis
    // stream, which lags the input by latency_samples().
    IncrementResult process_increment(std::span<const double> samples);

    // Arbitrary-length convenience feed; buffers a partial increment.
    std::vector<double> process(std::span<const double> samples);

    // Zero-pads to drain buffered content so that the total number of output
    // samples equals the total number of input samples. Further input is
    // rejected; flushing twice returns nothing.
    std::vector<double> flush();

    const EnhancerConfig& config() const { return config_; }
    std::size_t latency_samples() const { return config_.latency_samples(); }
    std::size_t warmup_increment_count() const { return warmup_increments_; }
    const MinBufferBank& bank() const { return bank_; }

private:
    struct ProcessedFrame {
        Spectrum spectrum;
        std::vector<double> magnitudes;
    };

    std::vector<double> run_frame(std::span<const double> samples);
    Spectrum deliver_with_residual(ProcessedFrame frame);

    EnhancerConfig config_;
    std::vector<double> window_;
    OverlapAdd ola_;
    Smoother magnitude_smoother_;
    MinBufferBank bank_;
    GainParams gain_params_;
    std::deque<ProcessedFrame> residual_ring_;
    std::size_t warmup_increments_;
    std::size_t increments_processed_ = 0;
    std::size_t samples_in_ = 0;
    std::size_t samples_out_ = 0;
    std::vector<double> pending_input_;
    bool flushed_ = false;
};

}  // namespace specsub

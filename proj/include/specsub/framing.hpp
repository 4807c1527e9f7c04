#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "specsub/errors.hpp"

namespace specsub {

// Frame geometry for the overlap-add stream. With the defaults (N=256,
// oversampling 4, 8 kHz) each increment is 64 samples = 8 ms.
struct FrameConfig {
    std::size_t frame_len = 256;
    std::size_t oversampling = 4;
    double sample_rate = 8000.0;

    std::size_t increment() const { return frame_len / oversampling; }
    double increment_seconds() const {
        return static_cast<double>(increment()) / sample_rate;
    }
    void validate() const;
};

// Stream latency in samples: N - I, plus one increment of lookahead when
// residual reduction is enabled.
std::size_t pipeline_latency(const FrameConfig& config, bool residual_reduction = false);

// Splits a sample stream into overlapping windowed frames and reassembles
// processed frames by weighted overlap-add. Single-stream sequential; the
// analysis/synthesis calls must alternate, one pair per increment.
class OverlapAdd {
public:
    OverlapAdd(const FrameConfig& config, std::vector<double> window, double cola_constant);

    // Accepts exactly I new samples and returns the windowed view of the most
    // recent N stream samples, oldest first.
    std::vector<double> analysis_next(std::span<const double> new_samples);

    // Windows the processed frame a second time, accumulates it, and emits the
    // oldest I output samples divided by the COLA constant.
    std::vector<double> synthesis_add(std::span<const double> processed_frame);

    std::size_t frames_emitted() const { return frames_emitted_; }
    // Increments emitted before the accumulator contains a full stack of
    // overlapped frames; their content is all-zero on a fresh stream.
    std::size_t warmup_increments() const { return config_.oversampling - 1; }
    const FrameConfig& config() const { return config_; }

private:
    FrameConfig config_;
    std::vector<double> window_;
    double inv_cola_;
    std::vector<double> input_ring_;   // last N input samples, oldest first
    std::vector<double> output_acc_;   // overlap-add accumulator, N slots
    std::size_t frames_emitted_ = 0;
};

}  // namespace specsub

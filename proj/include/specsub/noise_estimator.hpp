#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "specsub/errors.hpp"

namespace specsub {

enum class SmoothingMode { Off, Magnitude, Power };

SmoothingMode smoothing_mode_from_name(const std::string& name);
std::string smoothing_mode_name(SmoothingMode mode);

// Pole of the one-frame-rate low-pass P <- (1-k)v + kP. The filter is stable
// for every tau > 0 because k = exp(-T/tau) < 1.
double pole_from_tau(double tau_seconds, double frame_period_seconds);

// Frame-to-frame one-pole low-pass over per-bin values.
// Magnitude mode filters |X|; power mode filters |X|^2 and returns the square
// root, so the output is always in the magnitude domain. Off is the identity.
class Smoother {
public:
    Smoother(SmoothingMode mode, double k_pole, std::size_t bin_count);

    std::vector<double> smooth(std::span<const double> magnitudes);
    void reset();

    SmoothingMode mode() const { return mode_; }
    double k_pole() const { return k_pole_; }

private:
    SmoothingMode mode_;
    double k_pole_;
    std::vector<double> state_;
};

// Minimum Magnitude Spectral Estimate: four rotating per-bin minimum buffers.
// M1 tracks the running minimum of the current segment; every
// segment_len_frames updates the buffers shift (M4<-M3<-M2<-M1) and M1
// restarts from the frame that triggered the shift. The estimate is the
// element-wise minimum over all four buffers, optionally low-pass filtered
// to soften the jump at the shift.
class MinBufferBank {
public:
    // noise_smoothing_pole 0 leaves the estimate unfiltered.
    MinBufferBank(std::size_t bin_count, std::size_t segment_len_frames = 312,
                  double noise_smoothing_pole = 0.0);

    void update(std::span<const double> frame_magnitudes);
    // Element-wise min(M1..M4) as of the last update. Throws if no update
    // has been observed since construction/reset.
    const std::vector<double>& noise_estimate() const;

    void reset();

    std::size_t bin_count() const { return bin_count_; }
    std::size_t segment_len_frames() const { return segment_len_; }
    std::size_t frames_in_segment() const { return frames_in_segment_; }
    std::size_t rotations() const { return rotations_; }
    std::size_t total_updates() const { return total_updates_; }
    // How many past frames the current estimate can reach, capped by what has
    // been observed. Immediately after a rotation this is 3 segments plus the
    // one frame sitting in M1.
    std::size_t effective_memory_frames() const;
    const std::vector<double>& buffer(std::size_t i) const { return buffers_.at(i); }

private:
    void rotate(std::span<const double> current_frame_magnitudes);
    void recompute_estimate();

    std::size_t bin_count_;
    std::size_t segment_len_;
    std::array<std::vector<double>, 4> buffers_;  // M1..M4
    std::size_t frames_in_segment_ = 0;
    std::size_t rotations_ = 0;
    std::size_t total_updates_ = 0;
    Smoother noise_smoother_;
    std::vector<double> estimate_;
};

}  // namespace specsub

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specsub/errors.hpp"

namespace specsub {

// Decoded mono 16-bit PCM audio; samples nominally in [-1, 1].
struct WavAudio {
    std::vector<double> samples;
    std::uint32_t sample_rate = 8000;

    double duration_seconds() const {
        return static_cast<double>(samples.size()) / sample_rate;
    }
};

// Reads a RIFF/WAVE file. Only mono 16-bit PCM is accepted; anything else is
// a FormatError rather than a silent conversion. Unknown chunks are skipped.
// Samples are scaled by 1/32768.
WavAudio read_wav(const std::string& path);

// Writes a canonical 44-byte-header mono 16-bit PCM file. Samples are
// clamped to [-1, 1] and quantized so that a read/write round trip is
// bit-identical for every 16-bit value.
void write_wav(const WavAudio& audio, const std::string& path);

// Scales `noise` so the clean-to-noise power ratio hits target_snr_db, then
// adds it to `clean`. The noise is looped or truncated to the clean length
// first. A +infinity target returns the clean signal unchanged. No clamping:
// output - clean is exactly the scaled noise.
WavAudio mix_at_snr(const WavAudio& clean, const WavAudio& noise, double target_snr_db);

}  // namespace specsub

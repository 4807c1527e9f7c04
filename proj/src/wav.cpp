#include "specsub/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace specsub {

namespace {

std::uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint16_t read_u16(std::istream& in) {
    unsigned char b[2];
    in.read(reinterpret_cast<char*>(b), 2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

void write_u32(std::ostream& out, std::uint32_t v) {
    const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                       static_cast<char>((v >> 16) & 0xff),
                       static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

void write_u16(std::ostream& out, std::uint16_t v) {
    const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
    out.write(b, 2);
}

double mean_power(const std::vector<double>& samples) {
    double acc = 0.0;
    for (double s : samples) {
        acc += s * s;
    }
    return samples.empty() ? 0.0 : acc / static_cast<double>(samples.size());
}

}  // namespace

WavAudio read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open '" + path + "'");
    }
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != "RIFF") {
        throw FormatError("'" + path + "' is not a RIFF file");
    }
    read_u32(in);  // overall size, unused
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != "WAVE") {
        throw FormatError("'" + path + "' is not a WAVE file");
    }

    bool have_fmt = false;
    std::uint16_t channels = 0;
    std::uint16_t bits = 0;
    std::uint32_t rate = 0;
    WavAudio audio;

    while (in.read(magic, 4)) {
        const std::uint32_t chunk_size = read_u32(in);
        if (!in) {
            throw FormatError("'" + path + "' has a truncated chunk header");
        }
        const std::string id(magic, 4);
        if (id == "fmt ") {
            if (chunk_size < 16) {
                throw FormatError("'" + path + "' fmt chunk too small");
            }
            const std::uint16_t format = read_u16(in);
            channels = read_u16(in);
            rate = read_u32(in);
            read_u32(in);  // byte rate
            read_u16(in);  // block align
            bits = read_u16(in);
            if (chunk_size > 16) {
                in.seekg(chunk_size - 16, std::ios::cur);
            }
            if (format != 1) {
                throw FormatError("'" + path + "': only PCM (format 1) is supported");
            }
            if (channels != 1) {
                throw FormatError("'" + path + "': only mono input is supported, got " +
                                  std::to_string(channels) + " channels");
            }
            if (bits != 16) {
                throw FormatError("'" + path + "': only 16-bit PCM is supported, got " +
                                  std::to_string(bits) + " bits");
            }
            have_fmt = true;
        } else if (id == "data") {
            if (!have_fmt) {
                throw FormatError("'" + path + "': data chunk before fmt chunk");
            }
            const std::size_t count = chunk_size / 2;
            audio.samples.resize(count);
            for (std::size_t i = 0; i < count; ++i) {
                unsigned char b[2];
                in.read(reinterpret_cast<char*>(b), 2);
                if (!in) {
                    throw FormatError("'" + path + "': truncated data chunk");
                }
                const std::int16_t pcm =
                    static_cast<std::int16_t>(b[0] | (b[1] << 8));
                audio.samples[i] = static_cast<double>(pcm) / 32768.0;
            }
            audio.sample_rate = rate;
            return audio;
        } else {
            // Skip unknown chunks (LIST, fact, ...). Chunks are word-aligned.
            in.seekg(chunk_size + (chunk_size & 1), std::ios::cur);
        }
    }
    throw FormatError("'" + path + "' contains no data chunk");
}

void write_wav(const WavAudio& audio, const std::string& path) {
    for (double s : audio.samples) {
        if (!std::isfinite(s)) {
            throw ConfigError("write_wav: samples must be finite");
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw FormatError("cannot create '" + path + "'");
    }
    const std::uint32_t data_bytes =
        static_cast<std::uint32_t>(audio.samples.size() * 2);

    out.write("RIFF", 4);
    write_u32(out, 36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    write_u32(out, 16);
    write_u16(out, 1);  // PCM
    write_u16(out, 1);  // mono
    write_u32(out, audio.sample_rate);
    write_u32(out, audio.sample_rate * 2);  // byte rate
    write_u16(out, 2);                      // block align
    write_u16(out, 16);                     // bits per sample
    out.write("data", 4);
    write_u32(out, data_bytes);

    for (double s : audio.samples) {
        const double clamped = std::clamp(s, -1.0, 1.0);
        // 1/32768 read scaling inverts exactly under this quantizer, which is
        // what makes the read->write round trip bit-identical.
        long q = std::lround(clamped * 32768.0);
        q = std::clamp(q, -32768L, 32767L);
        write_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
    }
    if (!out) {
        throw FormatError("failed writing '" + path + "'");
    }
}

WavAudio mix_at_snr(const WavAudio& clean, const WavAudio& noise, double target_snr_db) {
    if (clean.sample_rate != noise.sample_rate) {
        throw ConfigError("mix_at_snr: sample rates differ");
    }
    if (std::isinf(target_snr_db) && target_snr_db > 0.0) {
        return clean;
    }
    if (noise.samples.empty()) {
        throw std::domain_error("mix_at_snr: noise signal is empty");
    }

    // Loop or truncate the noise to the clean length before measuring power,
    // so the achieved ratio is exact over the mixed region.
    std::vector<double> fitted(clean.samples.size());
    for (std::size_t i = 0; i < fitted.size(); ++i) {
        fitted[i] = noise.samples[i % noise.samples.size()];
    }

    const double clean_power = mean_power(clean.samples);
    const double noise_power = mean_power(fitted);
    if (noise_power <= 0.0) {
        throw std::domain_error("mix_at_snr: noise has zero power");
    }
    if (clean_power <= 0.0) {
        throw std::domain_error("mix_at_snr: clean signal has zero power");
    }

    const double scale =
        std::sqrt(clean_power / (noise_power * std::pow(10.0, target_snr_db / 10.0)));

    WavAudio out;
    out.sample_rate = clean.sample_rate;
    out.samples.resize(clean.samples.size());
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
        out.samples[i] = clean.samples[i] + scale * fitted[i];
    }
    return out;
}

}  // namespace specsub

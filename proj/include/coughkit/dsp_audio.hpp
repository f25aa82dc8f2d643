#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coughkit/types.hpp"

namespace coughkit::audio {

/// Row-major [rows x cols] matrix of doubles.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Magnitude STFT: bins x frames, n_bins = frame_len/2 + 1.
struct Spectrogram {
    Matrix magnitudes;
    std::size_t frame_len = 1024;  // samples
    std::size_t hop = 512;         // samples
    double fs = 8000.0;

    std::size_t n_bins() const { return magnitudes.rows; }
    std::size_t n_frames() const { return magnitudes.cols; }
};

/// Triangular Mel filterbank output. When a band mask is present only the
/// masked rows hold data; the others are zero and flagged uncomputed.
struct MelSpectrogram {
    Matrix bands;  // n_mel x n_frames
    std::optional<std::set<std::size_t>> band_mask;

    std::size_t n_mel() const { return bands.rows; }
    std::size_t n_frames() const { return bands.cols; }
};

inline constexpr std::size_t kNumMelBands = 64;
inline constexpr std::size_t kNumMfcc = 13;
inline constexpr std::size_t kNumEepdBands = 19;

struct MfccFrame {
    std::array<double, kNumMfcc> coeffs{};
};

/// In-place iterative radix-2 FFT on interleaved re/im pairs; n must be a
/// power of two.
void fft_inplace(std::vector<double>& re, std::vector<double>& im, bool inverse = false);

struct StftConfig {
    std::size_t frame_len = 1024;
    std::size_t hop = 512;
};

/// Hann-weighted magnitude STFT; frame k covers samples
/// [k*hop, k*hop + frame_len).
Spectrogram stft(const AudioSignal& window, std::size_t frame_len = 1024, std::size_t hop = 512);

/// Precomputed triangular filterbank, HTK Mel scale, area-normalized.
class MelFilterbank {
public:
    MelFilterbank(double fs, std::size_t frame_len, std::size_t n_mel = kNumMelBands);
    /// weights[m] spans the full bin range; stored dense for simplicity.
    const Matrix& weights() const { return weights_; }
    std::size_t n_mel() const { return weights_.rows; }

private:
    Matrix weights_;  // n_mel x n_bins
};

/// Mel bands = filterbank x power-spectrogram. A band mask computes only
/// the listed rows; each row is an independent dot product so masked rows
/// are bit-exact with the corresponding rows of a full call.
MelSpectrogram mel_spectrogram(const Spectrogram& spec,
                               std::size_t n_mel = kNumMelBands,
                               const std::optional<std::set<std::size_t>>& band_mask = std::nullopt);

/// Per frame: floored log of all 64 bands, then DCT-II, first 13
/// coefficients. The LUT path uses a precomputed cosine table; both paths
/// agree within 1e-6. Masked input is rejected.
std::vector<MfccFrame> mfcc(const MelSpectrogram& mel, bool use_cosine_lut = true);

/// Four statistics per row: mean, st. dev, max, entropy. Entropy is the
/// Shannon entropy (natural log) of the row's absolute values normalized
/// to sum 1; an all-zero row has entropy 0. Names are `<prefix><row>/<stat>`.
FeatureVector summarize_bands(const Matrix& matrix, const std::string& prefix);

/// Summary statistics of a one-sided PSD. Exposed so flatness and moment
/// conventions can be tested on constructed spectra.
struct SpectralStats {
    double decrease = 0.0;
    double slope = 0.0;
    double rolloff = 0.0;  // Hz, 85% energy point
    double skew = 0.0;
    double centroid = 0.0;  // Hz
    double spread = 0.0;    // Hz
    double flatness = 1.0;
    double stddev = 0.0;
    double entropy = 0.0;
    double dominant_freq = 0.0;  // Hz
    double psd_mean = 0.0;
    double psd_std = 0.0;
    double psd_max = 0.0;
    double psd_power = 0.0;  // total power
};

SpectralStats spectral_stats_from_psd(const std::vector<double>& psd,
                                      const std::vector<double>& freqs);

/// Welch PSD with the STFT framing (Hann, 50% overlap), one-sided.
void welch_psd(const AudioSignal& window, std::size_t frame_len, std::size_t hop,
               std::vector<double>& psd, std::vector<double>& freqs);

/// The 14 frequency-domain features, computed from the Welch PSD.
FeatureVector spectral_features(const AudioSignal& window);

struct AudioTimeFeatures {
    double rms = 0.0;
    double zcr = 0.0;    // sign changes / (n-1)
    double crest = 0.0;  // max|x| / rms, 0 for a silent window
};

AudioTimeFeatures time_features_audio(const AudioSignal& window);

/// Per-band energy-envelope peak counts: 19 contiguous 50 Hz bands over
/// 50-1000 Hz, 4th-order band-pass, squared, 10 ms moving average, local
/// maxima above the envelope mean.
std::vector<int> eepd(const AudioSignal& window);
int eepd_band(const AudioSignal& window, double f_lo, double f_hi);

struct AudioFeatureConfig {
    double window_len_s = 0.8;
    double fs = 8000.0;
    std::size_t frame_len = 1024;
    std::size_t hop = 512;
    bool use_cosine_lut = true;
    /// Tolerated mismatch between the window and the configured length,
    /// in samples.
    double len_tol_samples = 1.0;
};

/// Masked audio feature extraction. Computes only the requested features
/// plus their prerequisites; Mel band masks are derived from the masked
/// Mel feature names. Unknown names raise std::invalid_argument.
FeatureVector extract_audio_features(const AudioSignal& window,
                                     const std::set<std::string>& mask,
                                     const SubjectMeta& meta,
                                     const AudioFeatureConfig& config = {});

}  // namespace coughkit::audio

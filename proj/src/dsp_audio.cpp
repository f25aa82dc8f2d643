#include "coughkit/dsp_audio.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "coughkit/registry.hpp"

namespace coughkit::audio {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::vector<double> hann_window(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = 0.5 * (1.0 - std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n)));
    }
    return w;
}

double mel_from_hz(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
double hz_from_mel(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

}  // namespace

void fft_inplace(std::vector<double>& re, std::vector<double>& im, bool inverse) {
    const std::size_t n = re.size();
    if (!is_power_of_two(n) || im.size() != n) {
        throw std::invalid_argument("dsp_audio: FFT length must be a power of two");
    }
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) {
            std::swap(re[i], re[j]);
            std::swap(im[i], im[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * kPi / static_cast<double>(len);
        const double wr = std::cos(ang), wi = std::sin(ang);
        for (std::size_t i = 0; i < n; i += len) {
            double cr = 1.0, ci = 0.0;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::size_t a = i + k, b = i + k + len / 2;
                const double tr = re[b] * cr - im[b] * ci;
                const double ti = re[b] * ci + im[b] * cr;
                re[b] = re[a] - tr;
                im[b] = im[a] - ti;
                re[a] += tr;
                im[a] += ti;
                const double ncr = cr * wr - ci * wi;
                ci = cr * wi + ci * wr;
                cr = ncr;
            }
        }
    }
    if (inverse) {
        for (std::size_t i = 0; i < n; ++i) {
            re[i] /= static_cast<double>(n);
            im[i] /= static_cast<double>(n);
        }
    }
}

Spectrogram stft(const AudioSignal& window, std::size_t frame_len, std::size_t hop) {
    if (!is_power_of_two(frame_len)) {
        throw std::invalid_argument("dsp_audio: STFT frame length must be a power of two");
    }
    if (window.samples.size() < frame_len) {
        throw std::invalid_argument("dsp_audio: window shorter than one STFT frame");
    }
    if (hop == 0) throw std::invalid_argument("dsp_audio: STFT hop must be positive");

    const std::size_t n_frames = (window.samples.size() - frame_len) / hop + 1;
    const std::size_t n_bins = frame_len / 2 + 1;
    const std::vector<double> w = hann_window(frame_len);

    Spectrogram spec;
    spec.frame_len = frame_len;
    spec.hop = hop;
    spec.fs = window.fs;
    spec.magnitudes = Matrix(n_bins, n_frames);

    std::vector<double> re(frame_len), im(frame_len);
    for (std::size_t k = 0; k < n_frames; ++k) {
        for (std::size_t i = 0; i < frame_len; ++i) {
            re[i] = window.samples[k * hop + i] * w[i];
            im[i] = 0.0;
        }
        fft_inplace(re, im);
        for (std::size_t b = 0; b < n_bins; ++b) {
            spec.magnitudes.at(b, k) = std::hypot(re[b], im[b]);
        }
    }
    return spec;
}

MelFilterbank::MelFilterbank(double fs, std::size_t frame_len, std::size_t n_mel) {
    const std::size_t n_bins = frame_len / 2 + 1;
    weights_ = Matrix(n_mel, n_bins);

    const double mel_max = mel_from_hz(fs / 2.0);
    std::vector<double> edges(n_mel + 2);
    for (std::size_t m = 0; m < edges.size(); ++m) {
        edges[m] = hz_from_mel(mel_max * static_cast<double>(m) / static_cast<double>(n_mel + 1));
    }
    for (std::size_t m = 0; m < n_mel; ++m) {
        const double lo = edges[m], mid = edges[m + 1], hi = edges[m + 2];
        const double norm = 2.0 / (hi - lo);  // area normalization
        for (std::size_t b = 0; b < n_bins; ++b) {
            const double f = static_cast<double>(b) * fs / static_cast<double>(frame_len);
            double v = 0.0;
            if (f >= lo && f <= mid && mid > lo) {
                v = (f - lo) / (mid - lo);
            } else if (f > mid && f <= hi && hi > mid) {
                v = (hi - f) / (hi - mid);
            }
            weights_.at(m, b) = v * norm;
        }
    }
}

MelSpectrogram mel_spectrogram(const Spectrogram& spec, std::size_t n_mel,
                               const std::optional<std::set<std::size_t>>& band_mask) {
    if (band_mask) {
        for (std::size_t m : *band_mask) {
            if (m >= n_mel) {
                throw std::invalid_argument("dsp_audio: Mel band index " + std::to_string(m) +
                                            " out of range (n_mel = " + std::to_string(n_mel) + ")");
            }
        }
    }
    static thread_local std::unique_ptr<MelFilterbank> cached;
    static thread_local double cached_fs = 0.0;
    static thread_local std::size_t cached_frame = 0, cached_mel = 0;
    if (!cached || cached_fs != spec.fs || cached_frame != spec.frame_len || cached_mel != n_mel) {
        cached = std::make_unique<MelFilterbank>(spec.fs, spec.frame_len, n_mel);
        cached_fs = spec.fs;
        cached_frame = spec.frame_len;
        cached_mel = n_mel;
    }
    const Matrix& fb = cached->weights();

    MelSpectrogram mel;
    mel.bands = Matrix(n_mel, spec.n_frames());
    mel.band_mask = band_mask;

    // Power spectrogram, column-major access below.
    const std::size_t n_bins = spec.n_bins();
    const std::size_t n_frames = spec.n_frames();
    for (std::size_t m = 0; m < n_mel; ++m) {
        if (band_mask && band_mask->count(m) == 0) continue;
        for (std::size_t k = 0; k < n_frames; ++k) {
            double acc = 0.0;
            for (std::size_t b = 0; b < n_bins; ++b) {
                const double mag = spec.magnitudes.at(b, k);
                acc += fb.at(m, b) * (mag * mag);
            }
            mel.bands.at(m, k) = acc;
        }
    }
    return mel;
}

namespace {

constexpr double kLogFloor = 1e-10;

/// Orthonormal DCT-II basis, rows = coefficients, cols = Mel bands.
const Matrix& cosine_lut() {
    static const Matrix lut = [] {
        Matrix m(kNumMfcc, kNumMelBands);
        const double n = static_cast<double>(kNumMelBands);
        for (std::size_t k = 0; k < kNumMfcc; ++k) {
            const double scale = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
            for (std::size_t i = 0; i < kNumMelBands; ++i) {
                m.at(k, i) =
                    scale * std::cos(kPi * static_cast<double>(k) * (2.0 * i + 1.0) / (2.0 * n));
            }
        }
        return m;
    }();
    return lut;
}

}  // namespace

std::vector<MfccFrame> mfcc(const MelSpectrogram& mel, bool use_cosine_lut) {
    if (mel.band_mask) {
        throw std::invalid_argument("dsp_audio: MFCC needs all Mel bands (input is band-masked)");
    }
    if (mel.n_mel() != kNumMelBands) {
        throw std::invalid_argument("dsp_audio: MFCC expects " + std::to_string(kNumMelBands) +
                                    " Mel bands");
    }
    const std::size_t n_frames = mel.n_frames();
    std::vector<MfccFrame> out(n_frames);
    std::array<double, kNumMelBands> logb{};
    const double n = static_cast<double>(kNumMelBands);
    for (std::size_t k = 0; k < n_frames; ++k) {
        for (std::size_t m = 0; m < kNumMelBands; ++m) {
            logb[m] = std::log(std::max(mel.bands.at(m, k), kLogFloor));
        }
        for (std::size_t c = 0; c < kNumMfcc; ++c) {
            double acc = 0.0;
            if (use_cosine_lut) {
                const Matrix& lut = cosine_lut();
                for (std::size_t m = 0; m < kNumMelBands; ++m) acc += lut.at(c, m) * logb[m];
            } else {
                const double scale = c == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
                for (std::size_t m = 0; m < kNumMelBands; ++m) {
                    acc += scale * logb[m] *
                           std::cos(kPi * static_cast<double>(c) * (2.0 * m + 1.0) / (2.0 * n));
                }
            }
            out[k].coeffs[c] = acc;
        }
    }
    return out;
}

namespace {

double shannon_entropy_abs(const double* v, std::size_t n) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += std::fabs(v[i]);
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = std::fabs(v[i]) / total;
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

}  // namespace

FeatureVector summarize_bands(const Matrix& matrix, const std::string& prefix) {
    if (matrix.cols < 1) throw std::invalid_argument("dsp_audio: summarize needs >= 1 frame");
    FeatureVector out;
    for (std::size_t r = 0; r < matrix.rows; ++r) {
        const double* row = matrix.data.data() + r * matrix.cols;
        const std::size_t n = matrix.cols;
        double mean = 0.0, mx = row[0];
        for (std::size_t i = 0; i < n; ++i) {
            mean += row[i];
            mx = std::max(mx, row[i]);
        }
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) var += (row[i] - mean) * (row[i] - mean);
        var /= static_cast<double>(n);
        const std::string base = prefix + std::to_string(r);
        out.set(base + "/mean", mean);
        out.set(base + "/std", std::sqrt(var));
        out.set(base + "/max", mx);
        out.set(base + "/entropy", shannon_entropy_abs(row, n));
    }
    return out;
}

SpectralStats spectral_stats_from_psd(const std::vector<double>& psd,
                                      const std::vector<double>& freqs) {
    if (psd.size() != freqs.size() || psd.empty()) {
        throw std::invalid_argument("dsp_audio: PSD and frequency grids differ");
    }
    const std::size_t n = psd.size();
    SpectralStats s;
    double total = 0.0;
    for (double p : psd) total += p;
    s.psd_power = total;
    s.psd_max = *std::max_element(psd.begin(), psd.end());
    double pm = 0.0;
    for (double p : psd) pm += p;
    pm /= static_cast<double>(n);
    s.psd_mean = pm;
    double pv = 0.0;
    for (double p : psd) pv += (p - pm) * (p - pm);
    s.psd_std = std::sqrt(pv / static_cast<double>(n));
    s.stddev = s.psd_std;

    const std::size_t arg = static_cast<std::size_t>(
        std::distance(psd.begin(), std::max_element(psd.begin(), psd.end())));
    s.dominant_freq = freqs[arg];

    if (total <= 0.0) {
        s.flatness = 1.0;
        return s;
    }

    double centroid = 0.0;
    for (std::size_t i = 0; i < n; ++i) centroid += psd[i] / total * freqs[i];
    s.centroid = centroid;
    double m2 = 0.0, m3 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = freqs[i] - centroid;
        const double q = psd[i] / total;
        m2 += q * d * d;
        m3 += q * d * d * d;
    }
    s.spread = std::sqrt(m2);
    s.skew = s.spread > 0.0 ? m3 / (s.spread * s.spread * s.spread) : 0.0;

    double h = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double q = psd[i] / total;
        if (q > 0.0) h -= q * std::log(q);
    }
    s.entropy = h;

    double log_acc = 0.0;
    for (double p : psd) log_acc += std::log(std::max(p, 1e-300));
    s.flatness = std::exp(log_acc / static_cast<double>(n)) / pm;

    double cum = 0.0;
    s.rolloff = freqs.back();
    for (std::size_t i = 0; i < n; ++i) {
        cum += psd[i];
        if (cum >= 0.85 * total) {
            s.rolloff = freqs[i];
            break;
        }
    }

    // Decrease: average slope of p relative to the first bin, weighted 1/k.
    double dec_num = 0.0, dec_den = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        dec_num += (psd[k] - psd[0]) / static_cast<double>(k);
        dec_den += psd[k];
    }
    s.decrease = dec_den > 0.0 ? dec_num / dec_den : 0.0;

    double fm = 0.0;
    for (double f : freqs) fm += f;
    fm /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (freqs[i] - fm) * (freqs[i] - fm);
        sxy += (freqs[i] - fm) * (psd[i] - pm);
    }
    s.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    return s;
}

void welch_psd(const AudioSignal& window, std::size_t frame_len, std::size_t hop,
               std::vector<double>& psd, std::vector<double>& freqs) {
    if (window.samples.empty()) throw std::invalid_argument("dsp_audio: empty window");
    // Shrink to the largest power of two that fits short inputs.
    while (frame_len > window.samples.size()) frame_len /= 2;
    if (frame_len < 2) frame_len = 2;
    hop = std::min(hop, frame_len);
    if (hop == 0) hop = frame_len;

    const std::vector<double> w = hann_window(frame_len);
    double wss = 0.0;
    for (double v : w) wss += v * v;
    const double scale = 1.0 / (window.fs * wss);

    const std::size_t n_frames = (window.samples.size() - frame_len) / hop + 1;
    const std::size_t n_bins = frame_len / 2 + 1;
    psd.assign(n_bins, 0.0);
    freqs.resize(n_bins);
    for (std::size_t b = 0; b < n_bins; ++b) {
        freqs[b] = static_cast<double>(b) * window.fs / static_cast<double>(frame_len);
    }

    std::vector<double> re(frame_len), im(frame_len);
    for (std::size_t k = 0; k < n_frames; ++k) {
        for (std::size_t i = 0; i < frame_len; ++i) {
            re[i] = window.samples[k * hop + i] * w[i];
            im[i] = 0.0;
        }
        fft_inplace(re, im);
        for (std::size_t b = 0; b < n_bins; ++b) {
            double p = (re[b] * re[b] + im[b] * im[b]) * scale;
            if (b != 0 && b != n_bins - 1) p *= 2.0;  // one-sided
            psd[b] += p;
        }
    }
    for (double& p : psd) p /= static_cast<double>(n_frames);
}

FeatureVector spectral_features(const AudioSignal& window) {
    std::vector<double> psd, freqs;
    welch_psd(window, 1024, 512, psd, freqs);
    const SpectralStats s = spectral_stats_from_psd(psd, freqs);
    FeatureVector out;
    out.set("audio/spec/decrease", s.decrease);
    out.set("audio/spec/slope", s.slope);
    out.set("audio/spec/rolloff", s.rolloff);
    out.set("audio/spec/skew", s.skew);
    out.set("audio/spec/centroid", s.centroid);
    out.set("audio/spec/spread", s.spread);
    out.set("audio/spec/flatness", s.flatness);
    out.set("audio/spec/std", s.stddev);
    out.set("audio/spec/entropy", s.entropy);
    out.set("audio/spec/dominant_freq", s.dominant_freq);
    out.set("audio/spec/psd_mean", s.psd_mean);
    out.set("audio/spec/psd_std", s.psd_std);
    out.set("audio/spec/psd_max", s.psd_max);
    out.set("audio/spec/psd_power", s.psd_power);
    return out;
}

AudioTimeFeatures time_features_audio(const AudioSignal& window) {
    const auto& x = window.samples;
    if (x.empty()) throw std::invalid_argument("dsp_audio: empty window");
    AudioTimeFeatures f;
    double acc = 0.0, peak = 0.0;
    for (double v : x) {
        acc += v * v;
        peak = std::max(peak, std::fabs(v));
    }
    f.rms = std::sqrt(acc / static_cast<double>(x.size()));
    int changes = 0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        const int s0 = x[i - 1] >= 0.0 ? 1 : -1;
        const int s1 = x[i] >= 0.0 ? 1 : -1;
        if (s0 != s1) ++changes;
    }
    f.zcr = x.size() > 1 ? static_cast<double>(changes) / static_cast<double>(x.size() - 1) : 0.0;
    f.crest = f.rms > 0.0 ? peak / f.rms : 0.0;
    return f;
}

namespace {

struct Biquad {
    double b0, b1, b2, a1, a2;

    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        y.resize(x.size());
        double x1 = 0.0, x2 = 0.0, y1 = 0.0, y2 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double yi = b0 * x[i] + b1 * x1 + b2 * x2 - a1 * y1 - a2 * y2;
            x2 = x1;
            x1 = x[i];
            y2 = y1;
            y1 = yi;
            y[i] = yi;
        }
    }
};

/// Constant-peak-gain band-pass biquad.
Biquad bandpass_biquad(double fs, double f0, double bw) {
    const double w0 = 2.0 * kPi * f0 / fs;
    const double q = f0 / bw;
    const double alpha = std::sin(w0) / (2.0 * q);
    const double a0 = 1.0 + alpha;
    Biquad b{};
    b.b0 = alpha / a0;
    b.b1 = 0.0;
    b.b2 = -alpha / a0;
    b.a1 = -2.0 * std::cos(w0) / a0;
    b.a2 = (1.0 - alpha) / a0;
    return b;
}

}  // namespace

int eepd_band(const AudioSignal& window, double f_lo, double f_hi) {
    if (window.fs < 2000.0) throw std::invalid_argument("dsp_audio: EEPD needs fs >= 2 kHz");
    const double f0 = 0.5 * (f_lo + f_hi);
    const double bw = f_hi - f_lo;
    const Biquad bq = bandpass_biquad(window.fs, f0, bw);

    std::vector<double> y, z;
    bq.apply(window.samples, y);
    bq.apply(y, z);  // cascade: 4th-order band-pass

    for (double& v : z) v = v * v;

    // 10 ms moving average, centered with edge truncation.
    const int half = std::max(1, static_cast<int>(std::lround(0.01 * window.fs)) / 2);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(z.size());
    std::vector<double> env(z.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - half);
        const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + half);
        double acc = 0.0;
        for (std::ptrdiff_t j = lo; j <= hi; ++j) acc += z[j];
        env[i] = acc / static_cast<double>(hi - lo + 1);
    }

    double mean = 0.0;
    for (double v : env) mean += v;
    mean /= static_cast<double>(env.size());

    // Distinct peaks at the envelope's own resolution: local maxima above
    // the mean, at least one smoothing window apart.
    const std::ptrdiff_t min_dist = std::max<std::ptrdiff_t>(1, std::llround(0.01 * window.fs));
    int count = 0;
    std::ptrdiff_t last = -min_dist;
    for (std::ptrdiff_t i = 1; i + 1 < n; ++i) {
        if (env[i] > env[i - 1] && env[i] > env[i + 1] && env[i] > mean && i - last >= min_dist) {
            ++count;
            last = i;
        }
    }
    return count;
}

std::vector<int> eepd(const AudioSignal& window) {
    std::vector<int> counts(kNumEepdBands);
    for (std::size_t k = 0; k < kNumEepdBands; ++k) {
        const double lo = 50.0 + 50.0 * static_cast<double>(k);
        counts[k] = eepd_band(window, lo, lo + 50.0);
    }
    return counts;
}

namespace {

struct MaskNeeds {
    bool spectral = false;
    bool time = false;
    bool gender = false;
    bool mfcc = false;
    std::set<std::size_t> mel_rows;
    std::set<std::size_t> eepd_bands;
};

MaskNeeds analyze_mask(const std::set<std::string>& mask) {
    MaskNeeds needs;
    std::vector<std::string> unknown;
    for (const auto& name : mask) {
        if (!registry::is_known(Modality::kAudio, name)) {
            unknown.push_back(name);
            continue;
        }
        if (name.rfind("audio/spec/", 0) == 0) {
            needs.spectral = true;
        } else if (name.rfind("audio/time/", 0) == 0) {
            needs.time = true;
        } else if (name == "meta/gender") {
            needs.gender = true;
        } else if (name.rfind("audio/mfcc", 0) == 0) {
            needs.mfcc = true;
        } else if (name.rfind("audio/mel", 0) == 0) {
            needs.mel_rows.insert(std::stoul(name.substr(9)));
        } else if (name.rfind("audio/eepd", 0) == 0) {
            needs.eepd_bands.insert(std::stoul(name.substr(10)));
        }
    }
    if (!unknown.empty()) {
        std::string msg = "dsp_audio: unknown feature name(s):";
        for (const auto& u : unknown) msg += " " + u;
        throw std::invalid_argument(msg);
    }
    return needs;
}

}  // namespace

FeatureVector extract_audio_features(const AudioSignal& window,
                                     const std::set<std::string>& mask, const SubjectMeta& meta,
                                     const AudioFeatureConfig& config) {
    const MaskNeeds needs = analyze_mask(mask);

    const double expected = config.window_len_s * config.fs;
    if (std::fabs(static_cast<double>(window.samples.size()) - expected) >
            config.len_tol_samples ||
        std::fabs(window.fs - config.fs) > 1e-9) {
        throw std::invalid_argument(
            "dsp_audio: window does not match the configured length/rate (" +
            std::to_string(window.samples.size()) + " samples @ " + std::to_string(window.fs) +
            " Hz, expected " + std::to_string(config.window_len_s) + " s @ " +
            std::to_string(config.fs) + " Hz)");
    }

    FeatureVector all;
    if (needs.spectral) {
        const FeatureVector spec = spectral_features(window);
        for (const auto& [k, v] : spec.values()) all.set(k, v);
    }
    if (!needs.mel_rows.empty() || needs.mfcc) {
        const Spectrogram spec = stft(window, config.frame_len, config.hop);
        std::optional<std::set<std::size_t>> band_mask;
        if (!needs.mfcc) band_mask = needs.mel_rows;  // MFCC requires all bands
        const MelSpectrogram mel = mel_spectrogram(spec, kNumMelBands, band_mask);
        if (!needs.mel_rows.empty()) {
            const FeatureVector mel_feats = summarize_bands(mel.bands, "audio/mel");
            for (const auto& [k, v] : mel_feats.values()) all.set(k, v);
        }
        if (needs.mfcc) {
            const std::vector<MfccFrame> frames = mfcc(mel, config.use_cosine_lut);
            Matrix coeffs(kNumMfcc, frames.size());
            for (std::size_t f = 0; f < frames.size(); ++f) {
                for (std::size_t c = 0; c < kNumMfcc; ++c) coeffs.at(c, f) = frames[f].coeffs[c];
            }
            const FeatureVector mf = summarize_bands(coeffs, "audio/mfcc");
            for (const auto& [k, v] : mf.values()) all.set(k, v);
        }
    }
    if (needs.time) {
        const AudioTimeFeatures tf = time_features_audio(window);
        all.set("audio/time/rms", tf.rms);
        all.set("audio/time/zcr", tf.zcr);
        all.set("audio/time/crest", tf.crest);
    }
    for (std::size_t band : needs.eepd_bands) {
        const double lo = 50.0 + 50.0 * static_cast<double>(band);
        all.set("audio/eepd" + std::to_string(band),
                static_cast<double>(eepd_band(window, lo, lo + 50.0)));
    }
    if (needs.gender) all.set("meta/gender", static_cast<double>(meta.gender));

    FeatureVector out;
    for (const auto& name : mask) out.set(name, all.at(name));
    return out;
}

}  // namespace coughkit::audio

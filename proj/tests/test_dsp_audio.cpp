#include <cmath>
#include <complex>
#include <numbers>

#include "coughkit/dsp_audio.hpp"
#include "coughkit/fixtures.hpp"
#include "coughkit/oracles.hpp"
#include "coughkit/registry.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace coughkit;
using coughkit::audio::Matrix;

namespace {

/// Reference magnitudes of one Hann-weighted frame via the naive DFT.
std::vector<double> frame_magnitudes_oracle(const std::vector<double>& samples, std::size_t first,
                                            std::size_t frame_len) {
    std::vector<double> frame(frame_len);
    for (std::size_t i = 0; i < frame_len; ++i) {
        const double w =
            0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                  static_cast<double>(frame_len)));
        frame[i] = samples[first + i] * w;
    }
    const auto spec = oracles::dft_naive(frame);
    std::vector<double> mags(frame_len / 2 + 1);
    for (std::size_t b = 0; b < mags.size(); ++b) mags[b] = std::abs(spec[b]);
    return mags;
}

}  // namespace

TEST_CASE("stft of silence is zero") {
    AudioSignal s;
    s.fs = 8000.0;
    s.samples.assign(6400, 0.0);
    const auto spec = audio::stft(s);
    CHECK(spec.n_bins() == 513);
    CHECK(spec.n_frames() == 11);
    for (double v : spec.magnitudes.data) CHECK(v == 0.0);
}

TEST_CASE("stft localizes a tone in the expected bin") {
    const AudioSignal s = testsup::tone(1000.0, 8000.0, 0.8);
    const auto spec = audio::stft(s);
    const std::size_t expected_bin = 128;  // 1000 * 1024 / 8000
    for (std::size_t k = 0; k < spec.n_frames(); ++k) {
        std::size_t argmax = 0;
        for (std::size_t b = 1; b < spec.n_bins(); ++b) {
            if (spec.magnitudes.at(b, k) > spec.magnitudes.at(argmax, k)) argmax = b;
        }
        CHECK(argmax == expected_bin);
    }
}

TEST_CASE("stft matches the naive DFT oracle") {
    fixtures::Rng rng(21);
    AudioSignal s = testsup::noise_window(rng, 6400);
    const auto spec = audio::stft(s);
    for (std::size_t k : {std::size_t{0}, std::size_t{5}, std::size_t{10}}) {
        const auto oracle = frame_magnitudes_oracle(s.samples, k * 512, 1024);
        for (std::size_t b = 0; b < oracle.size(); ++b) {
            const double rel = std::fabs(spec.magnitudes.at(b, k) - oracle[b]) /
                               std::max(oracle[b], 1e-9);
            CHECK(rel <= 1e-6);
        }
    }
    CHECK_THROWS_AS(audio::stft(s, 1000, 512), std::invalid_argument);  // not a power of two
}

TEST_CASE("mel spectrogram shape and band masking") {
    fixtures::Rng rng(5);
    const AudioSignal s = testsup::noise_window(rng, 6400);
    const auto spec = audio::stft(s);

    const auto full = audio::mel_spectrogram(spec);
    CHECK(full.n_mel() == 64);
    CHECK(full.n_frames() == 11);

    SUBCASE("masked rows are bit-exact with the full product") {
        const std::set<std::size_t> mask = {5, 17};
        const auto masked = audio::mel_spectrogram(spec, 64, mask);
        for (std::size_t m : mask) {
            for (std::size_t k = 0; k < full.n_frames(); ++k) {
                CHECK(masked.bands.at(m, k) == full.bands.at(m, k));
            }
        }
    }
    SUBCASE("mask index out of range is rejected") {
        CHECK_THROWS_AS(audio::mel_spectrogram(spec, 64, std::set<std::size_t>{64}),
                        std::invalid_argument);
    }
    SUBCASE("zero spectrogram gives zero bands") {
        AudioSignal z;
        z.fs = 8000.0;
        z.samples.assign(6400, 0.0);
        const auto mel = audio::mel_spectrogram(audio::stft(z));
        for (double v : mel.bands.data) CHECK(v == 0.0);
    }
}

TEST_CASE("mfcc basics") {
    SUBCASE("constant bands leave only the zero coefficient") {
        audio::MelSpectrogram mel;
        mel.bands = Matrix(64, 3);
        for (auto& v : mel.bands.data) v = 2.5;
        const auto frames = audio::mfcc(mel);
        REQUIRE(frames.size() == 3);
        for (const auto& f : frames) {
            for (std::size_t c = 1; c < audio::kNumMfcc; ++c) {
                CHECK(std::fabs(f.coeffs[c]) <= 1e-12);
            }
        }
    }
    SUBCASE("LUT and direct paths agree within 1e-6") {
        fixtures::Rng rng(9);
        audio::MelSpectrogram mel;
        mel.bands = Matrix(64, 7);
        for (auto& v : mel.bands.data) v = rng.uniform(0.0, 5.0);
        const auto a = audio::mfcc(mel, true);
        const auto b = audio::mfcc(mel, false);
        for (std::size_t k = 0; k < a.size(); ++k) {
            for (std::size_t c = 0; c < audio::kNumMfcc; ++c) {
                CHECK(std::fabs(a[k].coeffs[c] - b[k].coeffs[c]) <= 1e-6);
            }
        }
        CHECK(a.front().coeffs.size() == 13);
    }
    SUBCASE("masked input is rejected") {
        audio::MelSpectrogram mel;
        mel.bands = Matrix(64, 2);
        mel.band_mask = std::set<std::size_t>{1, 2};
        CHECK_THROWS_AS(audio::mfcc(mel), std::invalid_argument);
    }
}

TEST_CASE("band summaries") {
    SUBCASE("64 Mel rows give 256 features, 13 MFCC rows give 52") {
        CHECK(audio::summarize_bands(Matrix(64, 4), "audio/mel").size() == 256);
        CHECK(audio::summarize_bands(Matrix(13, 4), "audio/mfcc").size() == 52);
    }
    SUBCASE("constant positive row") {
        Matrix m(1, 8);
        for (auto& v : m.data) v = 3.0;
        const auto f = audio::summarize_bands(m, "x");
        CHECK(f.at("x0/mean") == doctest::Approx(3.0));
        CHECK(f.at("x0/std") == doctest::Approx(0.0));
        CHECK(f.at("x0/max") == doctest::Approx(3.0));
        CHECK(f.at("x0/entropy") == doctest::Approx(std::log(8.0)));
    }
    SUBCASE("one-hot row has zero entropy") {
        Matrix m(1, 8);
        m.at(0, 3) = 1.0;
        CHECK(audio::summarize_bands(m, "x").at("x0/entropy") == doctest::Approx(0.0));
    }
}

TEST_CASE("spectral features") {
    SUBCASE("tone dominant frequency and centroid") {
        const AudioSignal s = testsup::tone(1000.0, 8000.0, 0.8);
        const auto f = audio::spectral_features(s);
        const double bin_hz = 8000.0 / 1024.0;
        CHECK(std::fabs(f.at("audio/spec/dominant_freq") - 1000.0) <= bin_hz);
        CHECK(std::fabs(f.at("audio/spec/centroid") - 1000.0) <= bin_hz);
    }
    SUBCASE("flat PSD has unit flatness") {
        std::vector<double> psd(100, 0.25), freqs(100);
        for (std::size_t i = 0; i < 100; ++i) freqs[i] = static_cast<double>(i);
        const auto stats = audio::spectral_stats_from_psd(psd, freqs);
        CHECK(stats.flatness == doctest::Approx(1.0));
    }
    SUBCASE("zero-power window uses the defined fallbacks") {
        AudioSignal z;
        z.fs = 8000.0;
        z.samples.assign(6400, 0.0);
        const auto f = audio::spectral_features(z);
        CHECK(f.at("audio/spec/centroid") == 0.0);
        CHECK(f.at("audio/spec/spread") == 0.0);
        CHECK(f.at("audio/spec/skew") == 0.0);
        CHECK(f.at("audio/spec/flatness") == 1.0);
        for (const auto& [name, v] : f.values()) CHECK(std::isfinite(v));
    }
    SUBCASE("centroid matches a direct moment computation on the PSD") {
        fixtures::Rng rng(31);
        const AudioSignal s = testsup::noise_window(rng, 6400);
        std::vector<double> psd, freqs;
        audio::welch_psd(s, 1024, 512, psd, freqs);
        double total = 0.0, moment = 0.0;
        for (std::size_t i = 0; i < psd.size(); ++i) {
            total += psd[i];
            moment += psd[i] * freqs[i];
        }
        const auto f = audio::spectral_features(s);
        CHECK(f.at("audio/spec/centroid") == doctest::Approx(moment / total).epsilon(1e-12));
    }
}

TEST_CASE("audio time features") {
    SUBCASE("constant window") {
        AudioSignal s;
        s.fs = 8000.0;
        s.samples.assign(1000, -0.4);
        const auto f = audio::time_features_audio(s);
        CHECK(f.rms == doctest::Approx(0.4));
        CHECK(f.zcr == doctest::Approx(0.0));
        CHECK(f.crest == doctest::Approx(1.0));
    }
    SUBCASE("sine crest factor is sqrt(2)") {
        const AudioSignal s = testsup::tone(200.0, 8000.0, 1.0);  // 200 cycles
        const auto f = audio::time_features_audio(s);
        CHECK(f.crest == doctest::Approx(std::numbers::sqrt2).epsilon(0.01));
    }
    SUBCASE("1 kHz sine at 8 kHz for 0.8 s crosses 1600 +- 2 times") {
        const AudioSignal s = testsup::tone(1000.0, 8000.0, 0.8);
        const auto f = audio::time_features_audio(s);
        const double count = f.zcr * static_cast<double>(s.samples.size() - 1);
        CHECK(count >= 1598.0);
        CHECK(count <= 1602.0);
        // Independent recount.
        int direct = 0;
        for (std::size_t i = 1; i < s.samples.size(); ++i) {
            if ((s.samples[i - 1] >= 0.0) != (s.samples[i] >= 0.0)) ++direct;
        }
        CHECK(count == doctest::Approx(static_cast<double>(direct)));
    }
}

TEST_CASE("eepd") {
    SUBCASE("silence counts zero everywhere") {
        AudioSignal z;
        z.fs = 8000.0;
        z.samples.assign(6400, 0.0);
        const auto counts = audio::eepd(z);
        REQUIRE(counts.size() == 19);
        for (int c : counts) CHECK(c == 0);
    }
    SUBCASE("19 EEPD bands plus 3 named features make 22 time-domain features") {
        int time_count = 0;
        for (const auto& f : registry::audio_features()) {
            if (f.group == "time" || f.group == "eepd") ++time_count;
        }
        CHECK(time_count == 22);
    }
    SUBCASE("amplitude modulation lands in the carrier band") {
        AudioSignal s;
        s.fs = 8000.0;
        s.samples.resize(6400);
        for (std::size_t i = 0; i < s.samples.size(); ++i) {
            const double t = static_cast<double>(i) / s.fs;
            s.samples[i] = (1.0 + 0.8 * std::cos(2.0 * std::numbers::pi * 100.0 * t)) *
                           std::cos(2.0 * std::numbers::pi * 500.0 * t);
        }
        const auto counts = audio::eepd(s);
        const int carrier_band = 8;  // 450-500 Hz
        for (std::size_t b = 0; b < counts.size(); ++b) {
            CHECK(counts[carrier_band] >= counts[b]);
        }
    }
}

TEST_CASE("masked audio extraction") {
    fixtures::Rng rng(77);
    const AudioSignal w = testsup::noise_window(rng, 6400);
    const SubjectMeta meta{1, 24.0};

    SUBCASE("a single Mel feature equals the unmasked value") {
        const auto masked = audio::extract_audio_features(w, {"audio/mel60/max"}, meta);
        REQUIRE(masked.size() == 1);
        std::set<std::string> full(registry::audio_name_set());
        const auto everything = audio::extract_audio_features(w, full, meta);
        CHECK(masked.at("audio/mel60/max") == everything.at("audio/mel60/max"));
    }

    SUBCASE("84-name mask returns 84 values") {
        std::set<std::string> mask;
        const auto names = registry::audio_names("mel");
        for (std::size_t i = 0; i < names.size() && mask.size() < 84; i += 3) {
            mask.insert(names[i]);
        }
        REQUIRE(mask.size() == 84);
        const auto f = audio::extract_audio_features(w, mask, meta);
        CHECK(f.size() == 84);
    }

    SUBCASE("full Mel-variant mask returns 14 + 256 + 22 + 1 = 293 values") {
        const auto names = registry::audio_names("mel");
        const std::set<std::string> mask(names.begin(), names.end());
        REQUIRE(mask.size() == 293);
        const auto f = audio::extract_audio_features(w, mask, meta);
        CHECK(f.size() == 293);
        for (const auto& [name, v] : f.values()) CHECK(std::isfinite(v));
    }

    SUBCASE("unknown names are rejected and listed") {
        CHECK_THROWS_WITH_AS(
            audio::extract_audio_features(w, {"audio/bogus/thing"}, meta),
            doctest::Contains("audio/bogus/thing"), std::invalid_argument);
    }

    SUBCASE("masking is a projection of the full extraction") {
        std::set<std::string> full(registry::audio_name_set());
        const auto everything = audio::extract_audio_features(w, full, meta);
        fixtures::Rng pick(123);
        std::set<std::string> mask;
        for (const auto& name : full) {
            if (pick.next_double() < 0.2) mask.insert(name);
        }
        REQUIRE(!mask.empty());
        const auto projected = audio::extract_audio_features(w, mask, meta);
        CHECK(projected.size() == mask.size());
        for (const auto& name : mask) {
            CHECK(projected.at(name) == everything.at(name));  // bit-exact
        }
    }

    SUBCASE("all-zero window yields finite features") {
        AudioSignal z;
        z.fs = 8000.0;
        z.samples.assign(6400, 0.0);
        std::set<std::string> full(registry::audio_name_set());
        const auto f = audio::extract_audio_features(z, full, meta);
        for (const auto& [name, v] : f.values()) CHECK(std::isfinite(v));
    }

    SUBCASE("window/config mismatch is rejected") {
        AudioSignal bad = w;
        bad.samples.resize(4000);
        CHECK_THROWS_AS(audio::extract_audio_features(bad, {"audio/time/rms"}, meta),
                        std::invalid_argument);
    }
}

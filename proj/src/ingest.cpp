#include "coughkit/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

#include "coughkit/error.hpp"
#include "json.hpp"

namespace coughkit::ingest {

namespace {

constexpr int kFirTaps = 63;

/// Windowed-sinc low-pass, Hamming window, unity DC gain.
std::vector<double> design_lowpass(double cutoff_norm) {
    std::vector<double> h(kFirTaps);
    const int mid = kFirTaps / 2;
    double sum = 0.0;
    for (int i = 0; i < kFirTaps; ++i) {
        const int n = i - mid;
        const double x = 2.0 * cutoff_norm * n;
        const double sinc = n == 0 ? 1.0 : std::sin(std::numbers::pi * x) / (std::numbers::pi * x);
        const double w = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (kFirTaps - 1));
        h[i] = 2.0 * cutoff_norm * sinc * w;
        sum += h[i];
    }
    for (double& v : h) v /= sum;
    return h;
}

}  // namespace

AudioSignal decimate(const AudioSignal& signal, int factor) {
    if (factor < 1) throw std::invalid_argument("ingest: decimation factor must be >= 1");
    if (factor == 1) return signal;
    if (signal.samples.size() < static_cast<std::size_t>(kFirTaps)) {
        throw std::invalid_argument("ingest: signal shorter than the anti-alias filter (" +
                                    std::to_string(kFirTaps) + " taps)");
    }
    // Cutoff at 0.8x the new Nyquist, normalized to the input rate.
    const double cutoff_norm = 0.8 * 0.5 / factor;
    const std::vector<double> h = design_lowpass(cutoff_norm);
    const int mid = kFirTaps / 2;
    const auto& x = signal.samples;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());

    AudioSignal out;
    out.fs = signal.fs / factor;
    out.t0 = signal.t0;
    out.samples.reserve(x.size() / factor + 1);
    for (std::ptrdiff_t i = 0; i < n; i += factor) {
        double acc = 0.0;
        for (int k = 0; k < kFirTaps; ++k) {
            const std::ptrdiff_t j = i + mid - k;  // group delay compensated
            if (j >= 0 && j < n) acc += h[k] * x[j];
        }
        out.samples.push_back(acc);
    }
    return out;
}

std::vector<WindowSpan> frame_stream(double fs, double t0, std::size_t n_samples,
                                     double window_len_s, double hop_s) {
    if (hop_s <= 0.0) throw std::invalid_argument("ingest: hop must be positive");
    if (hop_s > window_len_s + 0.5 / fs) {
        throw std::invalid_argument("ingest: hop must not exceed the window length");
    }
    const std::size_t win = static_cast<std::size_t>(std::llround(window_len_s * fs));
    const std::size_t hop = static_cast<std::size_t>(std::llround(hop_s * fs));
    if (win == 0 || hop == 0) throw std::invalid_argument("ingest: window/hop below one sample");

    std::vector<WindowSpan> spans;
    if (n_samples < win) return spans;
    const std::size_t count = (n_samples - win) / hop + 1;
    spans.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        WindowSpan s;
        s.first = k * hop;
        s.count = win;
        s.t_start = t0 + static_cast<double>(s.first) / fs;
        s.t_end = s.t_start + static_cast<double>(win) / fs;
        spans.push_back(s);
    }
    return spans;
}

AudioSignal slice(const AudioSignal& signal, const WindowSpan& span) {
    AudioSignal out;
    out.fs = signal.fs;
    out.t0 = span.t_start;
    out.samples.assign(signal.samples.begin() + span.first,
                       signal.samples.begin() + span.first + span.count);
    return out;
}

KinematicSignal slice(const KinematicSignal& signal, const WindowSpan& span) {
    KinematicSignal out;
    out.fs = signal.fs;
    out.t0 = span.t_start;
    for (int c = 0; c < kNumKinChannels; ++c) {
        out.channels[c].assign(signal.channels[c].begin() + span.first,
                               signal.channels[c].begin() + span.first + span.count);
    }
    return out;
}

namespace {

template <typename T>
T read_le(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

template <typename T>
void write_le(std::ostream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

}  // namespace

AudioSignal load_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("ingest: cannot open " + path);

    char tag[4];
    in.read(tag, 4);
    if (std::memcmp(tag, "RIFF", 4) != 0) throw ParseError("ingest: " + path + ": not a RIFF file");
    read_le<std::uint32_t>(in);
    in.read(tag, 4);
    if (std::memcmp(tag, "WAVE", 4) != 0) throw ParseError("ingest: " + path + ": not a WAVE file");

    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t fs = 0;
    bool have_fmt = false;
    AudioSignal out;
    while (in.read(tag, 4)) {
        const std::uint32_t chunk_size = read_le<std::uint32_t>(in);
        if (std::memcmp(tag, "fmt ", 4) == 0) {
            format = read_le<std::uint16_t>(in);
            channels = read_le<std::uint16_t>(in);
            fs = read_le<std::uint32_t>(in);
            read_le<std::uint32_t>(in);  // byte rate
            read_le<std::uint16_t>(in);  // block align
            bits = read_le<std::uint16_t>(in);
            in.ignore(chunk_size > 16 ? chunk_size - 16 : 0);
            have_fmt = true;
        } else if (std::memcmp(tag, "data", 4) == 0) {
            if (!have_fmt) throw ParseError("ingest: " + path + ": data chunk before fmt");
            if (format != 1 || channels != 1 || bits != 16) {
                throw ParseError("ingest: " + path + ": expected PCM 16-bit mono");
            }
            const std::size_t n = chunk_size / 2;
            out.samples.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                out.samples[i] = static_cast<double>(read_le<std::int16_t>(in)) / 32768.0;
            }
            out.fs = static_cast<double>(fs);
            return out;
        } else {
            in.ignore(chunk_size + (chunk_size & 1));
        }
    }
    throw ParseError("ingest: " + path + ": no data chunk found");
}

void save_wav(const std::string& path, const AudioSignal& signal) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("ingest: cannot write " + path);
    const std::uint32_t data_bytes = static_cast<std::uint32_t>(signal.samples.size() * 2);
    const std::uint32_t fs = static_cast<std::uint32_t>(std::llround(signal.fs));
    out.write("RIFF", 4);
    write_le<std::uint32_t>(out, 36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    write_le<std::uint32_t>(out, 16);
    write_le<std::uint16_t>(out, 1);   // PCM
    write_le<std::uint16_t>(out, 1);   // mono
    write_le<std::uint32_t>(out, fs);
    write_le<std::uint32_t>(out, fs * 2);
    write_le<std::uint16_t>(out, 2);
    write_le<std::uint16_t>(out, 16);
    out.write("data", 4);
    write_le<std::uint32_t>(out, data_bytes);
    for (double v : signal.samples) {
        const double clipped = std::clamp(v, -1.0, 1.0);
        write_le<std::int16_t>(out, static_cast<std::int16_t>(std::lround(clipped * 32767.0)));
    }
}

KinematicSignal load_kinematic_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("ingest: cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw ParseError("ingest: " + path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string expected = "t,ax,ay,az,yaw,pitch,roll";
    {
        std::stringstream hs(line), es(expected);
        std::string hcol, ecol;
        while (std::getline(es, ecol, ',')) {
            if (!std::getline(hs, hcol, ',') || hcol != ecol) {
                throw ParseError("ingest: " + path + ": missing or misnamed column '" + ecol +
                                 "' in header '" + line + "'");
            }
        }
    }

    std::vector<double> t;
    KinematicSignal out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        double row[7];
        for (int c = 0; c < 7; ++c) {
            if (!std::getline(ss, cell, ',')) {
                throw ParseError("ingest: " + path + ": line " + std::to_string(line_no) +
                                 ": expected 7 columns");
            }
            try {
                row[c] = std::stod(cell);
            } catch (const std::exception&) {
                throw ParseError("ingest: " + path + ": line " + std::to_string(line_no) +
                                 ": bad number '" + cell + "'");
            }
        }
        t.push_back(row[0]);
        out.channel(KinChannel::kAccelX).push_back(row[1]);
        out.channel(KinChannel::kAccelY).push_back(row[2]);
        out.channel(KinChannel::kAccelZ).push_back(row[3]);
        out.channel(KinChannel::kYaw).push_back(row[4]);
        out.channel(KinChannel::kPitch).push_back(row[5]);
        out.channel(KinChannel::kRoll).push_back(row[6]);
    }
    if (t.size() < 2) throw ParseError("ingest: " + path + ": need at least two samples");
    out.t0 = t.front();
    out.fs = static_cast<double>(t.size() - 1) / (t.back() - t.front());
    out.compute_norms();
    return out;
}

void save_kinematic_csv(const std::string& path, const KinematicSignal& signal) {
    std::ofstream out(path);
    if (!out) throw ParseError("ingest: cannot write " + path);
    out << "t,ax,ay,az,yaw,pitch,roll\n";
    out.precision(10);
    for (std::size_t i = 0; i < signal.length(); ++i) {
        out << signal.t0 + static_cast<double>(i) / signal.fs << ','
            << signal.channel(KinChannel::kAccelX)[i] << ','
            << signal.channel(KinChannel::kAccelY)[i] << ','
            << signal.channel(KinChannel::kAccelZ)[i] << ','
            << signal.channel(KinChannel::kYaw)[i] << ','
            << signal.channel(KinChannel::kPitch)[i] << ','
            << signal.channel(KinChannel::kRoll)[i] << '\n';
    }
}

AnnotationSet load_annotations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("ingest: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("ingest: " + path + ": " + e.what());
    }
    AnnotationSet out;
    if (!j.contains("events") || !j["events"].is_array()) {
        throw ParseError("ingest: " + path + ": missing 'events' array");
    }
    for (const auto& e : j["events"]) {
        if (!e.contains("start") || !e.contains("end")) {
            throw ParseError("ingest: " + path + ": event missing start/end");
        }
        out.events.push_back({e["start"].get<double>(), e["end"].get<double>()});
    }
    if (j.contains("scenario")) out.scenario = j["scenario"].get<std::string>();
    try {
        out.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError("ingest: " + path + ": " + e.what());
    }
    return out;
}

void save_annotations(const std::string& path, const AnnotationSet& annotations) {
    nlohmann::json j;
    j["events"] = nlohmann::json::array();
    for (const auto& e : annotations.events) {
        j["events"].push_back({{"start", e.start}, {"end", e.end}});
    }
    if (!annotations.scenario.empty()) j["scenario"] = annotations.scenario;
    std::ofstream out(path);
    if (!out) throw ParseError("ingest: cannot write " + path);
    out << j.dump(2) << '\n';
}

SubjectMeta load_meta(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("ingest: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("ingest: " + path + ": " + e.what());
    }
    SubjectMeta meta;
    if (!j.contains("gender") || !j.contains("bmi")) {
        throw ParseError("ingest: " + path + ": meta needs 'gender' and 'bmi'");
    }
    meta.gender = j["gender"].get<int>();
    meta.bmi = j["bmi"].get<double>();
    if (meta.gender != 0 && meta.gender != 1) {
        throw ParseError("ingest: " + path + ": gender must be 0 or 1");
    }
    if (!(meta.bmi > 0)) throw ParseError("ingest: " + path + ": bmi must be positive");
    return meta;
}

void save_meta(const std::string& path, const SubjectMeta& meta) {
    nlohmann::json j{{"gender", meta.gender}, {"bmi", meta.bmi}};
    std::ofstream out(path);
    if (!out) throw ParseError("ingest: cannot write " + path);
    out << j.dump(2) << '\n';
}

Recording load_recording(const std::string& audio_path, const std::string& imu_path,
                         const std::string& annotation_path, const SubjectMeta& meta) {
    Recording rec;
    rec.audio = load_wav(audio_path);
    rec.kinematic = load_kinematic_csv(imu_path);
    rec.annotations = load_annotations(annotation_path);
    rec.meta = meta;
    if (std::fabs(rec.audio.duration() - rec.kinematic.duration()) > 1.0) {
        throw ParseError("ingest: audio/kinematic durations differ by more than 1 s (" +
                         std::to_string(rec.audio.duration()) + " vs " +
                         std::to_string(rec.kinematic.duration()) + ")");
    }
    return rec;
}

}  // namespace coughkit::ingest

#include "coughkit/registry.hpp"

#include <stdexcept>

#include "json.hpp"

namespace coughkit::registry {

namespace {

const char* kStatDesc[4][2] = {
    {"mean", "arithmetic mean over frames"},
    {"std", "population standard deviation over frames"},
    {"max", "maximum over frames"},
    {"entropy", "Shannon entropy (natural log) of |values| normalized to sum 1; 0 for all-zero"},
};

std::vector<FeatureInfo> build_audio() {
    std::vector<FeatureInfo> f;
    auto add = [&](const std::string& name, const std::string& group, const std::string& desc) {
        f.push_back({name, Modality::kAudio, group, desc});
    };

    add("audio/spec/decrease", "spectral",
        "sum_k (p_k - p_0)/k / sum_k p_k over Welch PSD bins k >= 1");
    add("audio/spec/slope", "spectral", "least-squares slope of PSD values against frequency");
    add("audio/spec/rolloff", "spectral", "lowest frequency holding 85% of cumulative PSD energy");
    add("audio/spec/skew", "spectral", "third standardized moment of the PSD-weighted frequency");
    add("audio/spec/centroid", "spectral", "PSD-weighted mean frequency");
    add("audio/spec/spread", "spectral", "PSD-weighted frequency standard deviation");
    add("audio/spec/flatness", "spectral",
        "geometric mean / arithmetic mean of PSD values; 1 for flat or zero-power spectra");
    add("audio/spec/std", "spectral", "population standard deviation of PSD values");
    add("audio/spec/entropy", "spectral",
        "Shannon entropy (natural log) of the PSD normalized to sum 1");
    add("audio/spec/dominant_freq", "spectral", "frequency of the PSD argmax bin");
    // The summary set for the power-spectral-density entry (mean, std, max,
    // total) is a convention of this library; only the entry itself is fixed
    // by the feature table.
    add("audio/spec/psd_mean", "spectral", "mean PSD value");
    add("audio/spec/psd_std", "spectral", "standard deviation of PSD values (same as spec/std)");
    add("audio/spec/psd_max", "spectral", "maximum PSD value");
    add("audio/spec/psd_power", "spectral", "total PSD power (sum over bins)");

    for (int band = 0; band < 64; ++band) {
        for (const auto& stat : kStatDesc) {
            add("audio/mel" + std::to_string(band) + "/" + stat[0], "mel",
                std::string("Mel band ") + std::to_string(band) + ": " + stat[1]);
        }
    }
    for (int c = 0; c < 13; ++c) {
        for (const auto& stat : kStatDesc) {
            add("audio/mfcc" + std::to_string(c) + "/" + stat[0], "mfcc",
                std::string("MFCC coefficient ") + std::to_string(c) + ": " + stat[1]);
        }
    }

    add("audio/time/rms", "time", "sqrt(mean x^2)");
    add("audio/time/zcr", "time", "sign changes / (n-1)");
    add("audio/time/crest", "time", "max|x| / RMS; 0 for a silent window");
    for (int band = 0; band < 19; ++band) {
        const int lo = 50 + 50 * band;
        add("audio/eepd" + std::to_string(band), "eepd",
            "energy-envelope peak count in the " + std::to_string(lo) + "-" +
                std::to_string(lo + 50) + " Hz band");
    }
    add("meta/gender", "meta", "subject gender code (0/1)");
    return f;
}

std::vector<FeatureInfo> build_kinematic() {
    std::vector<FeatureInfo> f;
    auto add = [&](const std::string& name, const std::string& group, const std::string& desc) {
        f.push_back({name, Modality::kKinematic, group, desc});
    };
    for (const auto& ch : kin_channel_names()) {
        const std::string base = "kin/" + ch + "/";
        add(base + "zcr", "stats", ch + ": sign changes / (n-1)");
        add(base + "rms", "stats", ch + ": sqrt(mean x^2)");
        add(base + "crest", "stats", ch + ": max|x| / RMS");
        add(base + "kurtosis", "stats", ch + ": Fisher kurtosis (normal -> 0)");
        add(base + "line_length", "stats", ch + ": sum |x[i+1] - x[i]|");
        for (int e = 3; e <= 10; ++e) {
            add(base + "azc" + std::to_string(e), "azc",
                ch + ": approximate zero crossings at epsilon " + std::to_string(e) +
                    "/10 on the standardized window");
        }
    }
    add("meta/gender", "meta", "subject gender code (0/1)");
    add("meta/bmi", "meta", "subject body-mass index, kg/m^2");
    return f;
}

}  // namespace

const std::vector<FeatureInfo>& audio_features() {
    static const std::vector<FeatureInfo> f = build_audio();
    return f;
}

const std::vector<FeatureInfo>& kinematic_features() {
    static const std::vector<FeatureInfo> f = build_kinematic();
    return f;
}

std::vector<std::string> audio_names(const std::string& variant) {
    if (variant != "mel" && variant != "mfcc") {
        throw std::invalid_argument("registry: variant must be 'mel' or 'mfcc'");
    }
    std::vector<std::string> names;
    for (const auto& f : audio_features()) {
        if (variant == "mel" && f.group == "mfcc") continue;
        if (variant == "mfcc" && f.group == "mel") continue;
        names.push_back(f.name);
    }
    return names;
}

std::vector<std::string> kinematic_names() {
    std::vector<std::string> names;
    for (const auto& f : kinematic_features()) names.push_back(f.name);
    return names;
}

const std::set<std::string>& audio_name_set() {
    static const std::set<std::string> s = [] {
        std::set<std::string> out;
        for (const auto& f : audio_features()) out.insert(f.name);
        return out;
    }();
    return s;
}

const std::set<std::string>& kinematic_name_set() {
    static const std::set<std::string> s = [] {
        std::set<std::string> out;
        for (const auto& f : kinematic_features()) out.insert(f.name);
        return out;
    }();
    return s;
}

bool is_known(Modality modality, const std::string& name) {
    const auto& s = modality == Modality::kAudio ? audio_name_set() : kinematic_name_set();
    return s.count(name) != 0;
}

std::size_t registry_index(Modality modality, const std::string& name) {
    const auto& list = modality == Modality::kAudio ? audio_features() : kinematic_features();
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (list[i].name == name) return i;
    }
    throw std::invalid_argument("registry: unknown feature: " + name);
}

std::string registry_json() {
    nlohmann::json j;
    for (const auto* list : {&audio_features(), &kinematic_features()}) {
        for (const auto& f : *list) {
            nlohmann::json e{{"name", f.name}, {"group", f.group}, {"description", f.description}};
            j[to_string(f.modality)].push_back(e);
        }
    }
    return j.dump(2);
}

}  // namespace coughkit::registry

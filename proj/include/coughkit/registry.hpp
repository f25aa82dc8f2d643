#pragma once

#include <set>
#include <string>
#include <vector>

#include "coughkit/types.hpp"

namespace coughkit::registry {

struct FeatureInfo {
    std::string name;
    Modality modality;
    std::string group;        // spectral | mel | mfcc | time | eepd | azc | stats | meta
    std::string description;  // formula or definition
};

/// Canonical audio feature order: 14 spectral, 256 Mel summaries,
/// 52 MFCC summaries, 3 time-domain, 19 EEPD, gender.
const std::vector<FeatureInfo>& audio_features();

/// Canonical kinematic feature order: 13 per channel in channel order,
/// then gender and BMI (106 total).
const std::vector<FeatureInfo>& kinematic_features();

/// Audio names restricted to one Mel-summary variant: `mel` keeps the 256
/// Mel features (293 names total), `mfcc` keeps the 52 MFCC features.
std::vector<std::string> audio_names(const std::string& variant = "mel");

std::vector<std::string> kinematic_names();

/// Full name sets for mask validation (registry + meta names).
const std::set<std::string>& audio_name_set();
const std::set<std::string>& kinematic_name_set();

bool is_known(Modality modality, const std::string& name);

/// Position of a name in the canonical per-modality order; throws
/// std::invalid_argument for unknown names. Used for deterministic
/// tie-breaking.
std::size_t registry_index(Modality modality, const std::string& name);

/// Machine-readable registry dump (JSON text).
std::string registry_json();

}  // namespace coughkit::registry

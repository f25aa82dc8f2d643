#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coughkit/types.hpp"

namespace coughkit::inference {

/// One node of a boosted tree, flattened into a per-tree array. Internal
/// nodes route on `feature < threshold` (strict); `default_left` handles
/// missing features when set.
struct TreeNode {
    bool is_leaf = false;
    double leaf_score = 0.0;  // additive log-odds contribution

    int feature_index = -1;  // into TreeEnsemble::feature_names
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::optional<bool> default_left;
};

struct EnsembleMeta {
    Modality modality = Modality::kAudio;
    double window_len_s = 0.8;
    double fs = 8000.0;
    std::set<std::string> mask;  // names the model may request
};

/// Portable additive-tree binary classifier bound to named features.
struct TreeEnsemble {
    std::vector<std::vector<TreeNode>> trees;
    double base_score = 0.0;  // log-odds offset
    std::vector<std::string> feature_names;
    EnsembleMeta meta;
};

/// Parses and validates the JSON model format. Unknown feature names,
/// out-of-range child indices and cyclic trees raise ParseError.
TreeEnsemble load_model(const std::string& path);
TreeEnsemble parse_model_json(const std::string& json_text, const std::string& origin = "<memory>");
std::string model_to_json(const TreeEnsemble& model);

/// p = logistic(base_score + sum of leaf scores). A missing feature
/// without a default branch raises InferenceError naming it.
double predict_proba(const TreeEnsemble& model, const FeatureVector& features);

/// Split counts per feature across all trees. Every declared feature is
/// present, unused ones with count 0.
std::map<std::string, int> feature_importance(const TreeEnsemble& model);

/// Same counts normalized to percentages (sum 100 when any split exists).
std::map<std::string, double> feature_importance_pct(const TreeEnsemble& model);

/// Removes the k lowest-count names; ties are broken by registry order
/// (later names eliminated first). Returns the surviving names in
/// registry order.
std::vector<std::string> eliminate_lowest(const std::map<std::string, int>& importances,
                                          Modality modality, int k = 10);

}  // namespace coughkit::inference

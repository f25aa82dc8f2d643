#include "coughkit/inference.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "coughkit/error.hpp"
#include "coughkit/registry.hpp"
#include "json.hpp"

namespace coughkit::inference {

namespace {

void validate_tree(const std::vector<TreeNode>& tree, std::size_t tree_idx,
                   const std::string& origin) {
    if (tree.empty()) throw ParseError("inference: " + origin + ": empty tree");
    const auto fail = [&](const std::string& what) {
        throw ParseError("inference: " + origin + ": tree " + std::to_string(tree_idx) + ": " +
                         what);
    };
    std::vector<int> state(tree.size(), 0);  // 0 unseen, 1 on stack, 2 done
    std::function<void(int)> visit = [&](int idx) {
        if (idx < 0 || idx >= static_cast<int>(tree.size())) {
            fail("child index " + std::to_string(idx) + " out of range");
        }
        if (state[idx] == 1) fail("cycle through node " + std::to_string(idx));
        if (state[idx] == 2) fail("node " + std::to_string(idx) + " reachable twice");
        state[idx] = 1;
        if (!tree[idx].is_leaf) {
            visit(tree[idx].left);
            visit(tree[idx].right);
        }
        state[idx] = 2;
    };
    visit(0);
}

}  // namespace

TreeEnsemble parse_model_json(const std::string& json_text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("inference: " + origin + ": " + e.what());
    }

    TreeEnsemble model;
    try {
        model.meta.modality = modality_from_string(j.at("modality").get<std::string>());
        model.base_score = j.at("base_score").get<double>();
        model.meta.window_len_s = j.at("window_len_s").get<double>();
        model.meta.fs = j.at("fs_hz").get<double>();
        model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("inference: " + origin + ": " + e.what());
    }

    for (const auto& name : model.feature_names) {
        if (!registry::is_known(model.meta.modality, name)) {
            throw ParseError("inference: " + origin + ": unknown feature name: " + name);
        }
    }

    std::map<std::string, int> name_index;
    for (std::size_t i = 0; i < model.feature_names.size(); ++i) {
        name_index[model.feature_names[i]] = static_cast<int>(i);
    }

    if (!j.contains("trees") || !j["trees"].is_array()) {
        throw ParseError("inference: " + origin + ": missing 'trees' array");
    }
    for (std::size_t t = 0; t < j["trees"].size(); ++t) {
        std::vector<TreeNode> tree;
        for (const auto& nj : j["trees"][t]) {
            TreeNode node;
            if (nj.contains("leaf")) {
                node.is_leaf = true;
                node.leaf_score = nj["leaf"].get<double>();
            } else {
                const std::string fname = nj.at("f").get<std::string>();
                auto it = name_index.find(fname);
                if (it == name_index.end()) {
                    throw ParseError("inference: " + origin + ": split feature '" + fname +
                                     "' not in feature_names");
                }
                node.feature_index = it->second;
                node.threshold = nj.at("t").get<double>();
                node.left = nj.at("l").get<int>();
                node.right = nj.at("r").get<int>();
                if (nj.contains("d")) {
                    const std::string d = nj["d"].get<std::string>();
                    if (d != "l" && d != "r") {
                        throw ParseError("inference: " + origin + ": default branch must be l or r");
                    }
                    node.default_left = (d == "l");
                }
            }
            tree.push_back(node);
        }
        validate_tree(tree, t, origin);
        model.trees.push_back(std::move(tree));
    }

    // The request mask: names used by splits plus the declared extras.
    model.meta.mask.insert(model.feature_names.begin(), model.feature_names.end());
    return model;
}

TreeEnsemble load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("inference: cannot open model file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model_json(ss.str(), path);
}

std::string model_to_json(const TreeEnsemble& model) {
    nlohmann::json j;
    j["modality"] = to_string(model.meta.modality);
    j["base_score"] = model.base_score;
    j["window_len_s"] = model.meta.window_len_s;
    j["fs_hz"] = model.meta.fs;
    j["feature_names"] = model.feature_names;
    j["trees"] = nlohmann::json::array();
    for (const auto& tree : model.trees) {
        nlohmann::json tj = nlohmann::json::array();
        for (const auto& node : tree) {
            if (node.is_leaf) {
                tj.push_back({{"leaf", node.leaf_score}});
            } else {
                nlohmann::json nj{{"f", model.feature_names[node.feature_index]},
                                  {"t", node.threshold},
                                  {"l", node.left},
                                  {"r", node.right}};
                if (node.default_left) nj["d"] = *node.default_left ? "l" : "r";
                tj.push_back(nj);
            }
        }
        j["trees"].push_back(tj);
    }
    return j.dump(2);
}

double predict_proba(const TreeEnsemble& model, const FeatureVector& features) {
    double score = model.base_score;
    for (const auto& tree : model.trees) {
        int idx = 0;
        while (!tree[idx].is_leaf) {
            const TreeNode& node = tree[idx];
            const std::string& name = model.feature_names[node.feature_index];
            if (features.has(name)) {
                idx = features.at(name) < node.threshold ? node.left : node.right;
            } else if (node.default_left) {
                idx = *node.default_left ? node.left : node.right;
            } else {
                throw InferenceError("inference: missing feature without default branch: " + name);
            }
        }
        score += tree[idx].leaf_score;
    }
    return 1.0 / (1.0 + std::exp(-score));
}

std::map<std::string, int> feature_importance(const TreeEnsemble& model) {
    std::map<std::string, int> counts;
    for (const auto& name : model.feature_names) counts[name] = 0;
    for (const auto& tree : model.trees) {
        for (const auto& node : tree) {
            if (!node.is_leaf) counts[model.feature_names[node.feature_index]] += 1;
        }
    }
    return counts;
}

std::map<std::string, double> feature_importance_pct(const TreeEnsemble& model) {
    const auto counts = feature_importance(model);
    int total = 0;
    for (const auto& [name, c] : counts) total += c;
    std::map<std::string, double> pct;
    for (const auto& [name, c] : counts) {
        pct[name] = total > 0 ? 100.0 * static_cast<double>(c) / static_cast<double>(total) : 0.0;
    }
    return pct;
}

std::vector<std::string> eliminate_lowest(const std::map<std::string, int>& importances,
                                          Modality modality, int k) {
    if (k >= static_cast<int>(importances.size())) {
        throw std::invalid_argument("inference: k must be smaller than the feature count");
    }
    struct Entry {
        std::string name;
        int count;
        std::size_t reg_idx;
    };
    std::vector<Entry> entries;
    entries.reserve(importances.size());
    for (const auto& [name, count] : importances) {
        entries.push_back({name, count, registry::registry_index(modality, name)});
    }
    // Removal order: lowest count first; ties drop later registry entries.
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.count != b.count) return a.count < b.count;
        return a.reg_idx > b.reg_idx;
    });
    entries.erase(entries.begin(), entries.begin() + k);
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.reg_idx < b.reg_idx; });
    std::vector<std::string> kept;
    kept.reserve(entries.size());
    for (const auto& e : entries) kept.push_back(e.name);
    return kept;
}

}  // namespace coughkit::inference

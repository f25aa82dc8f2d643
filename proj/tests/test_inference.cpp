#include <cmath>

#include "coughkit/error.hpp"
#include "coughkit/fixtures.hpp"
#include "coughkit/inference.hpp"
#include "coughkit/registry.hpp"
#include "doctest.h"
#include "json.hpp"
#include "test_support.hpp"

using namespace coughkit;
using namespace coughkit::inference;

namespace {

nlohmann::json stump_json(const std::string& feature = "audio/time/rms", double threshold = 1.0,
                          double lo = -2.0, double hi = 2.0) {
    return nlohmann::json{
        {"modality", "audio"},
        {"base_score", 0.0},
        {"window_len_s", 0.8},
        {"fs_hz", 8000.0},
        {"feature_names", {feature}},
        {"trees",
         {{{{"f", feature}, {"t", threshold}, {"l", 1}, {"r", 2}},
           {{"leaf", lo}},
           {{"leaf", hi}}}}},
    };
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

TEST_CASE("model loading and validation") {
    SUBCASE("single stump parses to 1 tree with 3 nodes") {
        const auto model = parse_model_json(stump_json().dump());
        REQUIRE(model.trees.size() == 1);
        CHECK(model.trees[0].size() == 3);
        CHECK(model.meta.modality == Modality::kAudio);
    }
    SUBCASE("the mask includes every declared feature") {
        const auto model = parse_model_json(stump_json("audio/mel60/max").dump());
        CHECK(model.meta.mask.count("audio/mel60/max") == 1);
    }
    SUBCASE("out-of-range child index fails") {
        auto j = stump_json();
        j["trees"][0][0]["r"] = 7;
        CHECK_THROWS_AS(parse_model_json(j.dump()), ParseError);
    }
    SUBCASE("cyclic tree fails") {
        auto j = stump_json();
        j["trees"][0][0]["r"] = 0;
        CHECK_THROWS_AS(parse_model_json(j.dump()), ParseError);
    }
    SUBCASE("unknown feature name fails and is listed") {
        CHECK_THROWS_WITH_AS(parse_model_json(stump_json("audio/nothing").dump()),
                             doctest::Contains("audio/nothing"), ParseError);
    }
    SUBCASE("round trip through the JSON writer") {
        const auto model = parse_model_json(stump_json().dump());
        const auto again = parse_model_json(model_to_json(model));
        CHECK(again.trees.size() == model.trees.size());
        CHECK(again.base_score == model.base_score);
        CHECK(again.feature_names == model.feature_names);
    }
}

TEST_CASE("predict_proba") {
    SUBCASE("empty ensemble with zero base score predicts 0.5") {
        TreeEnsemble empty;
        CHECK(predict_proba(empty, {}) == doctest::Approx(0.5));
    }
    SUBCASE("hand-traced stump") {
        const auto model = parse_model_json(stump_json("audio/time/rms", 1.0, -2.0, 2.0).dump());
        FeatureVector f;
        f.set("audio/time/rms", 5.0);
        CHECK(predict_proba(model, f) == doctest::Approx(logistic(2.0)));
        CHECK(predict_proba(model, f) == doctest::Approx(0.8808).epsilon(1e-4));
        f.set("audio/time/rms", 0.5);
        CHECK(predict_proba(model, f) == doctest::Approx(logistic(-2.0)));
    }
    SUBCASE("raising a leaf score raises the probability") {
        FeatureVector f;
        f.set("audio/time/rms", 5.0);
        double prev = 0.0;
        for (double hi : {0.5, 1.0, 2.0, 3.0}) {
            const auto model =
                parse_model_json(stump_json("audio/time/rms", 1.0, -2.0, hi).dump());
            const double p = predict_proba(model, f);
            CHECK(p >= prev);
            prev = p;
        }
    }
    SUBCASE("missing feature follows the default branch or fails") {
        auto j = stump_json();
        CHECK_THROWS_WITH_AS(predict_proba(parse_model_json(j.dump()), {}),
                             doctest::Contains("audio/time/rms"), InferenceError);
        j["trees"][0][0]["d"] = "l";
        CHECK(predict_proba(parse_model_json(j.dump()), {}) == doctest::Approx(logistic(-2.0)));
    }
    SUBCASE("probability stays in [0,1] and is monotone in base_score") {
        auto model = parse_model_json(stump_json().dump());
        FeatureVector f;
        f.set("audio/time/rms", 2.0);
        double prev = 0.0;
        for (double base : {-10.0, -1.0, 0.0, 1.0, 10.0}) {
            model.base_score = base;
            const double p = predict_proba(model, f);
            CHECK(p >= 0.0);
            CHECK(p <= 1.0);
            CHECK(p >= prev);
            prev = p;
        }
    }
}

TEST_CASE("feature importance") {
    SUBCASE("single stump") {
        const auto model = parse_model_json(stump_json().dump());
        const auto counts = feature_importance(model);
        CHECK(counts.at("audio/time/rms") == 1);
        CHECK(feature_importance_pct(model).at("audio/time/rms") == doctest::Approx(100.0));
    }
    SUBCASE("two trees splitting on two features") {
        nlohmann::json j = stump_json();
        j["feature_names"] = {"audio/time/rms", "audio/time/zcr"};
        const auto tree = [](const std::string& f) {
            return nlohmann::json{{{"f", f}, {"t", 0.5}, {"l", 1}, {"r", 2}},
                                  {{"leaf", -1.0}},
                                  {{"leaf", 1.0}}};
        };
        j["trees"] = {tree("audio/time/rms"), tree("audio/time/zcr"),
                      tree("audio/time/rms"), tree("audio/time/zcr")};
        const auto model = parse_model_json(j.dump());
        const auto counts = feature_importance(model);
        CHECK(counts.at("audio/time/rms") == 2);
        CHECK(counts.at("audio/time/zcr") == 2);
        const auto pct = feature_importance_pct(model);
        CHECK(pct.at("audio/time/rms") == doctest::Approx(50.0));
        CHECK(pct.at("audio/time/zcr") == doctest::Approx(50.0));
    }
    SUBCASE("random ensembles match a node enumeration oracle") {
        fixtures::Rng rng(313);
        const auto names = registry::audio_names("mel");
        for (int trial = 0; trial < 10; ++trial) {
            nlohmann::json j = stump_json();
            std::vector<std::string> used;
            for (int i = 0; i < 12; ++i) {
                used.push_back(names[static_cast<std::size_t>(rng.uniform(0, names.size()))]);
            }
            j["feature_names"] = used;
            j["trees"] = nlohmann::json::array();
            std::map<std::string, int> oracle;
            for (const auto& n : used) oracle[n] = 0;
            for (int t = 0; t < 5; ++t) {
                // Depth-2 tree: root and one internal child.
                const auto& f1 = used[static_cast<std::size_t>(rng.uniform(0, used.size()))];
                const auto& f2 = used[static_cast<std::size_t>(rng.uniform(0, used.size()))];
                oracle[f1] += 1;
                oracle[f2] += 1;
                j["trees"].push_back(nlohmann::json{
                    {{"f", f1}, {"t", 0.0}, {"l", 1}, {"r", 2}},
                    {{"f", f2}, {"t", 1.0}, {"l", 3}, {"r", 4}},
                    {{"leaf", 0.5}},
                    {{"leaf", -0.5}},
                    {{"leaf", 0.25}},
                });
            }
            const auto counts = feature_importance(parse_model_json(j.dump()));
            int total = 0;
            for (const auto& [name, c] : counts) {
                CHECK(c == oracle[name]);
                total += c;
            }
            CHECK(total == 10);  // importance sums to the internal node count
        }
    }
}

TEST_CASE("eliminate_lowest") {
    const auto names = registry::audio_names("mel");

    SUBCASE("distinct counts keep the top half") {
        std::map<std::string, int> imp;
        for (int i = 0; i < 20; ++i) imp[names[i]] = i;
        const auto kept = eliminate_lowest(imp, Modality::kAudio, 10);
        REQUIRE(kept.size() == 10);
        for (const auto& name : kept) CHECK(imp.at(name) >= 10);
    }
    SUBCASE("equal counts drop the last names in registry order") {
        std::map<std::string, int> imp;
        for (int i = 0; i < 20; ++i) imp[names[i]] = 3;
        const auto kept = eliminate_lowest(imp, Modality::kAudio, 10);
        REQUIRE(kept.size() == 10);
        // Survivors are exactly the first 10 in registry order.
        for (int i = 0; i < 10; ++i) CHECK(kept[i] == names[i]);
    }
    SUBCASE("k >= feature count is rejected") {
        std::map<std::string, int> imp{{names[0], 1}, {names[1], 2}};
        CHECK_THROWS_AS(eliminate_lowest(imp, Modality::kAudio, 2), std::invalid_argument);
    }
    SUBCASE("repeated elimination reproduces the 84-feature working set") {
        std::map<std::string, int> imp;
        fixtures::Rng rng(404);
        for (const auto& name : names) {
            imp[name] = static_cast<int>(rng.uniform(0, 50));
        }
        REQUIRE(imp.size() == 293);
        while (imp.size() > 84) {
            const int k = std::min<int>(10, static_cast<int>(imp.size()) - 84);
            const auto kept = eliminate_lowest(imp, Modality::kAudio, k);
            std::map<std::string, int> next;
            for (const auto& name : kept) next[name] = imp.at(name);
            imp = std::move(next);
        }
        CHECK(imp.size() == 84);
    }
}

#include "spearsift/rl_select.hpp"

#include "spearsift/errors.hpp"
#include "spearsift/eval.hpp"

namespace spearsift {

double aor_update(double old_aor, std::uint64_t uses_after, double reward) {
    return (static_cast<double>(uses_after - 1) * old_aor + reward) /
           static_cast<double>(uses_after);
}

FeatureId select_action(const FeatureTable& table, const FeatureSubset& subset,
                        double epsilon, Rng& rng) {
    std::vector<const FeatureId*> candidates;  // lex order, from the map
    for (const auto& [feature, entry] : table)
        if (!subset.contains(feature)) candidates.push_back(&feature);
    if (candidates.empty())
        throw ExhaustedActions("every feature is already in the subset");

    if (rng.uniform01() < epsilon)
        return *candidates[rng.uniform_index(candidates.size())];

    const FeatureId* best = candidates.front();
    for (const FeatureId* candidate : candidates)
        if (table.at(*candidate).aor > table.at(*best).aor) best = candidate;
    return *best;
}

double subset_accuracy(const FeatureSubset& subset, const RLConfig& config,
                       const Corpus& train, const TestSet& validation) {
    if (subset.empty()) return 0.0;

    Vocabulary vocab = build_vocabulary(train, subset);
    std::vector<FeatureVector> vectors;
    std::vector<std::string> labels;
    vectors.reserve(train.emails.size());
    labels.reserve(train.emails.size());
    for (const RawEmail& email : train.emails) {
        vectors.push_back(vectorize(email, vocab, subset));
        labels.push_back(email.claimed_sender);
    }
    SenderProfileModel model =
        fit_profiles(std::move(vectors), std::move(labels), config.knn_k,
                     config.distance);

    ConfusionCounts counts;
    for (const LabeledEmail& item : validation) {
        SpearVerdict verdict = detect_spear(model, item.email, vocab, subset);
        if (verdict.is_spear)
            ++(item.is_spear ? counts.tp : counts.fp);
        else
            ++(item.is_spear ? counts.fn : counts.tn);
    }
    return accuracy(counts);
}

namespace {

std::string subset_key(const FeatureSubset& subset) {
    std::string key;
    for (const FeatureId& feature : subset) {
        key += feature;
        key += '\n';
    }
    return key;
}

double cached_accuracy(const FeatureSubset& subset, const RLConfig& config,
                       const Corpus& train, const TestSet& validation,
                       AccuracyCache* cache) {
    if (!cache) return subset_accuracy(subset, config, train, validation);
    std::string key = subset_key(subset);
    auto it = cache->find(key);
    if (it != cache->end()) return it->second;
    double value = subset_accuracy(subset, config, train, validation);
    cache->emplace(std::move(key), value);
    return value;
}

}  // namespace

StepOutcome run_step(EpisodeState& state, FeatureTable& table,
                     const RLConfig& config, const Corpus& train,
                     const TestSet& validation, Rng& rng, AccuracyCache* cache) {
    FeatureId feature = select_action(table, state.subset, config.epsilon, rng);
    state.subset.insert(feature);

    const double new_accuracy =
        cached_accuracy(state.subset, config, train, validation, cache);
    const double reward = new_accuracy - state.accuracy;

    // Credited only when adding the feature changed accuracy at all.
    if (reward != 0.0) {
        AorEntry& entry = table.at(feature);
        entry.uses += 1;
        entry.aor = aor_update(entry.aor, entry.uses, reward);
    }
    state.accuracy = new_accuracy;
    return {std::move(feature), reward, new_accuracy};
}

void run_round(FeatureTable& table, const RLConfig& config, const Corpus& train,
               const TestSet& validation, Rng& rng, std::size_t round_index,
               std::vector<StepRecord>* log, AccuracyCache* cache) {
    EpisodeState state;  // fresh subset, baseline accuracy 0
    for (std::size_t step = 0; step < config.steps_per_round; ++step) {
        StepOutcome outcome = run_step(state, table, config, train, validation, rng, cache);
        if (log)
            log->push_back({round_index, step, std::move(outcome.feature),
                            outcome.reward, outcome.accuracy});
    }
}

FeatureSubset generate_subset(const FeatureTable& table) {
    FeatureSubset subset;
    for (const auto& [feature, entry] : table)
        if (entry.uses >= 1 && entry.aor > 0.0) subset.insert(feature);
    if (subset.empty())
        throw EmptyResult(
            "no feature earned a positive average reward; raise rounds or epsilon");
    return subset;
}

SelectionResult run_selection(const RLConfig& config, const Corpus& train,
                              const TestSet& validation) {
    if (config.rounds == 0) throw InvalidConfig("selection requires at least 1 round");
    if (config.steps_per_round == 0)
        throw InvalidConfig("steps_per_round must be positive");
    if (config.epsilon < 0.0 || config.epsilon > 1.0)
        throw InvalidConfig("epsilon must lie in [0, 1]");
    if (config.knn_k == 0) throw InvalidConfig("knn_k must be positive");
    if (train.emails.empty()) throw EmptyCorpus("training corpus is empty");

    const std::vector<FeatureId> features = raw_features(train);
    if (config.steps_per_round > features.size())
        throw InvalidConfig("steps_per_round " + std::to_string(config.steps_per_round) +
                            " exceeds the " + std::to_string(features.size()) +
                            " raw features");

    SelectionResult result;
    for (const FeatureId& feature : features) result.table.emplace(feature, AorEntry{});

    Rng rng(config.seed);
    AccuracyCache cache;
    for (std::size_t round = 0; round < config.rounds; ++round)
        run_round(result.table, config, train, validation, rng, round, &result.log,
                  &cache);

    result.subset = generate_subset(result.table);
    return result;
}

}  // namespace spearsift

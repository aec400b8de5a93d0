#include "glucospec/tuning.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "glucospec/errors.hpp"
#include "glucospec/pca.hpp"
#include "glucospec/standardize.hpp"

namespace glucospec {

FeatureFamily feature_family_from_string(const std::string& name) {
    if (name == "base") return FeatureFamily::Base;
    if (name == "derivative") return FeatureFamily::Derivative;
    if (name == "tbd") return FeatureFamily::Tbd;
    if (name == "adpd") return FeatureFamily::Adpd;
    throw ConfigError("unknown feature family '" + name + "'");
}

ModelFamily model_family_from_string(const std::string& name) {
    if (name == "ridge") return ModelFamily::Ridge;
    if (name == "svr") return ModelFamily::Svr;
    throw ConfigError("unknown model family '" + name + "'");
}

const char* to_string(FeatureFamily f) {
    switch (f) {
        case FeatureFamily::Base: return "base";
        case FeatureFamily::Derivative: return "derivative";
        case FeatureFamily::Tbd: return "tbd";
        case FeatureFamily::Adpd: return "adpd";
    }
    return "unknown";
}

const char* to_string(ModelFamily m) {
    return m == ModelFamily::Ridge ? "ridge" : "svr";
}

std::vector<FeatureMethod> SearchSpace::feature_methods() const {
    switch (feature_family) {
        case FeatureFamily::Base:
            return {FeatureMethod::base()};
        case FeatureFamily::Derivative:
            return {FeatureMethod::derivative(derivative_scale)};
        case FeatureFamily::Tbd: {
            std::vector<FeatureMethod> ms;
            for (double tau : feature_params)
                ms.push_back(FeatureMethod::tbd(tau, derivative_scale));
            return ms;
        }
        case FeatureFamily::Adpd: {
            std::vector<FeatureMethod> ms;
            for (double alpha : feature_params)
                ms.push_back(FeatureMethod::adpd(alpha));
            return ms;
        }
    }
    throw ConfigError("unknown feature family");
}

long SearchSpace::regressor_combinations() const {
    if (model_family == ModelFamily::Ridge)
        return static_cast<long>(ridge_alphas.size());
    return static_cast<long>(svr_cs.size() * svr_kernels.size() * svr_epsilons.size());
}

long SearchSpace::size() const {
    return static_cast<long>(feature_methods().size()) * static_cast<long>(pca_ks.size()) *
           regressor_combinations();
}

void SearchSpace::validate() const {
    if (pca_ks.empty())
        throw ConfigError("search space has an empty pca_k grid");
    for (long k : pca_ks)
        if (k < 1)
            throw ConfigError("pca_k grid values must be >= 1");
    if ((feature_family == FeatureFamily::Tbd || feature_family == FeatureFamily::Adpd) &&
        feature_params.empty())
        throw ConfigError("feature parameter grid is empty");
    for (const auto& m : feature_methods())
        m.validate();
    if (model_family == ModelFamily::Ridge) {
        if (ridge_alphas.empty())
            throw ConfigError("ridge alpha grid is empty");
        for (double a : ridge_alphas)
            if (a < 0.0)
                throw ConfigError("ridge alpha grid values must be >= 0");
    } else {
        if (svr_cs.empty() || svr_kernels.empty() || svr_epsilons.empty())
            throw ConfigError("SVR grid needs non-empty C, kernel and epsilon lists");
        for (double c : svr_cs)
            if (!(c > 0.0))
                throw ConfigError("SVR C grid values must be positive");
        for (double e : svr_epsilons)
            if (e < 0.0)
                throw ConfigError("SVR epsilon grid values must be >= 0");
    }
}

SearchSpace default_search_space(FeatureFamily feature, ModelFamily model) {
    SearchSpace s;
    s.feature_family = feature;
    s.model_family = model;
    if (feature == FeatureFamily::Tbd) {
        const double lo = 0.02, hi = 0.3;
        for (int i = 0; i < 15; ++i)
            s.feature_params.push_back(lo * std::pow(hi / lo, i / 14.0));
    } else if (feature == FeatureFamily::Adpd) {
        for (int i = 0; i < 15; ++i)
            s.feature_params.push_back(70.0 * i / 14.0);
    }
    for (long k = 1; k <= 20; ++k)
        s.pca_ks.push_back(k);
    if (model == ModelFamily::Ridge) {
        for (int i = 0; i < 10; ++i)
            s.ridge_alphas.push_back(10.0 + 10.0 * i);
    } else {
        for (int i = 0; i < 10; ++i)
            s.svr_cs.push_back(0.1 + (2.0 - 0.1) * i / 9.0);
        s.svr_kernels = {Kernel::linear(), Kernel::rbf(), Kernel::poly()};
        s.svr_epsilons = {0.1, 0.2, 0.3, 0.4, 0.5};
    }
    return s;
}

const TrialResult& SearchTrace::best() const {
    if (best_index < 0)
        throw PipelineError("search trace has no successful trial");
    return trials[best_index];
}

namespace {

struct Combo {
    ModelSpec spec;
    double primary = 0.0;  // ridge alpha or SVR C
    double epsilon = 0.0;
    long kernel_index = 0;
};

std::vector<Combo> flatten_combos(const SearchSpace& space) {
    std::vector<Combo> combos;
    if (space.model_family == ModelFamily::Ridge) {
        for (double a : space.ridge_alphas)
            combos.push_back({RidgeSpec{a}, a, 0.0, 0});
    } else {
        for (double c : space.svr_cs)
            for (std::size_t kj = 0; kj < space.svr_kernels.size(); ++kj)
                for (double e : space.svr_epsilons)
                    combos.push_back({SvrSpec{space.svr_kernels[kj], c, e}, c, e,
                                      static_cast<long>(kj)});
    }
    return combos;
}

Eigen::MatrixXd drop_row(const Eigen::MatrixXd& m, long skip) {
    Eigen::MatrixXd out(m.rows() - 1, m.cols());
    out.topRows(skip) = m.topRows(skip);
    out.bottomRows(m.rows() - 1 - skip) = m.bottomRows(m.rows() - 1 - skip);
    return out;
}

Eigen::VectorXd drop_entry(const Eigen::VectorXd& v, long skip) {
    Eigen::VectorXd out(v.size() - 1);
    out.head(skip) = v.head(skip);
    out.tail(v.size() - 1 - skip) = v.tail(v.size() - 1 - skip);
    return out;
}

}  // namespace

SearchTrace grid_search(const SpectralDataset& dataset, const SearchSpace& space,
                        const PreprocessConfig& preprocess, int threads) {
    space.validate();
    const long n = dataset.n_samples();
    if (n < 4)
        throw PipelineError("grid search needs at least 4 samples, got " + std::to_string(n));

    const SpectralDataset pre = preprocess_chain(dataset, preprocess);
    const auto methods = space.feature_methods();
    const auto combos = flatten_combos(space);
    const long n_methods = static_cast<long>(methods.size());
    const long n_ks = static_cast<long>(space.pca_ks.size());
    const long n_combos = static_cast<long>(combos.size());
    const long n_trials = n_methods * n_ks * n_combos;

    std::vector<FeatureMatrix> feats;
    feats.reserve(methods.size());
    for (const auto& m : methods)
        feats.push_back(apply_feature_method(pre, m));

    const long k_limit = std::min(n - 2, feats[0].n_features());
    long k_max = 0;
    for (long k : space.pca_ks)
        if (k <= k_limit)
            k_max = std::max(k_max, k);

    std::vector<double> preds(static_cast<std::size_t>(n_trials) * n, 0.0);
    std::mutex err_mutex;
    std::vector<std::pair<std::pair<long, long>, std::string>> fold_errors;  // ((trial, fold), msg)
    auto record_error = [&](long trial, long fold, const std::string& msg) {
        std::lock_guard<std::mutex> lock(err_mutex);
        fold_errors.push_back({{trial, fold}, msg});
    };
    auto trial_index = [&](long mi, long ki, long ci) {
        return (mi * n_ks + ki) * n_combos + ci;
    };

    auto run_fold = [&](long mi, long fold) {
        const FeatureMatrix& f = feats[mi];
        Eigen::MatrixXd s_train, s_test;
        Eigen::VectorXd y;
        try {
            const Eigen::MatrixXd train = drop_row(f.rows, fold);
            y = drop_entry(f.labels, fold);
            const Standardizer st = standardizer_fit(train);
            const Eigen::MatrixXd z_train = standardizer_apply(st, train);
            const Eigen::MatrixXd z_test = standardizer_apply(st, f.rows.row(fold));
            const PcaModel pca = pca_fit(z_train, k_max);
            s_train = pca_transform(pca, z_train);
            s_test = pca_transform(pca, z_test);
        } catch (const std::exception& e) {
            for (long ki = 0; ki < n_ks; ++ki)
                for (long ci = 0; ci < n_combos; ++ci)
                    record_error(trial_index(mi, ki, ci), fold, e.what());
            return;
        }

        for (long ki = 0; ki < n_ks; ++ki) {
            const long k = space.pca_ks[ki];
            if (k > k_limit)
                continue;  // recorded as skipped at assembly
            const Eigen::MatrixXd x_train = s_train.leftCols(k);
            const Eigen::MatrixXd x_test = s_test.leftCols(k);
            if (space.model_family == ModelFamily::Ridge) {
                for (long ci = 0; ci < n_combos; ++ci) {
                    const long t = trial_index(mi, ki, ci);
                    try {
                        const auto& spec = std::get<RidgeSpec>(combos[ci].spec);
                        preds[t * n + fold] =
                            ridge_predict(ridge_fit(x_train, y, spec.alpha), x_test)[0];
                    } catch (const std::exception& e) {
                        record_error(t, fold, e.what());
                    }
                }
            } else {
                long ci = 0;
                for (std::size_t c_i = 0; c_i < space.svr_cs.size(); ++c_i) {
                    for (std::size_t kj = 0; kj < space.svr_kernels.size(); ++kj) {
                        Kernel resolved;
                        Eigen::MatrixXd gram;
                        bool kernel_ok = true;
                        std::string kernel_err;
                        try {
                            resolved = resolve_kernel(space.svr_kernels[kj], x_train);
                            gram = gram_matrix(resolved, x_train);
                        } catch (const std::exception& e) {
                            kernel_ok = false;
                            kernel_err = e.what();
                        }
                        for (std::size_t e_i = 0; e_i < space.svr_epsilons.size();
                             ++e_i, ++ci) {
                            const long t = trial_index(mi, ki, ci);
                            if (!kernel_ok) {
                                record_error(t, fold, kernel_err);
                                continue;
                            }
                            try {
                                const auto& spec = std::get<SvrSpec>(combos[ci].spec);
                                const SvrModel m =
                                    svr_fit_prepared(gram, x_train, y, resolved, spec.C,
                                                     spec.epsilon, space.svr_options);
                                if (!m.converged) {
                                    record_error(t, fold,
                                                 "SVR did not converge within the iteration "
                                                 "cap (KKT violation " +
                                                     std::to_string(m.kkt_violation) + ")");
                                    continue;
                                }
                                preds[t * n + fold] = svr_predict(m, x_test)[0];
                            } catch (const std::exception& e) {
                                record_error(t, fold, e.what());
                            }
                        }
                    }
                }
            }
        }
    };

    // (feature, fold) tasks are pure and write disjoint slots, so any
    // schedule produces the same trace.
    const long n_tasks = n_methods * n;
    const int n_workers = std::max(1, std::min<int>(threads, static_cast<int>(n_tasks)));
    if (n_workers == 1) {
        for (long task = 0; task < n_tasks; ++task)
            run_fold(task / n, task % n);
    } else {
        std::atomic<long> next{0};
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int w = 0; w < n_workers; ++w)
            pool.emplace_back([&] {
                for (long task = next.fetch_add(1); task < n_tasks; task = next.fetch_add(1))
                    run_fold(task / n, task % n);
            });
        for (auto& th : pool)
            th.join();
    }

    // Deterministic error merge: first failing fold wins per trial.
    std::sort(fold_errors.begin(), fold_errors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string> trial_error(n_trials);
    std::vector<bool> has_error(n_trials, false);
    for (const auto& [key, msg] : fold_errors) {
        if (!has_error[key.first]) {
            has_error[key.first] = true;
            trial_error[key.first] = "fold " + std::to_string(key.second) + ": " + msg;
        }
    }

    SearchTrace trace;
    trace.trials.reserve(n_trials);
    struct BestKey {
        double mse, k, primary, epsilon, kernel, param;
        bool operator<(const BestKey& o) const {
            return std::tie(mse, k, primary, epsilon, kernel, param) <
                   std::tie(o.mse, o.k, o.primary, o.epsilon, o.kernel, o.param);
        }
    };
    BestKey best_key{};
    for (long mi = 0; mi < n_methods; ++mi) {
        for (long ki = 0; ki < n_ks; ++ki) {
            for (long ci = 0; ci < n_combos; ++ci) {
                const long t = trial_index(mi, ki, ci);
                TrialResult trial;
                trial.feature = methods[mi];
                trial.pca_k = space.pca_ks[ki];
                trial.model = combos[ci].spec;
                if (space.pca_ks[ki] > k_limit) {
                    trial.status = TrialResult::Status::Skipped;
                    trial.message = "pca_k " + std::to_string(space.pca_ks[ki]) +
                                    " exceeds the LOOCV limit min(n - 2, p) = " +
                                    std::to_string(k_limit);
                } else if (has_error[t]) {
                    trial.status = TrialResult::Status::Error;
                    trial.message = trial_error[t];
                } else {
                    std::vector<CvPrediction> cv;
                    cv.reserve(n);
                    for (long i = 0; i < n; ++i)
                        cv.push_back({feats[mi].sample_ids[i], feats[mi].labels[i],
                                      preds[t * n + i], i});
                    trial.metrics = compute_metrics(cv);
                    const BestKey key{trial.metrics.mse,
                                      static_cast<double>(trial.pca_k),
                                      combos[ci].primary,
                                      combos[ci].epsilon,
                                      static_cast<double>(combos[ci].kernel_index),
                                      methods[mi].parameter()};
                    if (trace.best_index < 0 || key < best_key) {
                        best_key = key;
                        trace.best_index = static_cast<long>(trace.trials.size());
                    }
                }
                trace.trials.push_back(std::move(trial));
            }
        }
    }
    return trace;
}

}  // namespace glucospec

/*
 * Copyright 2026 The tweetsent Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the tweetsent library.
 *
 * Objects are opaque handles created by *_load / *_new / *_train functions
 * and released with the matching *_free. Every fallible call returns a
 * ts_status; on failure, ts_last_error() describes the problem until the
 * next failing call on the same thread. Strings returned through char**
 * out-parameters are owned by the caller and released with ts_string_free.
 *
 * Handles are immutable after creation except ts_config, and may be shared
 * across threads for concurrent read-only use.
 */

#ifndef TWEETSENT_H
#define TWEETSENT_H

#include <stddef.h>
#include <stdint.h>

#if defined(TWEETSENT_BUILDING_LIBRARY)
#define TS_API __attribute__((visibility("default")))
#else
#define TS_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as process exit codes for the CLI. */
typedef enum ts_status {
  TS_OK = 0,
  TS_ERR_USAGE = 1,    /* bad arguments or configuration */
  TS_ERR_DATA = 2,     /* unreadable or malformed input data */
  TS_ERR_INTERNAL = 3, /* anything else */
} ts_status;

/* Labels in canonical order; also the index into score arrays. */
typedef enum ts_label {
  TS_LABEL_POSITIVE = 0,
  TS_LABEL_NEUTRAL = 1,
  TS_LABEL_NEGATIVE = 2,
} ts_label;

typedef struct ts_corpus ts_corpus;
typedef struct ts_lexicon ts_lexicon;
typedef struct ts_model ts_model;
typedef struct ts_config ts_config;

typedef void (*ts_log_fn)(const char* message, void* user_data);

TS_API const char* ts_version(void);
TS_API const char* ts_last_error(void);
TS_API const char* ts_label_name(int label);
TS_API void ts_string_free(char* str);

/* Receives pipeline progress lines (stage names, warnings). NULL disables. */
TS_API void ts_set_log_handler(ts_log_fn fn, void* user_data);

/* Text normalization as used for every corpus. */
TS_API ts_status ts_clean_text(const char* raw, char** out);

/* ---- corpus ------------------------------------------------------------- */

/* format is "jsonl" or "csv"; stopwords_path may be NULL. */
TS_API ts_status ts_corpus_load(const char* path, const char* format,
                                const char* stopwords_path, ts_corpus** out);
TS_API void ts_corpus_free(ts_corpus* corpus);
TS_API size_t ts_corpus_size(const ts_corpus* corpus);
TS_API ts_status ts_corpus_hourly(const ts_corpus* corpus, uint64_t bins[24]);
/* Writes one JSON object per document: id, topic, created_at, tokens. */
TS_API ts_status ts_corpus_write_clean(const ts_corpus* corpus, const char* path);

/* ---- lexicon ------------------------------------------------------------ */

TS_API ts_status ts_lexicon_load(const char* path, ts_lexicon** out);
TS_API void ts_lexicon_free(ts_lexicon* lexicon);
TS_API size_t ts_lexicon_size(const ts_lexicon* lexicon);
TS_API size_t ts_lexicon_warning_count(const ts_lexicon* lexicon);
/* NULL when index is out of range. */
TS_API const char* ts_lexicon_warning(const ts_lexicon* lexicon, size_t index);

/* Lexicon score of already-cleaned, space-separated tokens as a double. */
TS_API ts_status ts_lexicon_score(const ts_lexicon* lexicon, const char* clean_text,
                                  double* score, int* label);

/* Labels every document. counts receives positive, neutral, negative totals.
 * When out_path is non-NULL, writes JSONL rows: id, topic, label, score. */
TS_API ts_status ts_label_corpus(const ts_lexicon* lexicon, const ts_corpus* corpus,
                                 const char* out_path, uint64_t counts[3]);

/* ---- configuration ------------------------------------------------------ */

TS_API ts_status ts_config_new(ts_config** out);
TS_API ts_status ts_config_load(const char* path, ts_config** out);
TS_API void ts_config_free(ts_config* config);
/* Keys: seed, folds, model, lexicon, stopwords, min_df, out, format,
 * topic ("name=path[:csv|:jsonl]"), clear_topics, threads, stratified. */
TS_API ts_status ts_config_set(ts_config* config, const char* key, const char* value);
/* Current value of seed, folds, model, lexicon, stopwords, min_df, out,
 * format, threads or stratified, as a caller-owned string. */
TS_API ts_status ts_config_get(const ts_config* config, const char* key, char** value);

/* ---- models ------------------------------------------------------------- */

/* Labels the corpus with the lexicon, fits a vocabulary with the config's
 * min_df and trains model_name (naive_bayes, svm, maxent, decision_tree,
 * random_forest, bagging) with the config's hyperparameters and seed. */
TS_API ts_status ts_model_train(const ts_config* config, const ts_corpus* corpus,
                                const ts_lexicon* lexicon, const char* model_name,
                                ts_model** out);
TS_API ts_status ts_model_save(const ts_model* model, const char* path);
TS_API ts_status ts_model_load(const char* path, ts_model** out);
TS_API void ts_model_free(ts_model* model);
TS_API const char* ts_model_kind(const ts_model* model);
TS_API size_t ts_model_vocabulary_size(const ts_model* model);

/* Cleans and tokenizes raw text, then predicts. scores may be NULL. */
TS_API ts_status ts_model_predict_text(const ts_model* model, const char* raw_text,
                                       int* label, double scores[3]);

/* Metrics of the model against the corpus' lexicon labels, as JSON. */
TS_API ts_status ts_model_evaluate(const ts_model* model, const ts_corpus* corpus,
                                   const ts_lexicon* lexicon, char** report_json);

/* ---- evaluation and pipeline -------------------------------------------- */

/* k-fold cross-validation (config folds, seed, model list) of every selected
 * model on one corpus. Output is JSON or CSV per the config format. */
TS_API ts_status ts_crossval(const ts_config* config, const ts_corpus* corpus,
                             const ts_lexicon* lexicon, char** report);

/* Runs the full pipeline and writes the report bundle to the config's output
 * directory. summary_json (optional) lists stages and written files. */
TS_API ts_status ts_run_pipeline(const ts_config* config, char** summary_json);

/* Reads two topics' reports from a bundle directory, writes comparison.json
 * there and returns its content (optional). */
TS_API ts_status ts_compare_bundle(const char* dir, const char* topic_a, const char* topic_b,
                                   char** comparison_json);

#ifdef __cplusplus
}
#endif

#endif /* TWEETSENT_H */

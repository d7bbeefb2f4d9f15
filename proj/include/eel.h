/* C API for the eel experience-enhanced learning engine.
 *
 * Opaque-handle interface over the C++ core. All functions are
 * non-throwing; failures surface as status codes plus a per-handle error
 * message. Status codes match the CLI exit codes: 0 success, 1 runtime
 * failure, 2 configuration error.
 */
#ifndef EEL_H
#define EEL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define EEL_OK 0
#define EEL_ERR_RUNTIME 1
#define EEL_ERR_CONFIG 2

typedef struct eel_experiment eel_experiment;

/* Library version string, e.g. "eel 0.1.0". */
const char* eel_version(void);

/* Parses the configuration file and returns a handle, or NULL on error.
 * When NULL is returned and errbuf is non-NULL, a message is copied into
 * errbuf (truncated to errbuf_len - 1 characters). */
eel_experiment* eel_experiment_create(const char* config_path, char* errbuf,
                                      size_t errbuf_len);

/* Overrides the config's seed list with a single seed. */
int eel_experiment_set_seed(eel_experiment* exp, uint64_t seed);

/* Overrides the output directory. */
int eel_experiment_set_out_dir(eel_experiment* exp, const char* dir);

/* Runs the configured scenario. Returns EEL_OK, EEL_ERR_RUNTIME or
 * EEL_ERR_CONFIG. */
int eel_experiment_run(eel_experiment* exp);

/* Scenario name from the config ("eedl-cardinality", "eerl-index", ...). */
const char* eel_experiment_scenario(const eel_experiment* exp);

/* Message for the most recent failure on this handle, or "". */
const char* eel_experiment_error(const eel_experiment* exp);

void eel_experiment_destroy(eel_experiment* exp);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EEL_H */

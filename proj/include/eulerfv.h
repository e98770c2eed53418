/* C interface of the eulerfv shared library.
 *
 * All entry points are exception-free; failures come back as status codes
 * with a message copied into the caller's buffer. Status values mirror the
 * CLI exit codes: 0 ok, 2 runtime/solver failure, 3 invalid configuration.
 */
#ifndef EULERFV_H
#define EULERFV_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum efv_status {
  EFV_OK = 0,
  EFV_ERR_RUNTIME = 2,
  EFV_ERR_CONFIG = 3
} efv_status;

/* Opaque configuration handle. */
typedef struct efv_config efv_config;

const char* efv_version(void);

/* Built-in defaults; never fails. Free with efv_config_destroy. */
efv_config* efv_config_create(void);

/* Parse an INI-style file; returns NULL on failure with a message in err. */
efv_config* efv_config_load(const char* path, char* err, size_t err_capacity);

/* Override one entry, dotted_key = "section.key". */
efv_status efv_config_set(efv_config* cfg, const char* dotted_key, const char* value,
                          char* err, size_t err_capacity);

void efv_config_destroy(efv_config* cfg);

/* Single run: field snapshots + energy ledger into [output] directory. */
efv_status efv_cmd_solve(const efv_config* cfg, char* err, size_t err_capacity);

/* Refinement study; classification ("strong-K", "oscillatory",
 * "inconclusive") is copied into the caller's buffer. */
efv_status efv_cmd_study(const efv_config* cfg, char* classification,
                         size_t classification_capacity, char* err, size_t err_capacity);

/* Weak-form consistency study over the configured levels. */
efv_status efv_cmd_consistency(const efv_config* cfg, char* err, size_t err_capacity);

/* Energy balance audit of a single run; EFV_ERR_RUNTIME when a step fails. */
efv_status efv_cmd_audit(const efv_config* cfg, char* err, size_t err_capacity);

/* Built-in example suite; report is copied into the caller's buffer. */
efv_status efv_selftest(char* report, size_t report_capacity);

#ifdef __cplusplus
}
#endif

#endif

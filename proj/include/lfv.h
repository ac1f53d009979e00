/* C interface for the left-invariant complex Finsler metric verifier.
 *
 * Usage pattern:
 *   lfv_config* cfg = NULL;
 *   if (lfv_config_load("run.json", &cfg) != LFV_OK) { ... lfv_last_error() }
 *   lfv_report* rep = NULL;
 *   if (lfv_run(cfg, &rep) != LFV_OK) { ... }
 *   char* text = NULL;
 *   lfv_report_render(rep, "markdown", &text);
 *   ...
 *   lfv_string_free(text);
 *   lfv_report_free(rep);
 *   lfv_config_free(cfg);
 *
 * All functions returning lfv_status leave a diagnostic readable through
 * lfv_last_error() (thread-local) when they fail. Reports are deterministic:
 * the same configuration and seed render to identical bytes.
 */

#ifndef LFV_H
#define LFV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lfv_status {
  LFV_OK = 0,
  LFV_EPARSE = 1,   /* malformed JSON */
  LFV_EINVALID = 2, /* well-formed but inconsistent configuration or argument */
  LFV_EIO = 3,      /* file could not be read or written */
  LFV_ERUNTIME = 4  /* numerical or internal failure */
} lfv_status;

typedef struct lfv_config lfv_config;
typedef struct lfv_report lfv_report;

const char* lfv_version(void);

/* message from the most recent failing call on this thread; never NULL */
const char* lfv_last_error(void);

lfv_status lfv_config_parse(const char* json_text, lfv_config** out);
lfv_status lfv_config_load(const char* path, lfv_config** out);

void lfv_config_set_seed(lfv_config* cfg, uint64_t seed);
/* replaces the suite selection; names must come from the documented set */
lfv_status lfv_config_select_suites(lfv_config* cfg, const char* const* names,
                                    size_t count);
/* multiplies every tolerance in the run by factor (> 0) */
lfv_status lfv_config_scale_tolerances(lfv_config* cfg, double factor);
void lfv_config_free(lfv_config* cfg);

lfv_status lfv_run(const lfv_config* cfg, lfv_report** out);

/* 1 when every suite passed, else 0 */
int lfv_report_all_passed(const lfv_report* rep);

/* format is "json" or "markdown"; *out is heap-allocated UTF-8, release it
 * with lfv_string_free */
lfv_status lfv_report_render(const lfv_report* rep, const char* format, char** out);

void lfv_string_free(char* text);
void lfv_report_free(lfv_report* rep);

#ifdef __cplusplus
}
#endif

#endif /* LFV_H */

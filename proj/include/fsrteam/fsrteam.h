#ifndef FSRTEAM_H
#define FSRTEAM_H

#include <stddef.h>
#include <stdint.h>

#if defined(FSRTEAM_BUILDING)
#define FSRTEAM_API __attribute__((visibility("default")))
#else
#define FSRTEAM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fsr_status {
  FSR_OK = 0,
  FSR_ERR_ARGUMENT = 1, /* null pointer or bad option value */
  FSR_ERR_PARSE = 2,    /* malformed or invalid document */
  FSR_ERR_PROBLEM = 3,  /* operation does not apply to this problem tag */
  FSR_ERR_RESOURCE = 4, /* search space above the candidate cap */
  FSR_ERR_IO = 5,
  FSR_ERR_INTERNAL = 6
} fsr_status;

typedef enum fsr_env_search {
  FSR_ENV_SEARCH_DEFAULT = 0, /* whatever the instance says */
  FSR_ENV_SEARCH_EXHAUSTIVE = 1,
  FSR_ENV_SEARCH_LAZY = 2
} fsr_env_search;

typedef struct fsr_instance fsr_instance;
typedef struct fsr_result fsr_result;

typedef struct fsr_options {
  int all_positionings;    /* verify: try every assignment of the team to p_I */
  int forbid_swaps;        /* robots may not exchange squares in one step */
  uint64_t max_candidates; /* 0 keeps the instance cap */
  uint64_t step_bound;     /* 0 keeps 10(|E|+|Q|)^3 */
  fsr_env_search env_search;
  unsigned threads; /* 0 or 1 runs single-threaded */
} fsr_options;

FSRTEAM_API const char* fsr_version(void);

/* Message for the last failing call on this thread; never null. */
FSRTEAM_API const char* fsr_last_error(void);

FSRTEAM_API void fsr_options_init(fsr_options* opts);

/* Strings returned through char** are owned by the caller. */
FSRTEAM_API void fsr_string_free(char* s);

FSRTEAM_API fsr_status fsr_instance_parse(const char* json_text, fsr_instance** out);
FSRTEAM_API fsr_status fsr_instance_load(const char* path, fsr_instance** out);
FSRTEAM_API void fsr_instance_free(fsr_instance* inst);
FSRTEAM_API fsr_status fsr_instance_serialize(const fsr_instance* inst, char** out);
FSRTEAM_API fsr_status fsr_instance_render(const fsr_instance* inst, char** out);
/* Problem tag such as "TeamEnvVer"; valid while the instance lives. */
FSRTEAM_API const char* fsr_instance_problem(const fsr_instance* inst);
/* Oracle answer stored by the gadget generators: 1, 0, or -1 if absent. */
FSRTEAM_API int fsr_instance_expected(const fsr_instance* inst);

/* graph_text: vertex count, then one "u v" pair per line.
   family: "teamdes", "envdes" or "codesign". */
FSRTEAM_API fsr_status fsr_gadget_domset(const char* graph_text, int k, const char* family, const char* variant,
                                         fsr_instance** out);
/* tm_json describes the machine; input holds one symbol per character. */
FSRTEAM_API fsr_status fsr_gadget_cdtmc(const char* tm_json, const char* input, int k, fsr_instance** out);

/* TeamEnvVer only. */
FSRTEAM_API fsr_status fsr_verify(const fsr_instance* inst, const fsr_options* opts, fsr_result** out);
/* Dispatches on the problem tag. */
FSRTEAM_API fsr_status fsr_design(const fsr_instance* inst, const fsr_options* opts, fsr_result** out);
/* TeamEnvVer; writes one JSON object per configuration to *trace_jsonl. */
FSRTEAM_API fsr_status fsr_trace(const fsr_instance* inst, const fsr_options* opts, char** trace_jsonl,
                                 fsr_result** out);

/* 1 for Success or a Found* answer, 0 otherwise. */
FSRTEAM_API int fsr_result_positive(const fsr_result* r);
/* "Success", "Failed", "TimedOut", "FoundController", ..., "Bottom". */
FSRTEAM_API const char* fsr_result_outcome(const fsr_result* r);
FSRTEAM_API uint64_t fsr_result_steps(const fsr_result* r);
FSRTEAM_API uint64_t fsr_result_candidates_checked(const fsr_result* r);
/* Single-line RunReport JSON. trace_path may be null. */
FSRTEAM_API fsr_status fsr_result_report(const fsr_result* r, const char* command, double wall_ms,
                                         const char* trace_path, char** out);
FSRTEAM_API void fsr_result_free(fsr_result* r);

#ifdef __cplusplus
}
#endif

#endif

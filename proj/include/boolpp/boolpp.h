/* C interface to the boolpp library.
 *
 * Handles are opaque and owned by the caller; free each with its _free
 * function. Every call returns a bp_status. On failure the message is
 * available from bp_last_error() on the same thread until the next call.
 * Reports come back as JSON text in a buffer released with bp_string_free. */
#ifndef BOOLPP_H
#define BOOLPP_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define BP_API __declspec(dllexport)
#else
#define BP_API __attribute__((visibility("default")))
#endif

typedef enum bp_status {
  BP_OK = 0,
  BP_ERR_ARGUMENT = 1, /* null pointer or out-of-range number */
  BP_ERR_PARSE = 2,    /* malformed structure, condition, certificate or instance */
  BP_ERR_IO = 3,       /* file could not be read */
  BP_ERR_LIMIT = 4,    /* input exceeds a size bound */
  BP_ERR_INTERNAL = 5
} bp_status;

/* A structure or a generator set; everything that has a class. */
typedef struct bp_subject bp_subject;
typedef struct bp_condition bp_condition;
typedef struct bp_certificate bp_certificate;

BP_API const char* bp_version(void);
BP_API const char* bp_last_error(void);
BP_API void bp_string_free(char* s);

/* Structure from a .json file, or a canonical name such as "D_2SAT" or "blocker:3". */
BP_API bp_status bp_subject_structure(const char* file_or_name, bp_subject** out);
BP_API bp_status bp_subject_structure_json(const char* json, bp_subject** out);
/* Comma-separated named operations or tables, e.g. "d3,p" or "3:00010111". "" is the projections. */
BP_API bp_status bp_subject_generators(const char* spec, bp_subject** out);
/* "[d3,p]" is a generator set, anything else goes to bp_subject_structure. */
BP_API bp_status bp_subject_auto(const char* text, bp_subject** out);
BP_API void bp_subject_free(bp_subject* s);
BP_API int bp_subject_is_structure(const bp_subject* s);
BP_API bp_status bp_subject_describe(const bp_subject* s, char** out);

/* Builtin name ("qnu:4", "hm:3", "qj:4", "comm", "const", "qminor") or a condition file. */
BP_API bp_status bp_condition_load(const char* name_or_file, bp_condition** out);
BP_API bp_status bp_condition_parse(const char* text, bp_condition** out);
BP_API void bp_condition_free(bp_condition* c);

/* chain_bound <= 0 picks the default. */
BP_API bp_status bp_classify(const bp_subject* s, int chain_bound, char** json_out);
BP_API bp_status bp_compare(const bp_subject* a, const bp_subject* b, int chain_bound, char** json_out);
/* node_limit 0 searches to exhaustion. */
BP_API bp_status bp_check(const bp_subject* s, const bp_condition* c, uint64_t node_limit, char** json_out);
/* k-ary members: the clone generated for generator sets, Pol for structures. */
BP_API bp_status bp_members(const bp_subject* s, int arity, char** json_out);

/* Called with one JSON object per finished check. */
typedef void (*bp_progress_fn)(const char* check_json, void* user);
BP_API bp_status bp_verify_paper(bp_progress_fn progress, void* user, char** json_out);

/* format: "dot" or "json". */
BP_API bp_status bp_export_lattice(int chain_depth, const char* format, char** out);

/* Tab-separated table with a "# chain_bound K" header. threads <= 0 uses all cores. */
BP_API bp_status bp_decision_table(int chain_bound, int threads, char** tsv_out);
/* Regenerates the table with the file's chain bound and reports row mismatches. */
BP_API bp_status bp_decision_table_check(const char* path, int threads, char** json_out);

BP_API bp_status bp_certificate_load(const char* path, bp_certificate** out);
/* The shipped D_STCON -> (B2, <=) certificate. */
BP_API bp_status bp_certificate_stcon_to_b2(bp_certificate** out);
BP_API void bp_certificate_free(bp_certificate* c);
BP_API bp_status bp_certificate_verify(const bp_certificate* c, char** json_out);
/* Instance file over the certificate's target; the reduced instance and variable map as JSON. */
BP_API bp_status bp_reduce(const bp_certificate* c, const char* instance_path, char** json_out);
BP_API bp_status bp_validate_reduction(const bp_certificate* c, int count, uint64_t seed, char** json_out);

#ifdef __cplusplus
}
#endif

#endif

#ifndef OOC_OOC_H
#define OOC_OOC_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(OOC_BUILDING)
#    define OOC_API __declspec(dllexport)
#  else
#    define OOC_API __declspec(dllimport)
#  endif
#else
#  define OOC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ooc_status {
    OOC_OK = 0,
    OOC_FAIL = 1,               /* the check ran and the design failed it */
    OOC_ERR_PARSE = 2,
    OOC_ERR_PARAMETER = 3,
    OOC_ERR_PRECONDITION = 4,
    OOC_ERR_NOT_FOUND = 5,
    OOC_ERR_SHAPE = 6,
    OOC_ERR_COORDINATE = 7,
    OOC_ERR_INTERNAL = 8
} ooc_status;

/* Any design kind: packing, code, fan, hdesign, rosqs. */
typedef struct ooc_design ooc_design;

/* Message for the last non-OK status on this thread; owned by the library. */
OOC_API const char* ooc_last_error(void);
OOC_API const char* ooc_status_name(ooc_status s);
/* Frees strings returned through char** out-parameters. */
OOC_API void ooc_string_free(char* s);

/* `source` is a file path or "catalog:<id>". */
OOC_API ooc_status ooc_design_load(const char* source, ooc_design** out);
OOC_API ooc_status ooc_design_parse(const char* json, ooc_design** out);
OOC_API void ooc_design_free(ooc_design* d);
/* indent < 0 gives compact output */
OOC_API ooc_status ooc_design_to_json(const ooc_design* d, int indent, char** out);
OOC_API ooc_status ooc_design_save(const ooc_design* d, const char* path);
/* "packing", "code", "fan", "hdesign" or "rosqs"; NULL for a NULL handle. */
OOC_API const char* ooc_design_kind(const ooc_design* d);
/* Base blocks (codewords for codes); -1 for a NULL handle. */
OOC_API long ooc_design_block_count(const ooc_design* d);

typedef struct ooc_bound_report {
    long long johnson;
    long long j1_num, j1_den;   /* J_1(1 x uv) */
    int lifting_equal;          /* J(u x v) = u J(1 x uv) */
    int jstar_defined;          /* k = 4 and lambda = 2 */
    long long jstar;
    char jstar_case[24];
    char perfect_class[24];
    long long perfect_size;     /* base blocks of a perfect code */
} ooc_bound_report;

OOC_API ooc_status ooc_bound(int u, int v, int k, int lambda, ooc_bound_report* out);

/* check: "ooc", "packing", "perfect", "fan", "hdesign" or "rosqs".
   Returns OOC_OK or OOC_FAIL with a JSON report, or an error status. */
OOC_API ooc_status ooc_verify(const ooc_design* d, const char* check, int strict, char** report_json);

/* recipe: hartman, filling1, filling2, weighting1, weighting2, weighting3,
   fold, remap, semicyclic-h4. options: space-separated key=value pairs
   (fold: v1=N; remap: map=NAME [h1=N]; semicyclic-h4: h=N). */
OOC_API ooc_status ooc_construct(const char* recipe, const ooc_design* const* inputs, size_t n_inputs,
                                 const char* options, ooc_design** out, char** trace_json);

/* rosqs may be NULL; only pipelines that take one accept it. */
OOC_API ooc_status ooc_pipeline(const char* name, const ooc_design* rosqs, ooc_design** out, char** trace_json);
OOC_API ooc_status ooc_pipeline_list(char** json);

typedef struct ooc_search_options {
    long long node_budget;
    int use_jstar;
    int row_filter;
} ooc_search_options;

OOC_API void ooc_search_defaults(ooc_search_options* opts);
/* opts may be NULL for defaults; *witness may be NULL when not wanted. */
OOC_API ooc_status ooc_search(int u, int v, int k, int t, const ooc_search_options* opts, ooc_design** witness,
                              char** result_json);

/* to: "matrix" (packing -> code) or "blocks" (code -> packing). */
OOC_API ooc_status ooc_convert(const ooc_design* d, const char* to, ooc_design** out);

OOC_API ooc_status ooc_catalog_list(char** json);

#ifdef __cplusplus
}
#endif

#endif

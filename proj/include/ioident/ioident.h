/*
 * ioident C interface.
 *
 * Objects are opaque handles created by the library and released with the
 * matching *_free function.  Functions return an ioident_status; on failure
 * ioident_last_error() describes the problem for the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * ioident_string_free().
 */
#ifndef IOIDENT_H
#define IOIDENT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define IOIDENT_API __declspec(dllexport)
#else
#define IOIDENT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ioident_status {
  IOIDENT_OK = 0,
  IOIDENT_ERR_IO = 1,        /* file could not be read */
  IOIDENT_ERR_PARSE = 2,     /* syntax or declaration error */
  IOIDENT_ERR_DEPTH = 3,     /* no verified presentation; partial report produced */
  IOIDENT_ERR_ARGUMENT = 4,  /* null pointer or invalid option */
  IOIDENT_ERR_UNSUPPORTED = 5,
  IOIDENT_ERR_INTERNAL = 6
} ioident_status;

typedef enum ioident_format { IOIDENT_FORMAT_TEXT = 0, IOIDENT_FORMAT_JSON = 1 } ioident_format;

typedef struct ioident_model ioident_model;
typedef struct ioident_report ioident_report;

typedef struct ioident_options {
  uint64_t seed;
  int depth;         /* < 0: number of states */
  int series_order;  /* 0: automatic */
  int trials;
  int first_integral_degree;
} ioident_options;

IOIDENT_API const char* ioident_version(void);

/* Message, line and column of the last error on this thread (0 when unknown). */
IOIDENT_API const char* ioident_last_error(void);
IOIDENT_API int ioident_last_error_line(void);
IOIDENT_API int ioident_last_error_column(void);

IOIDENT_API void ioident_options_init(ioident_options* opts);

IOIDENT_API ioident_status ioident_model_parse(const char* text, ioident_model** out);
IOIDENT_API ioident_status ioident_model_load(const char* path, ioident_model** out);
IOIDENT_API void ioident_model_free(ioident_model* model);
IOIDENT_API ioident_status ioident_model_to_string(const ioident_model* model, char** out);

/* Common denominator Q of the model's right-hand sides, as text ("1" if none). */
IOIDENT_API ioident_status ioident_model_denominator(const ioident_model* model, char** out);

/* Model with an extra state tracking `function` (of states and parameters)
 * and an extra output equal to that state minus the function.  The new
 * right-hand side is divided by Q; callers should say so when Q is not 1. */
IOIDENT_API ioident_status ioident_model_extend(const ioident_model* model, const char* function,
                                                ioident_model** out);

/* Runs the analysis.  IOIDENT_ERR_DEPTH still stores a partial report in *out. */
IOIDENT_API ioident_status ioident_analyze(const ioident_model* model, const ioident_options* opts,
                                           const char* const* check_functions, size_t n_check,
                                           ioident_report** out);
IOIDENT_API ioident_status ioident_report_render(const ioident_report* report, ioident_format format, char** out);
IOIDENT_API int ioident_report_complete(const ioident_report* report);
IOIDENT_API void ioident_report_free(ioident_report* report);

/* *result is 1 when `function` of the parameters lies in the field generated
 * by `generators` (n_generators expressions), 0 otherwise. */
IOIDENT_API ioident_status ioident_field_membership(const ioident_model* model, const char* function,
                                                    const char* const* generators, size_t n_generators,
                                                    int* result);

IOIDENT_API void ioident_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* IOIDENT_H */

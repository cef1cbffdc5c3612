#ifndef FBDUAL_H
#define FBDUAL_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define FBD_API __attribute__((visibility("default")))
#else
#define FBD_API
#endif

typedef enum fbd_status {
  FBD_OK = 0,
  FBD_ERR_ARGUMENT = 1,   /* null handle, index out of range */
  FBD_ERR_CONFIG = 2,     /* malformed config, unknown key or suite */
  FBD_ERR_IO = 3,
  FBD_ERR_CONVENTION = 4, /* no candidate convention tuple passes */
  FBD_ERR_NUMERIC = 5,    /* grid or packet rejected */
  FBD_ERR_INTERNAL = 6
} fbd_status;

typedef struct fbd_config fbd_config;
typedef struct fbd_report fbd_report;

typedef enum fbd_format { FBD_FORMAT_JSON = 0, FBD_FORMAT_MARKDOWN = 1 } fbd_format;

typedef enum fbd_field {
  FBD_FIELD_ID = 0,
  FBD_FIELD_STATEMENT = 1,
  FBD_FIELD_EXPECTED = 2,
  FBD_FIELD_GOT = 3,
  FBD_FIELD_ANCHOR = 4,
  FBD_FIELD_BASIS = 5
} fbd_field;

FBD_API const char* fbd_version(void);
/* Message of the last failed call on this thread; empty when none. */
FBD_API const char* fbd_last_error(void);

FBD_API fbd_status fbd_config_new(fbd_config** out);
FBD_API fbd_status fbd_config_load(const char* path, fbd_config** out);
FBD_API fbd_status fbd_config_parse(const char* text, fbd_config** out);
FBD_API fbd_status fbd_config_set(fbd_config* cfg, const char* key, const char* value);
FBD_API void fbd_config_free(fbd_config* cfg);

/* Suite names: clifford, span, so8, spin, intertwine, poincare, solutions,
   conserve, or all. An empty list yields an empty report. */
FBD_API size_t fbd_suite_count(void);
FBD_API const char* fbd_suite_name(size_t i);
FBD_API fbd_status fbd_run(const fbd_config* cfg, const char* const* suites, size_t n, fbd_report** out);
FBD_API void fbd_report_free(fbd_report* r);

/* 1 when every check passed. */
FBD_API int fbd_report_passed(const fbd_report* r);
FBD_API size_t fbd_report_suites(const fbd_report* r);
FBD_API const char* fbd_report_suite(const fbd_report* r, size_t s);
FBD_API int fbd_report_suite_passed(const fbd_report* r, size_t s);
FBD_API double fbd_report_suite_seconds(const fbd_report* r, size_t s);
FBD_API size_t fbd_report_checks(const fbd_report* r, size_t s);
/* Null when out of range. Strings live as long as the report. */
FBD_API const char* fbd_report_check_field(const fbd_report* r, size_t s, size_t c, fbd_field f);
FBD_API int fbd_report_check_passed(const fbd_report* r, size_t s, size_t c);
/* Convention value for a suite, null when the key is absent. */
FBD_API const char* fbd_report_convention(const fbd_report* r, size_t s, const char* key);

/* Rendered report; release with fbd_string_free. */
FBD_API fbd_status fbd_report_render(const fbd_report* r, fbd_format f, char** out);
FBD_API fbd_status fbd_report_write(const fbd_report* r, fbd_format f, const char* path);
FBD_API void fbd_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif

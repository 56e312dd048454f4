#ifndef REQTRACE_H
#define REQTRACE_H

#include <stddef.h>
#include <stdint.h>

// Result of every fallible call.
typedef enum ReqtraceStatus {
  REQTRACE_STATUS_OK = 0,
  REQTRACE_STATUS_NULL_ARGUMENT = 1,
  REQTRACE_STATUS_INVALID_UTF8 = 2,
  REQTRACE_STATUS_IO = 3,
  REQTRACE_STATUS_PARSE = 4,
  REQTRACE_STATUS_CONFIG = 5,
  REQTRACE_STATUS_INVALID_PARAMETER = 6,
  REQTRACE_STATUS_EMPTY_CORPUS = 7,
  REQTRACE_STATUS_PANIC = 99,
} ReqtraceStatus;

// Extracted code facts.
typedef struct ReqtraceFacts ReqtraceFacts;

// Result of one link recovery run.
typedef struct ReqtraceTrace ReqtraceTrace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer is
// valid until the next call into this library on the same thread.
const char *reqtrace_last_error(void);

// Library version as a static NUL-terminated string.
const char *reqtrace_version(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void reqtrace_string_free(char *s);

// Parses every `.java` file below `root`. Parser warnings are not reported.
//
// # Safety
// `root` must be a NUL-terminated string; `out` must be writable.
enum ReqtraceStatus reqtrace_facts_from_source(const char *root, struct ReqtraceFacts **out);

// Loads a code-facts XML file.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum ReqtraceStatus reqtrace_facts_from_xml(const char *path, struct ReqtraceFacts **out);

// Number of classes, or 0 for NULL.
//
// # Safety
// `facts` must be NULL or a live handle.
size_t reqtrace_facts_class_count(const struct ReqtraceFacts *facts);

// Canonical XML serialization of the facts.
//
// # Safety
// `facts` must be a live handle; `out` must be writable.
enum ReqtraceStatus reqtrace_facts_to_xml(const struct ReqtraceFacts *facts, char **out);

// Releases a facts handle. NULL is ignored.
//
// # Safety
// `facts` must come from this library and not have been freed.
void reqtrace_facts_free(struct ReqtraceFacts *facts);

// Recovers links between `facts` and the requirement files in `reqs_dir`.
// `topics` of 0 selects full rank; `stopwords` may be NULL for the
// built-in list.
//
// # Safety
// Pointers must be valid as documented; `out` must be writable.
enum ReqtraceStatus reqtrace_trace(const struct ReqtraceFacts *facts,
                                   const char *reqs_dir,
                                   double threshold,
                                   size_t topics,
                                   const char *stopwords,
                                   struct ReqtraceTrace **out);

// Total number of (requirement, class) links, or 0 for NULL.
//
// # Safety
// `trace` must be NULL or a live handle.
size_t reqtrace_trace_link_count(const struct ReqtraceTrace *trace);

// Number of AOC-poset concepts, or 0 for NULL.
//
// # Safety
// `trace` must be NULL or a live handle.
size_t reqtrace_trace_concept_count(const struct ReqtraceTrace *trace);

// JSON link report (same content as `links.json`).
//
// # Safety
// `trace` must be a live handle; `out` must be writable.
enum ReqtraceStatus reqtrace_trace_links_json(const struct ReqtraceTrace *trace, char **out);

// DOT rendering of the AOC-poset.
//
// # Safety
// `trace` must be a live handle; `out` must be writable.
enum ReqtraceStatus reqtrace_trace_poset_dot(const struct ReqtraceTrace *trace, char **out);

// DOT rendering of the requirement/class link graph.
//
// # Safety
// `trace` must be a live handle; `out` must be writable.
enum ReqtraceStatus reqtrace_trace_links_dot(const struct ReqtraceTrace *trace, char **out);

// Releases a trace handle. NULL is ignored.
//
// # Safety
// `trace` must come from this library and not have been freed.
void reqtrace_trace_free(struct ReqtraceTrace *trace);

// Scores a links JSON document against a gold JSON document and returns
// the report as JSON.
//
// # Safety
// Both inputs must be NUL-terminated strings; `out` must be writable.
enum ReqtraceStatus reqtrace_evaluate_json(const char *links_json,
                                           const char *gold_json,
                                           char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REQTRACE_H */

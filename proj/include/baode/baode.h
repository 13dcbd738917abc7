#ifndef BAODE_BAODE_H_
#define BAODE_BAODE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BAODE_API __declspec(dllexport)
#else
#define BAODE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every function returning baode_status leaves a message
   retrievable through baode_last_error() on failure. */
typedef enum baode_status {
  BAODE_OK = 0,
  BAODE_ERR_SIZE,
  BAODE_ERR_PROPERNESS,
  BAODE_ERR_SIGNATURE,
  BAODE_ERR_INDEX,
  BAODE_ERR_UNBOUND,
  BAODE_ERR_MORPHISM,
  BAODE_ERR_CONTAINMENT,
  BAODE_ERR_CLOSURE,
  BAODE_ERR_MAP,
  BAODE_ERR_WITNESS_INDEX,
  BAODE_ERR_DIMENSION_BUDGET,
  BAODE_ERR_PARSE,
  BAODE_ERR_IO,
  BAODE_ERR_VALIDATION,
  BAODE_ERR_ARGUMENT, /* null or otherwise unusable argument */
  BAODE_ERR_INTERNAL
} baode_status;

typedef struct baode_frame     baode_frame;
typedef struct baode_bao       baode_bao;
typedef struct baode_workspace baode_workspace;

typedef struct baode_options {
  uint64_t seed;
  int      verify_all_rho;
  size_t   max_atoms;    /* atoms of generated algebras in campaigns */
  size_t   max_universe; /* points of generated frames in campaigns */
} baode_options;

/* Outcome of a command: passed is nonzero iff every check passed; summary
   is a human-readable report owned by the caller (baode_string_free). */
typedef struct baode_result {
  int   passed;
  char* summary;
} baode_result;

/* Message of the last failure on the calling thread ("" when none). */
BAODE_API const char* baode_last_error(void);
BAODE_API const char* baode_status_name(baode_status status);
BAODE_API void        baode_string_free(char* s);
BAODE_API void        baode_result_free(baode_result* r);

/* seed 1, verify_all_rho 0, max_atoms 3, max_universe 4. */
BAODE_API void baode_options_init(baode_options* options);

/* Frames and algebras as standalone values, exchanged as JSON text. */
BAODE_API baode_status baode_frame_from_json(const char* json, baode_frame** out);
BAODE_API baode_status baode_frame_to_json(const baode_frame* f, char** out);
BAODE_API size_t       baode_frame_size(const baode_frame* f);
BAODE_API void         baode_frame_free(baode_frame* f);

BAODE_API baode_status baode_bao_from_json(const char* json, baode_bao** out);
BAODE_API baode_status baode_bao_to_json(const baode_bao* a, char** out);
BAODE_API size_t       baode_bao_atom_count(const baode_bao* a);
BAODE_API void         baode_bao_free(baode_bao* a);

BAODE_API baode_status baode_complex_algebra(const baode_frame* f, baode_bao** out);
BAODE_API baode_status baode_atom_structure(const baode_bao* a, baode_frame** out);
/* *out is 1 when the algebras are isomorphic, else 0. */
BAODE_API baode_status baode_bao_isomorphic(const baode_bao* a, const baode_bao* b,
                                            int* out);

/* A workspace binds named artifacts. Every reference argument below is a
   bound name or a path to a file holding one artifact. */
BAODE_API baode_status baode_workspace_new(baode_workspace** out);
BAODE_API void         baode_workspace_free(baode_workspace* ws);
BAODE_API baode_status baode_workspace_load_file(baode_workspace* ws, const char* path);
BAODE_API baode_status baode_workspace_load_json(baode_workspace* ws, const char* json,
                                                 const char* default_name);
/* The artifact bound to name, serialized. */
BAODE_API baode_status baode_workspace_get_json(baode_workspace* ws, const char* name,
                                                char** out);

/* Commands. Each writes its artifact as JSON under out_dir (created when
   missing) and fills result. */
BAODE_API baode_status baode_cmd_cm(baode_workspace* ws, const char* frame_ref,
                                    const char* out_dir, baode_result* result);
BAODE_API baode_status baode_cmd_at(baode_workspace* ws, const char* algebra_ref,
                                    const char* out_dir, baode_result* result);
BAODE_API baode_status baode_cmd_zigzag(baode_workspace* ws, const char* f_ref,
                                        const char* h_ref, const char* out_dir,
                                        baode_result* result);
BAODE_API baode_status baode_cmd_amalgamate(baode_workspace* ws, const char* instance_ref,
                                            const char* out_dir, baode_result* result);
/* algebra_ref may name a frame, which is checked through its complex
   algebra. */
BAODE_API baode_status baode_cmd_check(baode_workspace* ws, const char* algebra_ref,
                                       const char* schema_ref, const char* out_dir,
                                       baode_result* result);
BAODE_API baode_status baode_cmd_property(baode_workspace* ws, const char* campaign_ref,
                                          const baode_options* options,
                                          const char* out_dir, baode_result* result);

#ifdef __cplusplus
}
#endif

#endif /* BAODE_BAODE_H_ */

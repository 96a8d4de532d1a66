/*
Copyright 2026 The liotkit Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

/*
 * liotkit C API.
 *
 * Every handle is opaque and owned by the caller once returned; release it
 * with the matching *_free function (NULL is accepted). Functions return
 * LK_OK or an error status; on error lk_last_error() holds a message for the
 * calling thread and output handles are left untouched.
 */

#ifndef LIOTKIT_H
#define LIOTKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LIOTKIT_BUILDING)
#    define LK_API __declspec(dllexport)
#  else
#    define LK_API __declspec(dllimport)
#  endif
#else
#  define LK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define LIOTKIT_VERSION_MAJOR 1
#define LIOTKIT_VERSION_MINOR 0
#define LIOTKIT_VERSION_PATCH 0
#define LIOTKIT_VERSION_STRING "1.0.0"

typedef enum lk_status {
	LK_OK = 0,
	LK_ERR_FILE_NOT_FOUND = 1,
	LK_ERR_IO = 2,
	LK_ERR_UNSUPPORTED_FORMAT = 3,
	LK_ERR_ZERO_DIMENSION = 4,
	LK_ERR_DIMENSION_MISMATCH = 5,
	LK_ERR_INVALID_ARGUMENT = 6,
	LK_ERR_NON_POSITIVE_GAMMA = 7,
	LK_ERR_EMPTY_REGION = 8,
	LK_ERR_DEGENERATE_LABELS = 9,
	LK_ERR_EMPTY_GROUND_TRUTH = 10,
	LK_ERR_UNKNOWN_DATASET = 11,
	LK_ERR_MISSING_PAIR = 12,
	LK_ERR_MALFORMED_CONFIG = 13,
	LK_ERR_NULL_ARGUMENT = 14,
	LK_ERR_INTERNAL = 15
} lk_status;

typedef enum lk_image_kind {
	LK_IMAGE_GRAY = 1,
	LK_IMAGE_COLOR = 3,
	/* one byte per pixel, 0 or 1 */
	LK_IMAGE_MASK = 4
} lk_image_kind;

typedef enum lk_gray_mode { LK_GRAY_GREEN = 0, LK_GRAY_LUMA = 1 } lk_gray_mode;

typedef enum lk_method { LK_METHOD_FAST = 0, LK_METHOD_NAIVE = 1 } lk_method;

/* Plane order of the 4-channel image and of the LIOT1 container. */
typedef enum lk_side { LK_SIDE_LEFT = 0, LK_SIDE_RIGHT = 1, LK_SIDE_TOP = 2, LK_SIDE_BOTTOM = 3 } lk_side;

typedef struct lk_image lk_image;
typedef struct lk_liot lk_liot;
typedef struct lk_lut lk_lut;
typedef struct lk_prob lk_prob;
typedef struct lk_dataset lk_dataset;

LK_API const char* lk_version(void);
LK_API const char* lk_last_error(void);
LK_API const char* lk_status_string(lk_status status);

/* ---- images ------------------------------------------------------------ */

/* data may be NULL (zero fill); otherwise width*height*channels bytes. */
LK_API lk_status lk_image_new(lk_image_kind kind, int width, int height, const uint8_t* data, lk_image** out);
/* PNG (8-bit gray/RGB) or binary PGM/PPM; yields GRAY or COLOR. */
LK_API lk_status lk_image_load(const char* path, lk_image** out);
/* .pgm/.ppm/.pnm write PNM, anything else PNG; masks are written as {0,255}. */
LK_API lk_status lk_image_save(const lk_image* img, const char* path);
LK_API void lk_image_free(lk_image* img);

LK_API lk_image_kind lk_image_kind_of(const lk_image* img);
LK_API int lk_image_width(const lk_image* img);
LK_API int lk_image_height(const lk_image* img);
LK_API const uint8_t* lk_image_data(const lk_image* img, size_t* length);
/* 1 when kind, size and bytes match. */
LK_API int lk_image_equal(const lk_image* a, const lk_image* b);

/* COLOR -> GRAY with the given mode; GRAY is copied. */
LK_API lk_status lk_to_gray(const lk_image* img, lk_gray_mode mode, lk_image** out);
LK_API lk_status lk_invert(const lk_image* gray, lk_image** out);
/* Bilinear for GRAY/COLOR, nearest neighbour for MASK. */
LK_API lk_status lk_resize(const lk_image* img, int width, int height, lk_image** out);
/* MASK where value > threshold; COLOR input is reduced with luma first. */
LK_API lk_status lk_binarize(const lk_image* img, uint8_t threshold, lk_image** out);
LK_API lk_status lk_dilate(const lk_image* mask, int radius, lk_image** out);

/* ---- LIOT ---------------------------------------------------------------- */

/* threads: 0 = LIOTKIT_THREADS or hardware; ignored by LK_METHOD_NAIVE. */
LK_API lk_status lk_liot_transform(const lk_image* gray, lk_method method, unsigned threads, lk_liot** out);
LK_API lk_status lk_prepare_and_transform(const lk_image* img, lk_gray_mode mode, int invert, unsigned threads,
	lk_liot** out);
LK_API void lk_liot_free(lk_liot* liot);

LK_API int lk_liot_width(const lk_liot* liot);
LK_API int lk_liot_height(const lk_liot* liot);
LK_API const uint8_t* lk_liot_plane(const lk_liot* liot, lk_side side, size_t* length);
/* Copies the planes as a (4, height, width) array; capacity must be >= 4*w*h. */
LK_API lk_status lk_liot_copy_planes(const lk_liot* liot, uint8_t* dst, size_t capacity);
LK_API lk_status lk_liot_plane_image(const lk_liot* liot, lk_side side, lk_image** out);
LK_API int lk_liot_equal(const lk_liot* a, const lk_liot* b);

LK_API lk_status lk_liot_write(const lk_liot* liot, const char* path);
LK_API lk_status lk_liot_read(const char* path, lk_liot** out);

/* ---- census -------------------------------------------------------------- */

LK_API lk_status lk_census_transform(const lk_image* gray, lk_image** out);

/* ---- contrast perturbations --------------------------------------------- */

LK_API lk_status lk_lut_from_table(const uint8_t table[256], lk_lut** out);
LK_API lk_status lk_lut_gamma(double gamma, lk_lut** out);
/* Strictly increasing on the levels present in support (all levels when NULL). */
LK_API lk_status lk_lut_random_strict(uint64_t seed, const lk_image* support, lk_lut** out);
LK_API lk_status lk_lut_swap(uint8_t a, uint8_t b, lk_lut** out);
LK_API lk_status lk_lut_read(const char* path, lk_lut** out);
LK_API lk_status lk_lut_write(const lk_lut* lut, const char* path);
LK_API void lk_lut_free(lk_lut* lut);

LK_API const uint8_t* lk_lut_table(const lk_lut* lut);
LK_API int lk_lut_is_strict(const lk_lut* lut);
/* 1 when the table keeps every pair of levels present in img strictly ordered. */
LK_API int lk_lut_is_strict_on(const lk_lut* lut, const lk_image* img);
LK_API lk_status lk_lut_apply(const lk_image* gray, const lk_lut* lut, lk_image** out);

/* ---- metrics ------------------------------------------------------------- */

#define LK_DEGENERATE_SE 0x01u
#define LK_DEGENERATE_SP 0x02u
#define LK_DEGENERATE_ACC 0x04u
#define LK_DEGENERATE_F1 0x08u
#define LK_DEGENERATE_AUC 0x10u
#define LK_DEGENERATE_CONNECTIVITY 0x20u
#define LK_DEGENERATE_THRESHOLD_SWEEP 0x40u

typedef struct lk_confusion_counts {
	uint64_t tp;
	uint64_t fp;
	uint64_t fn;
	uint64_t tn;
} lk_confusion_counts;

typedef struct lk_metrics_report {
	double threshold;
	lk_confusion_counts counts;
	double se;
	double sp;
	double acc;
	double f1;
	int has_auc;
	double auc;
	double connectivity;
	unsigned degenerate_flags;
} lk_metrics_report;

/* Scores in [0,1], width*height doubles. */
LK_API lk_status lk_prob_new(int width, int height, const double* scores, lk_prob** out);
/* GRAY 0..255 scaled by 1/255. */
LK_API lk_status lk_prob_from_image(const lk_image* gray, lk_prob** out);
LK_API void lk_prob_free(lk_prob* prob);

/* fov may be NULL. */
LK_API lk_status lk_confusion(const lk_image* pred, const lk_image* gt, const lk_image* fov, lk_confusion_counts* out);
/* Fills se, sp, acc, f1 and degenerate_flags of out; other fields are zeroed. */
LK_API lk_status lk_scalar_metrics(const lk_confusion_counts* counts, lk_metrics_report* out);
LK_API lk_status lk_auc(const lk_prob* pred, const lk_image* gt, const lk_image* fov, double* out);
/* connectivity: 4 or 8. */
LK_API lk_status lk_connectivity(const lk_image* pred, const lk_image* gt, int connectivity, double* out);
/* labels may be NULL; otherwise width*height int32 entries. */
LK_API lk_status lk_connected_components(const lk_image* mask, int connectivity, size_t* count, int32_t* labels);
LK_API lk_status lk_best_threshold_by_f1(const lk_prob* pred, const lk_image* gt, const lk_image* fov,
	int connectivity, lk_metrics_report* out);
LK_API lk_status lk_binary_report(const lk_image* pred, const lk_image* gt, const lk_image* fov, int connectivity,
	lk_metrics_report* out);
/* Writes a NUL-terminated string when capacity allows; *needed excludes the NUL. */
LK_API lk_status lk_report_json(const lk_metrics_report* report, char* buffer, size_t capacity, size_t* needed);
LK_API lk_status lk_report_table(const lk_metrics_report* report, char* buffer, size_t capacity, size_t* needed);

/* ---- datasets ------------------------------------------------------------ */

/* drive, stare, chasedb1, cracktree; directories <root>/images, <root>/gt, <root>/fov. */
LK_API lk_status lk_dataset_builtin(const char* name, const char* root, lk_dataset** out);
LK_API lk_status lk_dataset_from_config(const char* path, lk_dataset** out);
LK_API void lk_dataset_free(lk_dataset* dataset);
/* Writes images/, gt/, fov/, manifest.txt, train.txt and test.txt under out_dir. */
LK_API lk_status lk_dataset_prepare(const lk_dataset* dataset, const char* out_dir, size_t* sample_count);

#ifdef __cplusplus
}
#endif

#endif /* LIOTKIT_H */

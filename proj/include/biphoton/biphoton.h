#ifndef BIPHOTON_BIPHOTON_H
#define BIPHOTON_BIPHOTON_H

#include <stddef.h>

#if defined(_WIN32)
#define BPH_API __declspec(dllexport)
#else
#define BPH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bph_status {
  BPH_OK = 0,
  BPH_ERR_DOMAIN = 1,      /* argument outside an operation's domain */
  BPH_ERR_CONFIG = 2,      /* malformed or inconsistent configuration */
  BPH_ERR_LOOKUP = 3,      /* unknown preset, key, axis or check */
  BPH_ERR_CONTRACT = 4,    /* numerical contract violated */
  BPH_ERR_UNSUPPORTED = 5, /* operation not defined for this model */
  BPH_ERR_IO = 6,
  BPH_ERR_ARGUMENT = 7,    /* null handle or output pointer, short buffer */
  BPH_ERR_INTERNAL = 8
} bph_status;

typedef enum bph_kind { BPH_KIND_DIP = 0, BPH_KIND_PEAK = 1, BPH_KIND_FLAT = 2 } bph_kind;

typedef struct bph_config bph_config;
typedef struct bph_scan bph_scan;
typedef struct bph_sweep bph_sweep;
typedef struct bph_report bph_report;

/* Message of the last failed call on this thread; "" after a success. */
BPH_API const char* bph_last_error(void);
BPH_API const char* bph_status_name(bph_status status);
BPH_API const char* bph_kind_name(bph_kind kind);

/* Strings handed out through char** are owned by the caller. */
BPH_API void bph_string_free(char* text);

BPH_API size_t bph_preset_count(void);
BPH_API const char* bph_preset_name(size_t index); /* NULL past the end */

/* ---- configuration ---- */

BPH_API bph_status bph_config_new(bph_config** out);
BPH_API bph_status bph_config_from_preset(const char* name, bph_config** out);
BPH_API bph_status bph_config_from_file(const char* path, bph_config** out);
/* `key = value` lines applied over `base` (NULL for defaults). */
BPH_API bph_status bph_config_from_string(const char* text, const bph_config* base,
                                          bph_config** out);
BPH_API bph_status bph_config_clone(const bph_config* config, bph_config** out);
BPH_API void bph_config_free(bph_config* config);

BPH_API bph_status bph_config_set(bph_config* config, const char* key, const char* value);
BPH_API bph_status bph_config_set_number(bph_config* config, const char* key, double value);
BPH_API bph_status bph_config_get_number(const bph_config* config, const char* key, double* out);
/* Fixes the grid at n points and disables automatic refinement. */
BPH_API bph_status bph_config_force_grid(bph_config* config, size_t n);
BPH_API bph_status bph_config_to_text(const bph_config* config, char** out);
/* Grid size the engine will actually use. */
BPH_API bph_status bph_config_grid_size(const bph_config* config, size_t* out);

/* ---- single points ---- */

BPH_API bph_status bph_rate(const bph_config* config, double delay_fs, double* out);
BPH_API bph_status bph_oracle_rate(const bph_config* config, double delay_fs, double* out);
BPH_API bph_status bph_oracle_visibility(const bph_config* config, double* out);
BPH_API bph_status bph_path_overlap(const bph_config* config, double delay_fs, double* re,
                                    double* im);
BPH_API bph_status bph_refine_check(const bph_config* config, double delay_fs, double* out);

/* ---- delay scans ---- */

typedef struct bph_scan_options {
  double wing_factor;    /* wings start at this multiple of the dip-width estimate */
  double flat_threshold; /* max|R - base|/base below this is flat */
  int michelson;         /* nonzero: (max - min)/(max + min) */
  unsigned threads;
} bph_scan_options;

BPH_API void bph_scan_options_default(bph_scan_options* options);

typedef struct bph_scan_summary {
  bph_kind kind;
  double visibility;
  double baseline;
  double extremum;
  double wing_threshold_fs;
  double oracle_max_rel_delta; /* engine vs closed form over the scan points */
  size_t points;
  size_t grid_n;
} bph_scan_summary;

/* options may be NULL for defaults. */
BPH_API bph_status bph_scan_run(const bph_config* config, double d_min, double d_max,
                                size_t steps, const bph_scan_options* options, bph_scan** out);
BPH_API void bph_scan_free(bph_scan* scan);
BPH_API bph_status bph_scan_summary_get(const bph_scan* scan, bph_scan_summary* out);
/* Copies scan points; either array may be NULL. capacity must cover all points. */
BPH_API bph_status bph_scan_points(const bph_scan* scan, double* delays, double* rates,
                                   size_t capacity);
BPH_API bph_status bph_scan_csv(const bph_scan* scan, char** out);
BPH_API bph_status bph_scan_svg(const bph_scan* scan, const char* title, char** out);

/* ---- parameter sweeps ---- */

typedef struct bph_sweep_row {
  double value;
  double visibility;
  bph_kind kind;
  double extremum;
  double baseline;
} bph_sweep_row;

BPH_API bph_status bph_sweep_run(const bph_config* base, const char* axis, const double* values,
                                 size_t count, double d_min, double d_max, size_t steps,
                                 const bph_scan_options* options, bph_sweep** out);
BPH_API void bph_sweep_free(bph_sweep* sweep);
BPH_API size_t bph_sweep_row_count(const bph_sweep* sweep);
BPH_API bph_status bph_sweep_row_get(const bph_sweep* sweep, size_t index, bph_sweep_row* out);
BPH_API bph_status bph_sweep_csv(const bph_sweep* sweep, char** out);

/* Writes one visibility per coherence time (fs, positive, ascending). */
BPH_API bph_status bph_pump_coherence_sweep(const bph_config* base, const double* coherence_fs,
                                            size_t count, double* visibilities);

BPH_API size_t bph_sweep_axis_count(void);
BPH_API const char* bph_sweep_axis_name(size_t index);

/* ---- arrival times ---- */

typedef struct bph_arrival_summary {
  double mean_t_a; /* NaN when the coherent density vanishes */
  double mean_t_b;
  double total;
  double time_step;
  size_t grid_n;
  size_t path_count;
  int path_is_rr[2];
  double path_mean_t_a[2];
  double path_mean_t_b[2];
  double path_total[2];
} bph_arrival_summary;

BPH_API bph_status bph_arrival_summary_get(const bph_config* config, double delay_fs,
                                           bph_arrival_summary* out);

/* ---- verification ---- */

typedef struct bph_verify_options {
  size_t grid_n; /* 0: no override */
  unsigned threads;
  const char* only; /* run a single named check; NULL for the full suite */
} bph_verify_options;

BPH_API size_t bph_check_count(void);
BPH_API const char* bph_check_name(size_t index);

BPH_API bph_status bph_verify_run(const bph_verify_options* options, bph_report** out);
BPH_API void bph_report_free(bph_report* report);
BPH_API int bph_report_passed(const bph_report* report);
/* NULL when every check passed; valid while the report lives. */
BPH_API const char* bph_report_first_failure(const bph_report* report);
BPH_API bph_status bph_report_json(const bph_report* report, char** out);

#ifdef __cplusplus
}
#endif

#endif

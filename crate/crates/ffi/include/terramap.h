#ifndef TERRAMAP_H
#define TERRAMAP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TmScale {
  TM_SCALE_LIN = 0,
  TM_SCALE_LOG = 1,
  TM_SCALE_SQRT = 2,
} TmScale;

// Result codes. Zero is success.
typedef enum TmStatus {
  TM_STATUS_OK = 0,
  TM_STATUS_NULL_POINTER = 1,
  TM_STATUS_INVALID_ARGUMENT = 2,
  TM_STATUS_IO = 3,
  TM_STATUS_PARSE = 4,
  TM_STATUS_UNKNOWN_COLUMN = 5,
  TM_STATUS_RENDER = 6,
  TM_STATUS_PANIC = 7,
} TmStatus;

typedef struct TmColorMap TmColorMap;

// Accumulates layers and renders them.
typedef struct TmEngine TmEngine;

// A column table of data rows.
typedef struct TmTable TmTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The string
// stays valid until the next failing call on the same thread.
const char *tm_last_error(void);

// Reads a CSV file with a header row.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum TmStatus tm_table_read_csv(const char *path, struct TmTable **out);

// Builds a table with `lat` and `lon` columns from `n` coordinate pairs.
//
// # Safety
// `lats` and `lons` must each point to `n` doubles; `out` must be writable.
enum TmStatus tm_table_from_latlon(const double *lats,
                                   const double *lons,
                                   size_t n,
                                   struct TmTable **out);

// Row count, or 0 for NULL.
//
// # Safety
// `table` must be NULL or a live handle.
size_t tm_table_nrows(const struct TmTable *table);

// # Safety
// `table` must be NULL or a handle not yet freed.
void tm_table_free(struct TmTable *table);

// A new engine with default size and the tile provider from the
// environment. Never NULL.
struct TmEngine *tm_engine_new(void);

// # Safety
// `engine` must be NULL or a handle not yet freed.
void tm_engine_free(struct TmEngine *engine);

// Number of layers added since the last render.
//
// # Safety
// `engine` must be a live handle; `out` must be writable.
enum TmStatus tm_engine_layer_count(const struct TmEngine *engine, size_t *out);

// # Safety
// `engine` must be a live handle.
enum TmStatus tm_engine_set_size(struct TmEngine *engine, uint32_t width, uint32_t height);

// Fixes the map extent instead of fitting it to the data.
//
// # Safety
// `engine` must be a live handle.
enum TmStatus tm_engine_set_bbox(struct TmEngine *engine,
                                 double north,
                                 double west,
                                 double south,
                                 double east);

// Tile preset name or URL template. NULL or `"none"` renders on a blank
// background.
//
// # Safety
// `engine` must be a live handle; `spec` must be NULL or NUL-terminated.
enum TmStatus tm_engine_set_tiles(struct TmEngine *engine, const char *spec);

// # Safety
// `engine` must be a live handle; `dir` must be NUL-terminated.
enum TmStatus tm_engine_set_tile_cache(struct TmEngine *engine, const char *dir);

// Adds a dot layer over the table's `lat`/`lon` columns. `rgba` may be
// NULL for the default red.
//
// # Safety
// `engine` and `table` must be live handles; `rgba` must be NULL or point
// to 4 bytes.
enum TmStatus tm_engine_dot(struct TmEngine *engine,
                            const struct TmTable *table,
                            double point_size,
                            const uint8_t *rgba);

// Adds a 2D histogram layer. `cmap` may be NULL for `hot`.
//
// # Safety
// `engine` and `table` must be live handles; `cmap` must be NULL or
// NUL-terminated.
enum TmStatus tm_engine_hist(struct TmEngine *engine,
                             const struct TmTable *table,
                             double binsize,
                             const char *cmap);

// Adds a kernel density layer with bandwidth in screen pixels. `cmap` may
// be NULL for `hot`.
//
// # Safety
// `engine` and `table` must be live handles; `cmap` must be NULL or
// NUL-terminated.
enum TmStatus tm_engine_kde(struct TmEngine *engine,
                            const struct TmTable *table,
                            double bw_x,
                            double bw_y,
                            const char *cmap);

// Renders all layers to a PNG and clears the engine's layers and bbox.
//
// # Safety
// `engine` must be a live handle; `path` must be NUL-terminated.
enum TmStatus tm_engine_savefig(struct TmEngine *engine, const char *path);

// A named colormap. `levels` of 0 keeps it continuous; otherwise colors
// are quantized to that many steps.
//
// # Safety
// `name` must be NUL-terminated; `out` must be writable.
enum TmStatus tm_colormap_new(const char *name,
                              uint8_t alpha,
                              uint32_t levels,
                              struct TmColorMap **out);

// # Safety
// `cmap` must be NULL or a handle not yet freed.
void tm_colormap_free(struct TmColorMap *cmap);

// Maps `value` in `[0, max]` to RGBA through `scale`.
//
// # Safety
// `cmap` must be a live handle; `out` must point to 4 writable bytes.
enum TmStatus tm_colormap_to_color(const struct TmColorMap *cmap,
                                   double value,
                                   double max,
                                   enum TmScale scale,
                                   uint8_t *out);

// Web Mercator world pixel coordinates of a point at `zoom`.
//
// # Safety
// `wx` and `wy` must be writable.
enum TmStatus tm_lonlat_to_world(double lon, double lat, uint8_t zoom, double *wx, double *wy);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TERRAMAP_H */

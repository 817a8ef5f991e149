/* C interface to the semi-implicit shallow water solver. */
#ifndef SWSI_H
#define SWSI_H

#include <stddef.h>

#if defined(_WIN32)
#define SWSI_API __declspec(dllexport)
#else
#define SWSI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum swsi_status {
  SWSI_OK = 0,
  SWSI_ERR_INTERNAL = 1,
  SWSI_ERR_CONFIG = 2,
  SWSI_ERR_NONCONVERGENCE = 3,
  SWSI_ERR_POSITIVITY = 4
} swsi_status;

typedef struct swsi_config swsi_config;
typedef struct swsi_simulation swsi_simulation;

typedef struct swsi_report {
  long steps;
  long picard_total;
  long picard_max;
  long steady_hits;
  double seconds;
} swsi_report;

/* Message of the last failed call on this thread, "" if none. */
SWSI_API const char* swsi_last_error(void);
SWSI_API const char* swsi_version(void);

SWSI_API swsi_status swsi_config_create(swsi_config** out);
SWSI_API void swsi_config_destroy(swsi_config* cfg);
/* Keys: case scheme n ny eps cfl T theta delta xi picard_max bathymetry
   output report snapshot_every depth_flux. */
SWSI_API swsi_status swsi_config_set(swsi_config* cfg, const char* key, const char* value);
SWSI_API swsi_status swsi_config_load(swsi_config* cfg, const char* path);

SWSI_API swsi_status swsi_simulation_create(const swsi_config* cfg, swsi_simulation** out);
SWSI_API void swsi_simulation_destroy(swsi_simulation* sim);
/* One step, clipped at the final time; *finished is set to 1 once there. */
SWSI_API swsi_status swsi_simulation_step(swsi_simulation* sim, int* finished);
SWSI_API swsi_status swsi_simulation_run(swsi_simulation* sim);
SWSI_API double swsi_simulation_time(const swsi_simulation* sim);
SWSI_API double swsi_simulation_final_time(const swsi_simulation* sim);
SWSI_API size_t swsi_simulation_cells(const swsi_simulation* sim);
/* Interior depth in (i, j) lexicographic order; n must equal the cell count. */
SWSI_API swsi_status swsi_simulation_depth(const swsi_simulation* sim, double* out, size_t n);
SWSI_API swsi_status swsi_simulation_report(const swsi_simulation* sim, swsi_report* out);
SWSI_API swsi_status swsi_simulation_write_state(const swsi_simulation* sim, const char* path);

/* Batch commands. A NULL or "-" csv path writes to stdout. */
SWSI_API swsi_status swsi_run(const swsi_config* cfg);
/* reference: "exact" or "finest"; reference_n <= 0 takes the last N. */
SWSI_API swsi_status swsi_convergence(const swsi_config* cfg, const int* n, size_t count, const char* reference,
                                      int reference_n, const char* csv_path);
SWSI_API swsi_status swsi_ap_compare(const swsi_config* cfg, const double* eps, size_t count, const char* csv_path);
/* schemes: comma-separated list such as "si-s1,si-s2". */
SWSI_API swsi_status swsi_wellbalance(const char* bathymetry, const double* eps, size_t count, long steps,
                                      const char* schemes, const char* csv_path);

#ifdef __cplusplus
}
#endif

#endif

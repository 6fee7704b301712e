#ifndef QLL_QLL_H
#define QLL_QLL_H

/* C interface to the quasi-local energy library. All functions return a
 * qll_status; on failure qll_last_error() holds a message for the calling
 * thread. Handles are opaque and owned by the caller. */

#include <stddef.h>

#if defined(_WIN32)
#define QLL_API __declspec(dllexport)
#else
#define QLL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qll_status {
  QLL_OK = 0,
  QLL_E_DOMAIN = 1,
  QLL_E_GEOMETRY = 2,
  QLL_E_NUMERIC = 3,
  QLL_E_CONFIG = 4,
  QLL_E_HYPOTHESIS = 5,
  QLL_E_UNSUPPORTED = 6,
  QLL_E_FLOW = 7,
  QLL_E_IO = 8,
  QLL_E_ARGUMENT = 9,
  QLL_E_INTERNAL = 10
} qll_status;

typedef enum qll_mode { QLL_WILLMORE = 0, QLL_HAWKING = 1 } qll_mode;

typedef struct qll_space qll_space;
typedef struct qll_mesh qll_mesh;

QLL_API const char* qll_version(void);
QLL_API const char* qll_last_error(void);
QLL_API const char* qll_status_name(qll_status status);

/* ambient spaces */
QLL_API qll_status qll_space_create(const char* name, const char* const* keys,
                                    const double* values, size_t count,
                                    qll_space** out);
/* h <= 0 selects the default step */
QLL_API qll_status qll_space_use_finite_differences(qll_space* space,
                                                    double h);
QLL_API qll_status qll_space_attach_charge(qll_space* space, double q);
QLL_API void qll_space_free(qll_space* space);

typedef struct qll_point_data {
  double scalar_curvature;
  double ricci[9];
  double k[9];
  double tr_k;
  double k_norm2;
  double mu;
  double J[3];
  double dec_margin;
} qll_point_data;

QLL_API qll_status qll_space_point(const qll_space* space, const double p[3],
                                   qll_point_data* out);

/* surfaces; center may be NULL for the origin */
QLL_API qll_status qll_mesh_sphere(int ntheta, int nphi, double r,
                                   const double center[3], qll_mesh** out);
QLL_API qll_status qll_mesh_ellipsoid(int ntheta, int nphi,
                                      const double axes[3],
                                      const double center[3], qll_mesh** out);
/* r = r0 (1 + sum amplitude[i] Y_{l[i] m[i]}) */
QLL_API qll_status qll_mesh_perturbed(int ntheta, int nphi, double r0,
                                      const int* l, const int* m,
                                      const double* amplitude, size_t count,
                                      qll_mesh** out);
QLL_API qll_status qll_mesh_load(const char* path, qll_mesh** out);
QLL_API qll_status qll_mesh_save(const qll_mesh* mesh, const char* path);
QLL_API qll_status qll_mesh_size(const qll_mesh* mesh, int* ntheta,
                                 int* nphi);
/* radius field, ntheta * nphi values, theta-major */
QLL_API qll_status qll_mesh_radius(const qll_mesh* mesh, double* out,
                                   size_t count);
QLL_API void qll_mesh_free(qll_mesh* mesh);

typedef struct qll_energy {
  double area;
  double willmore_integral;
  double p_integral;
  double hawking_functional;
  double hawking_energy;
  double gauss_bonnet_defect;
  double dec_min;
  double min_mean_curvature;
  double max_mean_curvature;
  double max_traceless_norm2;
} qll_energy;

QLL_API qll_status qll_energy_evaluate(const qll_space* space,
                                       const qll_mesh* mesh, qll_energy* out);
/* needs an electric field on the space */
QLL_API qll_status qll_charged_energy(const qll_space* space,
                                      const qll_mesh* mesh,
                                      double magnetic_charge, double* charge,
                                      double* energy);
QLL_API qll_status qll_lambda_energy(const qll_space* space,
                                     const qll_mesh* mesh, double Lambda,
                                     double* energy);
/* out = {int (f - lambda), int (f_beta - lambda), int (f_tilde - lambda)};
 * QLL_E_HYPOTHESIS unless H > 0 */
QLL_API qll_status qll_f_integrals(const qll_space* space,
                                   const qll_mesh* mesh, double beta,
                                   double lambda, double out[3]);
QLL_API qll_status qll_brown_york(const qll_space* space, const qll_mesh* mesh,
                                  double* value);

typedef struct qll_residual {
  double lambda;
  double lambda_star;
  double l2;
  double linf;
} qll_residual;

/* use_lambda_star != 0 ignores lambda */
QLL_API qll_status qll_residual_evaluate(const qll_space* space,
                                         const qll_mesh* mesh, qll_mode mode,
                                         int use_lambda_star, double lambda,
                                         qll_residual* out);

typedef struct qll_flow_options {
  qll_mode mode;
  double target_area; /* <= 0: initial area */
  double initial_step;
  int max_steps;
  double residual_tol;
  double backtrack;
  int max_backtracks;
  int precondition;
} qll_flow_options;

QLL_API void qll_flow_default_options(qll_flow_options* options);

typedef struct qll_flow_result {
  int converged;
  int steps;
  double functional;
  double area;
  double residual;
  double lambda_star;
  double max_area_drift;
  int monotone; /* functional never increased on accepted steps */
} qll_flow_result;

/* final may be NULL */
QLL_API qll_status qll_flow_run(const qll_space* space, const qll_mesh* mesh,
                                const qll_flow_options* options,
                                qll_flow_result* out, qll_mesh** final_mesh);

typedef struct qll_radial {
  double area, H, P, sc_sigma, ric_nn, mu, J_norm, dec_margin;
  double energy_1, energy_2, energy_1_dyn, energy_2_dyn;
  double charged_energy_1, charged_energy_2;
  double willmore_residual0, willmore_lambda_star;
  double hawking_residual0, hawking_lambda_star;
  double f_integral;
  int f_defined;
} qll_radial;

QLL_API qll_status qll_radial_sphere(const char* model, int n,
                                     const char* const* keys,
                                     const double* values, size_t count,
                                     double r, double charge, qll_radial* out);

/* Runs a JSON config. task, grid, out_dir and format override the config
 * when not NULL. Artifacts are written even when QLL_E_HYPOTHESIS is
 * returned. */
QLL_API qll_status qll_run_config(const char* config_text, const char* task,
                                  const int* grid, const char* out_dir,
                                  const char* format);

/* caps internal worker threads; <= 0 restores the default */
QLL_API void qll_set_threads(int threads);

#ifdef __cplusplus
}
#endif

#endif

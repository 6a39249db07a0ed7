/* Compiles rwadyn.h as C and runs a minimal pipeline. */
#include <math.h>
#include <stdio.h>

#include "rwadyn/rwadyn.h"

int main(void) {
    rwadyn_lorentz spec;
    rwadyn_solver solver;
    rwadyn_grid grid = {1e-2, 101};
    rwadyn_kernel* kernel = NULL;
    rwadyn_trajectory* x = NULL;
    double re[101], im[101];
    int failures = 0;

    rwadyn_lorentz_defaults(&spec);
    rwadyn_solver_defaults(&solver);
    solver.dt = grid.dt;
    if (rwadyn_kernel_full_line(&spec, &grid, &kernel) != RWADYN_OK) return 1;
    if (rwadyn_solve_amplitude(5.0, kernel, grid.count, &solver, &x) != RWADYN_OK) return 1;
    rwadyn_trajectory_values(x, re, im, 101);
    if (re[0] != 1.0 || im[0] != 0.0) ++failures;
    if (!(hypot(re[100], im[100]) < 1.0)) ++failures;
    rwadyn_trajectory_free(x);
    rwadyn_kernel_free(kernel);
    printf("%s\n", failures ? "FAIL" : "ok");
    return failures;
}

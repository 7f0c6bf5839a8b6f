#include "starcache/kernels.hpp"

namespace starcache::kernels {

// Per-element accumulation lives in these helpers so the serial and OpenMP
// entry points cannot drift apart.

static inline double dot_row(const double* x, const double* w, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += x[i] * w[i];
    return acc;
}

void linear_forward_serial(const double* x, const double* w, const double* bias,
                           double* y, int batch, int in_dim, int out_dim) {
    for (int b = 0; b < batch; ++b)
        for (int o = 0; o < out_dim; ++o)
            y[b * out_dim + o] = bias[o] + dot_row(x + b * in_dim, w + o * in_dim, in_dim);
}

void linear_forward(const double* x, const double* w, const double* bias, double* y,
                    int batch, int in_dim, int out_dim) {
#pragma omp parallel for collapse(2) schedule(static)
    for (int b = 0; b < batch; ++b)
        for (int o = 0; o < out_dim; ++o)
            y[b * out_dim + o] = bias[o] + dot_row(x + b * in_dim, w + o * in_dim, in_dim);
}

static inline double dot_col(const double* dy, const double* w, int out_dim, int i,
                             int in_dim) {
    double acc = 0.0;
    for (int o = 0; o < out_dim; ++o) acc += dy[o] * w[o * in_dim + i];
    return acc;
}

void linear_backward_input_serial(const double* dy, const double* w, double* dx,
                                  int batch, int in_dim, int out_dim) {
    for (int b = 0; b < batch; ++b)
        for (int i = 0; i < in_dim; ++i)
            dx[b * in_dim + i] = dot_col(dy + b * out_dim, w, out_dim, i, in_dim);
}

void linear_backward_input(const double* dy, const double* w, double* dx, int batch,
                           int in_dim, int out_dim) {
#pragma omp parallel for collapse(2) schedule(static)
    for (int b = 0; b < batch; ++b)
        for (int i = 0; i < in_dim; ++i)
            dx[b * in_dim + i] = dot_col(dy + b * out_dim, w, out_dim, i, in_dim);
}

static inline void param_row(const double* x, const double* dy, double* dw, double* db,
                             int batch, int in_dim, int out_dim, int o) {
    for (int i = 0; i < in_dim; ++i) {
        double acc = 0.0;
        for (int b = 0; b < batch; ++b) acc += dy[b * out_dim + o] * x[b * in_dim + i];
        dw[o * in_dim + i] = acc;
    }
    double acc = 0.0;
    for (int b = 0; b < batch; ++b) acc += dy[b * out_dim + o];
    db[o] = acc;
}

void linear_backward_params_serial(const double* x, const double* dy, double* dw,
                                   double* db, int batch, int in_dim, int out_dim) {
    for (int o = 0; o < out_dim; ++o) param_row(x, dy, dw, db, batch, in_dim, out_dim, o);
}

void linear_backward_params(const double* x, const double* dy, double* dw, double* db,
                            int batch, int in_dim, int out_dim) {
#pragma omp parallel for schedule(static)
    for (int o = 0; o < out_dim; ++o) param_row(x, dy, dw, db, batch, in_dim, out_dim, o);
}

}  // namespace starcache::kernels

#pragma once

namespace starcache::kernels {

// Dense-layer kernels, each in a serial reference form and an OpenMP form.
// The parallel twins split work over independent output elements and keep the
// reference accumulation order inside each element, so both forms produce
// bitwise-identical results at any thread count. Weights are out-major:
// w[o * in_dim + i]; batches are row-major.

// y[b, o] = bias[o] + sum_i x[b, i] * w[o, i]
void linear_forward_serial(const double* x, const double* w, const double* bias,
                           double* y, int batch, int in_dim, int out_dim);
void linear_forward(const double* x, const double* w, const double* bias, double* y,
                    int batch, int in_dim, int out_dim);

// dx[b, i] = sum_o dy[b, o] * w[o, i]
void linear_backward_input_serial(const double* dy, const double* w, double* dx,
                                  int batch, int in_dim, int out_dim);
void linear_backward_input(const double* dy, const double* w, double* dx, int batch,
                           int in_dim, int out_dim);

// dw[o, i] = sum_b dy[b, o] * x[b, i]; db[o] = sum_b dy[b, o]
void linear_backward_params_serial(const double* x, const double* dy, double* dw,
                                   double* db, int batch, int in_dim, int out_dim);
void linear_backward_params(const double* x, const double* dy, double* dw, double* db,
                            int batch, int in_dim, int out_dim);

}  // namespace starcache::kernels

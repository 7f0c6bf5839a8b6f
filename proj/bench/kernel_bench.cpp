#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "starcache/kernels.hpp"
#include "starcache/rng.hpp"

using namespace starcache;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct Shape {
    int batch, in, out;
};

void fill(std::vector<double>& v, Rng& rng) {
    for (double& x : v) x = 2.0 * rng.uniform() - 1.0;
}

// Times one kernel pair on one shape and checks the two outputs stay bitwise
// identical while doing so.
void bench_shape(const Shape& sh, int reps, Rng& rng) {
    const size_t xin = static_cast<size_t>(sh.batch) * sh.in;
    const size_t yout = static_cast<size_t>(sh.batch) * sh.out;
    const size_t wsz = static_cast<size_t>(sh.out) * sh.in;
    std::vector<double> x(xin), w(wsz), b(sh.out), y1(yout), y2(yout);
    std::vector<double> dy(yout), dx1(xin), dx2(xin), dw1(wsz), dw2(wsz), db1(sh.out),
        db2(sh.out);
    fill(x, rng);
    fill(w, rng);
    fill(b, rng);
    fill(dy, rng);

    double t0 = now_ms();
    for (int r = 0; r < reps; ++r)
        kernels::linear_forward_serial(x.data(), w.data(), b.data(), y1.data(), sh.batch,
                                       sh.in, sh.out);
    const double fwd_serial = now_ms() - t0;
    t0 = now_ms();
    for (int r = 0; r < reps; ++r)
        kernels::linear_forward(x.data(), w.data(), b.data(), y2.data(), sh.batch, sh.in,
                                sh.out);
    const double fwd_omp = now_ms() - t0;

    t0 = now_ms();
    for (int r = 0; r < reps; ++r)
        kernels::linear_backward_input_serial(dy.data(), w.data(), dx1.data(), sh.batch,
                                              sh.in, sh.out);
    const double bwi_serial = now_ms() - t0;
    t0 = now_ms();
    for (int r = 0; r < reps; ++r)
        kernels::linear_backward_input(dy.data(), w.data(), dx2.data(), sh.batch, sh.in,
                                       sh.out);
    const double bwi_omp = now_ms() - t0;

    t0 = now_ms();
    for (int r = 0; r < reps; ++r)
        kernels::linear_backward_params_serial(x.data(), dy.data(), dw1.data(), db1.data(),
                                               sh.batch, sh.in, sh.out);
    const double bwp_serial = now_ms() - t0;
    t0 = now_ms();
    for (int r = 0; r < reps; ++r)
        kernels::linear_backward_params(x.data(), dy.data(), dw2.data(), db2.data(),
                                        sh.batch, sh.in, sh.out);
    const double bwp_omp = now_ms() - t0;

    const bool same = std::memcmp(y1.data(), y2.data(), yout * 8) == 0 &&
                      std::memcmp(dx1.data(), dx2.data(), xin * 8) == 0 &&
                      std::memcmp(dw1.data(), dw2.data(), wsz * 8) == 0 &&
                      std::memcmp(db1.data(), db2.data(), sh.out * 8) == 0;

    std::printf("%4dx%4d->%4d  fwd %8.2f / %8.2f  bw_in %8.2f / %8.2f  bw_par %8.2f / "
                "%8.2f ms  %s\n",
                sh.batch, sh.in, sh.out, fwd_serial, fwd_omp, bwi_serial, bwi_omp,
                bwp_serial, bwp_omp, same ? "bitwise-equal" : "MISMATCH");
}

}  // namespace

int main() {
    Rng rng(7);
    std::printf("dense kernel timings, serial / OpenMP (%d reps per cell)\n", 2000);
    std::printf("batch x in -> out\n");
    // The shapes the training stack actually runs: actor and critic layers at
    // batch 64, plus single-row action selection.
    const Shape shapes[] = {
        {64, 256, 64}, {64, 64, 64}, {64, 64, 128}, {64, 320, 64},
        {1, 256, 64},  {1, 64, 64},  {1, 64, 16},
    };
    for (const Shape& sh : shapes) bench_shape(sh, 2000, rng);
    return 0;
}
